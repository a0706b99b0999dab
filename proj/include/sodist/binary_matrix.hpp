// binary_matrix.hpp
//
// Bit-packed generator matrices over GF(2) and the code-level quantities the
// rest of the library is built on: rank, minimum distance, weight
// distribution, self-orthogonality, and the plain-text matrix format.

#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodist {

// Parameters [n, k, d] of a putative linear code.
struct CodeParams {
    int n = 0;
    int k = 0;
    int d = 0;

    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

inline std::string to_string(const CodeParams& p) {
    return "[" + std::to_string(p.n) + "," + std::to_string(p.k) + "," +
           std::to_string(p.d) + "]";
}

// Errors are named after the contract they break.
struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionTooSmall : std::runtime_error {
    explicit DimensionTooSmall(const std::string& what) : std::runtime_error(what) {}
};
struct SpanFailure : std::runtime_error {
    explicit SpanFailure(const std::string& what) : std::runtime_error(what) {}
};
struct OddDistance : std::runtime_error {
    explicit OddDistance(const std::string& what) : std::runtime_error(what) {}
};
struct VerificationFailed : std::runtime_error {
    std::string property;  // which verified property failed
    VerificationFailed(std::string prop, const std::string& what)
        : std::runtime_error(what), property(std::move(prop)) {}
};
struct MissingSeed : std::runtime_error {
    std::string fixture;  // filename of the absent seed
    MissingSeed(std::string file, const std::string& what)
        : std::runtime_error(what), fixture(std::move(file)) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Codeword enumeration is 2^k work; refuse anything that would not finish.
inline constexpr int kMaxEnumerationDim = 24;

using WeightDistribution = std::vector<std::uint64_t>;  // counts[w] = #codewords of weight w

class BinaryMatrix {
public:
    BinaryMatrix() = default;

    BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("BinaryMatrix: negative dimensions");
        words_ = (cols + 63) / 64;
        bits_.assign(static_cast<std::size_t>(rows) * words_, 0);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        check_index(r, c);
        return (bits_[word_index(r, c)] >> (c & 63)) & 1u;
    }

    void set(int r, int c, bool v) {
        check_index(r, c);
        std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v)
            bits_[word_index(r, c)] |= mask;
        else
            bits_[word_index(r, c)] &= ~mask;
    }

    void flip(int r, int c) { set(r, c, !get(r, c)); }

    // GF(2) inner product of rows i and j.
    bool row_dot(int i, int j) const {
        std::uint64_t acc = 0;
        for (int w = 0; w < words_; ++w)
            acc ^= bits_[static_cast<std::size_t>(i) * words_ + w] &
                   bits_[static_cast<std::size_t>(j) * words_ + w];
        return std::popcount(acc) & 1;
    }

    int row_weight(int r) const {
        int wt = 0;
        for (int w = 0; w < words_; ++w)
            wt += std::popcount(bits_[static_cast<std::size_t>(r) * words_ + w]);
        return wt;
    }

    // All pairwise (and self) row products vanish, i.e. G * G^T = 0.
    bool is_self_orthogonal() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < rows_; ++j)
                if (row_dot(i, j)) return false;
        return true;
    }

    // Even-weight vectors form a subspace, so the code is even-like exactly
    // when every generator row has even weight.
    bool is_even_like() const {
        for (int r = 0; r < rows_; ++r)
            if (row_weight(r) & 1) return false;
        return true;
    }

    int rank() const {
        std::vector<std::uint64_t> work = bits_;
        int rk = 0;
        for (int c = 0; c < cols_ && rk < rows_; ++c) {
            int w = c >> 6;
            std::uint64_t mask = std::uint64_t{1} << (c & 63);
            int pivot = -1;
            for (int r = rk; r < rows_; ++r) {
                if (work[static_cast<std::size_t>(r) * words_ + w] & mask) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) continue;
            swap_rows(work, pivot, rk);
            for (int r = 0; r < rows_; ++r) {
                if (r != rk && (work[static_cast<std::size_t>(r) * words_ + w] & mask))
                    xor_rows(work, r, rk);
            }
            ++rk;
        }
        return rk;
    }

    // Minimum weight of a nonzero codeword of the row space.  The matrix must
    // be a genuine generator matrix (full rank), otherwise distinct messages
    // collide and the notion is ill-defined.
    int min_distance() const {
        require_enumerable("min_distance");
        int best = cols_ + 1;
        enumerate_codewords([&](const std::uint64_t* cw) {
            int wt = 0;
            for (int w = 0; w < words_; ++w) wt += std::popcount(cw[w]);
            if (wt < best) best = wt;
        });
        return best;
    }

    // counts[w] = number of codewords of weight w, zero codeword included.
    WeightDistribution weight_distribution() const {
        require_enumerable("weight_distribution");
        WeightDistribution counts(static_cast<std::size_t>(cols_) + 1, 0);
        counts[0] = 1;
        enumerate_codewords([&](const std::uint64_t* cw) {
            int wt = 0;
            for (int w = 0; w < words_; ++w) wt += std::popcount(cw[w]);
            ++counts[wt];
        });
        return counts;
    }

    // Horizontal concatenation [a | b].
    static BinaryMatrix hconcat(const BinaryMatrix& a, const BinaryMatrix& b) {
        if (a.rows() != b.rows())
            throw std::invalid_argument("hconcat: row counts differ");
        BinaryMatrix out(a.rows(), a.cols() + b.cols());
        for (int r = 0; r < a.rows(); ++r) {
            for (int c = 0; c < a.cols(); ++c) out.set(r, c, a.get(r, c));
            for (int c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.get(r, c));
        }
        return out;
    }

    // Text format: first line "k n", then k lines of n characters from {0,1}.
    static BinaryMatrix parse(std::istream& in) {
        int k = 0, n = 0;
        if (!(in >> k >> n))
            throw ParseError("matrix header: expected \"k n\"");
        if (k < 0 || n < 0)
            throw ParseError("matrix header: negative dimension");
        BinaryMatrix m(k, n);
        std::string line;
        std::getline(in, line);  // rest of the header line
        for (int r = 0; r < k; ++r) {
            if (!std::getline(in, line))
                throw ParseError("matrix row " + std::to_string(r) + ": unexpected end of input");
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (static_cast<int>(line.size()) != n)
                throw ParseError("matrix row " + std::to_string(r) + ": expected " +
                                 std::to_string(n) + " characters, got " +
                                 std::to_string(line.size()));
            for (int c = 0; c < n; ++c) {
                if (line[c] == '1')
                    m.set(r, c, true);
                else if (line[c] != '0')
                    throw ParseError("matrix row " + std::to_string(r) +
                                     ": invalid character '" + std::string(1, line[c]) + "'");
            }
        }
        return m;
    }

    static BinaryMatrix parse(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    void serialize(std::ostream& out) const {
        out << rows_ << ' ' << cols_ << '\n';
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) out << (get(r, c) ? '1' : '0');
            out << '\n';
        }
    }

    std::string to_text() const {
        std::ostringstream out;
        serialize(out);
        return out.str();
    }

    // Convenience for tests and small literals: one string per row.
    static BinaryMatrix from_rows(const std::vector<std::string>& rows) {
        int k = static_cast<int>(rows.size());
        int n = k == 0 ? 0 : static_cast<int>(rows[0].size());
        BinaryMatrix m(k, n);
        for (int r = 0; r < k; ++r) {
            if (static_cast<int>(rows[r].size()) != n)
                throw std::invalid_argument("from_rows: ragged rows");
            for (int c = 0; c < n; ++c) {
                if (rows[r][c] == '1')
                    m.set(r, c, true);
                else if (rows[r][c] != '0')
                    throw std::invalid_argument("from_rows: invalid character");
            }
        }
        return m;
    }

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("BinaryMatrix: index out of range");
    }

    std::size_t word_index(int r, int c) const {
        return static_cast<std::size_t>(r) * words_ + (c >> 6);
    }

    void swap_rows(std::vector<std::uint64_t>& work, int a, int b) const {
        for (int w = 0; w < words_; ++w)
            std::swap(work[static_cast<std::size_t>(a) * words_ + w],
                      work[static_cast<std::size_t>(b) * words_ + w]);
    }

    void xor_rows(std::vector<std::uint64_t>& work, int dst, int src) const {
        for (int w = 0; w < words_; ++w)
            work[static_cast<std::size_t>(dst) * words_ + w] ^=
                work[static_cast<std::size_t>(src) * words_ + w];
    }

    void require_enumerable(const char* op) const {
        if (rows_ > kMaxEnumerationDim)
            throw std::invalid_argument(std::string(op) + ": dimension " +
                                        std::to_string(rows_) + " exceeds enumeration cap " +
                                        std::to_string(kMaxEnumerationDim));
        if (rank() != rows_)
            throw RankDeficient(std::string(op) + ": generator matrix has rank " +
                                std::to_string(rank()) + " < " + std::to_string(rows_));
    }

    // Gray-code walk over all 2^k - 1 nonzero codewords: step i toggles the
    // row indexed by the lowest set bit of i.
    template <typename Fn>
    void enumerate_codewords(Fn&& fn) const {
        std::vector<std::uint64_t> cw(static_cast<std::size_t>(words_), 0);
        std::uint64_t total = rows_ == 0 ? 0 : (std::uint64_t{1} << rows_) - 1;
        for (std::uint64_t i = 1; i <= total; ++i) {
            int r = std::countr_zero(i);
            for (int w = 0; w < words_; ++w)
                cw[w] ^= bits_[static_cast<std::size_t>(r) * words_ + w];
            fn(cw.data());
        }
    }

    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace sodist
