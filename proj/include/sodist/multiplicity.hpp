// multiplicity.hpp
//
// Column-multiplicity model of a length-n dimension-k code: a code is a
// multiset of nonzero column labels h in F_2^k (plus optional zero columns),
// and the weight of the codeword selected by message c is the total
// multiplicity of the labels h with <c, h> = 1.  Self-orthogonality becomes a
// system of k(k+1)/2 parity constraints on the multiplicities.

#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "binary_matrix.hpp"

namespace sodist {

inline constexpr int kMaxMultiplicityDim = 16;

struct MultiplicityVector {
    int k = 0;
    // counts[h] = multiplicity of column label h for 1 <= h < 2^k;
    // counts[0] = number of all-zero columns.
    std::vector<int> counts;

    explicit MultiplicityVector(int dim = 0) : k(dim) {
        if (dim < 0 || dim > kMaxMultiplicityDim)
            throw std::invalid_argument("MultiplicityVector: k must be in [0, " +
                                        std::to_string(kMaxMultiplicityDim) + "]");
        counts.assign(std::size_t{1} << dim, 0);
    }

    int zero_cols() const { return counts[0]; }
    int& zero_cols() { return counts[0]; }

    int length() const { return std::accumulate(counts.begin(), counts.end(), 0); }

    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

// <c, h> over GF(2).
inline bool hits(std::uint32_t c, std::uint32_t h) {
    return std::popcount(c & h) & 1;
}

// Weight of the codeword selected by nonzero message c.
inline int codeword_weight(const MultiplicityVector& v, std::uint32_t c) {
    if (c == 0 || c >= (std::uint32_t{1} << v.k))
        throw std::invalid_argument("codeword_weight: message out of range");
    int w = 0;
    for (std::uint32_t h = 1; h < (std::uint32_t{1} << v.k); ++h)
        if (hits(c, h)) w += v.counts[h];
    return w;
}

// Minimum over all nonzero messages; 0 exactly when the columns fail to span.
inline int min_codeword_weight(const MultiplicityVector& v) {
    int best = v.length() + 1;
    for (std::uint32_t c = 1; c < (std::uint32_t{1} << v.k); ++c) {
        int w = codeword_weight(v, c);
        if (w < best) best = w;
    }
    return best;
}

// One parity constraint per unordered pair i <= j of row indices: the total
// multiplicity of the labels with both bits i and j set must be even.  This
// is exactly entry (i, j) of G * G^T.
struct ParityConstraint {
    int i = 0, j = 0;
    std::vector<std::uint32_t> labels;  // all h with h_i = h_j = 1
};

inline std::vector<ParityConstraint> so_parity_constraints(int k) {
    if (k < 1 || k > kMaxMultiplicityDim)
        throw std::invalid_argument("so_parity_constraints: k must be in [1, " +
                                    std::to_string(kMaxMultiplicityDim) + "]");
    std::vector<ParityConstraint> out;
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            ParityConstraint pc{i, j, {}};
            std::uint32_t need = (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
            for (std::uint32_t h = 1; h < (std::uint32_t{1} << k); ++h)
                if ((h & need) == need) pc.labels.push_back(h);
            out.push_back(std::move(pc));
        }
    }
    return out;
}

inline bool satisfies_so_parity(const MultiplicityVector& v) {
    for (const auto& pc : so_parity_constraints(v.k)) {
        int sum = 0;
        for (std::uint32_t h : pc.labels) sum += v.counts[h];
        if (sum & 1) return false;
    }
    return true;
}

// Materialize the multiset as a generator matrix: nonzero labels in ascending
// numeric order (each repeated by its multiplicity, bit r of h goes to row
// r), zero columns last.  The labels must span F_2^k.
inline BinaryMatrix to_matrix(const MultiplicityVector& v) {
    int n = v.length();
    BinaryMatrix m(v.k, n);
    int col = 0;
    for (std::uint32_t h = 1; h < (std::uint32_t{1} << v.k); ++h) {
        for (int rep = 0; rep < v.counts[h]; ++rep) {
            for (int r = 0; r < v.k; ++r)
                if ((h >> r) & 1) m.set(r, col, true);
            ++col;
        }
    }
    if (m.rank() != v.k)
        throw SpanFailure("to_matrix: columns span a space of dimension " +
                          std::to_string(m.rank()) + " < " + std::to_string(v.k));
    return m;
}

inline MultiplicityVector from_matrix(const BinaryMatrix& m) {
    if (m.rows() < 1 || m.rows() > kMaxMultiplicityDim)
        throw std::invalid_argument("from_matrix: row count out of range");
    MultiplicityVector v(m.rows());
    for (int c = 0; c < m.cols(); ++c) {
        std::uint32_t h = 0;
        for (int r = 0; r < m.rows(); ++r)
            if (m.get(r, c)) h |= std::uint32_t{1} << r;
        ++v.counts[h];
    }
    return v;
}

}  // namespace sodist
