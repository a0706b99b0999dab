// simplex.hpp
//
// Simplex generator blocks, the simplex-padding construction, and the
// shortening-direction parameter check.  Padding prepends m copies of S_k to
// a rank-k seed: because S_k is self-orthogonal for k >= 3 and one-weight of
// weight 2^(k-1), the Gram matrix is preserved and every nonzero codeword
// gains exactly m * 2^(k-1) weight per block.

#pragma once

#include <optional>

#include "binary_matrix.hpp"

namespace sodist {

// S_k: k x (2^k - 1); column j (1-indexed) is the binary expansion of j with
// the least significant bit in row 0.
inline BinaryMatrix simplex(int k) {
    if (k < 1 || k > kMaxEnumerationDim)
        throw std::invalid_argument("simplex: k must be in [1, " +
                                    std::to_string(kMaxEnumerationDim) + "]");
    int n = (1 << k) - 1;
    BinaryMatrix m(k, n);
    for (int j = 1; j <= n; ++j)
        for (int r = 0; r < k; ++r)
            if ((j >> r) & 1) m.set(r, j - 1, true);
    return m;
}

// Parameter arithmetic of the padding construction.
inline CodeParams padded_params(const CodeParams& p, int m) {
    if (m < 0) throw std::invalid_argument("padded_params: negative block count");
    int block = (1 << p.k) - 1;
    int half = 1 << (p.k - 1);
    return CodeParams{p.n + m * block, p.k, p.d + m * half};
}

// [S_k | ... | S_k | G] with m simplex blocks.  The seed must have full rank,
// and k >= 3 is required for any m > 0 since S_1 and S_2 are not
// self-orthogonal and the construction would not preserve the Gram matrix.
inline BinaryMatrix pad(const BinaryMatrix& seed, int m) {
    if (m < 0) throw std::invalid_argument("pad: negative block count");
    int k = seed.rows();
    if (seed.rank() != k)
        throw RankDeficient("pad: seed has rank " + std::to_string(seed.rank()) +
                            " < " + std::to_string(k));
    if (m == 0) return seed;
    if (k < 3)
        throw DimensionTooSmall("pad: simplex padding requires k >= 3, got k = " +
                                std::to_string(k));
    BinaryMatrix out = simplex(k);
    for (int i = 1; i < m; ++i) out = BinaryMatrix::hconcat(out, simplex(k));
    return BinaryMatrix::hconcat(out, seed);
}

// Reverse direction on parameters only: if an [n, k, d] self-orthogonal code
// exists, does stripping one simplex block imply an
// [n - (2^k - 1), k, d - 2^(k-1)] self-orthogonal code?  The shortening
// argument needs the residual parameters [n', k, d'] to satisfy
// 2d' - n' >= 0; otherwise no conclusion can be drawn and the check returns
// nothing.
inline std::optional<CodeParams> unpad_check(const CodeParams& p) {
    int block = (1 << p.k) - 1;
    int half = 1 << (p.k - 1);
    if (p.k < 3 || p.n < block || p.d <= half) return std::nullopt;
    CodeParams inner{p.n - block, p.k, p.d - half};
    if (2 * inner.d - inner.n < 0) return std::nullopt;
    return inner;
}

}  // namespace sodist
