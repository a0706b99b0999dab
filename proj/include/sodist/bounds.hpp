// bounds.hpp
//
// Griesmer bound arithmetic, the even-weight distance cap for
// self-orthogonal codes, the residual-code lemma, and mechanical
// nonexistence chains built from both.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binary_matrix.hpp"

namespace sodist {

// sum_{i=0}^{k-1} ceil(d / 2^i)
inline std::int64_t griesmer_sum(int d, int k) {
    if (d < 1 || k < 1) throw std::invalid_argument("griesmer_sum: d and k must be positive");
    std::int64_t s = 0;
    for (int i = 0; i < k; ++i) {
        std::int64_t p = std::int64_t{1} << i;
        s += (d + p - 1) / p;
    }
    return s;
}

// Largest d with griesmer_sum(d, k) <= n, or 0 when no d >= 1 qualifies
// (n < k).  The sum is strictly increasing in d, so binary search applies.
inline int griesmer_max_d(int n, int k) {
    if (k < 1) throw std::invalid_argument("griesmer_max_d: k must be positive");
    if (n < k) return 0;
    int lo = 1, hi = n;  // griesmer_sum(n, k) >= n and sum(1, k) = k <= n
    while (lo < hi) {
        int mid = lo + (hi - lo + 1) / 2;
        if (griesmer_sum(mid, k) <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// Self-orthogonal codes are even-like, so their minimum distance is even;
// the Griesmer value rounds down to the nearest even number.
inline int so_distance_cap(int n, int k) {
    return 2 * (griesmer_max_d(n, k) / 2);
}

// Residual-code lemma: a self-orthogonal [n, k, d] code with d = 2m yields an
// even-like linear [n - d, k - 1, 2*ceil(m/2)] code.
inline CodeParams residual_step(const CodeParams& p) {
    if (p.d & 1)
        throw OddDistance("residual_step: self-orthogonal distance must be even, got " +
                          std::to_string(p.d));
    if (p.k < 2)
        throw DimensionTooSmall("residual_step: needs k >= 2, got k = " + std::to_string(p.k));
    if (p.d < 2 || p.d >= p.n)
        throw std::invalid_argument("residual_step: requires 0 < d < n for " + to_string(p));
    int m = p.d / 2;
    return CodeParams{p.n - p.d, p.k - 1, 2 * ((m + 1) / 2)};
}

enum class RuleKind { Residual, Griesmer };

struct ChainStep {
    RuleKind kind;
    CodeParams from;       // parameters the rule is applied to
    CodeParams to;         // Residual only: the implied even-like code
    bool so_input = false; // whether `from` is a self-orthogonal claim
    int bound = 0;         // Griesmer only: griesmer_max_d(from.n, from.k)

    friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

// A refutation of an existence claim.  Every chain ends in a Griesmer
// contradiction; the optional residual step in front converts the
// self-orthogonal claim into the even-like code the bound is applied to.
struct NonexistenceChain {
    CodeParams claim;
    std::vector<ChainStep> steps;

    std::string render() const {
        std::string out;
        for (const auto& s : steps) {
            if (s.kind == RuleKind::Residual) {
                out += "RULE residual: " + to_string(s.from) + (s.so_input ? "so" : "") +
                       " -> " + to_string(s.to) + "even-like\n";
            } else {
                out += "RULE griesmer: d(" + std::to_string(s.from.n) + "," +
                       std::to_string(s.from.k) + ") <= " + std::to_string(s.bound) + " < " +
                       std::to_string(s.from.d) + " CONTRADICTION\n";
            }
        }
        return out;
    }

    friend bool operator==(const NonexistenceChain&, const NonexistenceChain&) = default;
};

// Try to refute the claim "a self-orthogonal [n, k, d] code exists".
//
// Two rule applications are attempted: the Griesmer bound directly on the
// claim, then one residual step followed by Griesmer on the residual
// parameters.  The residual output is merely even-like, not self-orthogonal,
// so the lemma cannot be iterated; depth values beyond 1 add nothing and are
// accepted but ignored.  An even-distance cap rule is likewise omitted on
// chains: for an even claimed distance it refutes exactly when plain
// Griesmer does (an even d above 2*floor(g/2) is above g itself).
inline std::optional<NonexistenceChain> refute_so(const CodeParams& p, int depth = 1) {
    if (p.n < 1 || p.k < 1 || p.d < 1)
        throw std::invalid_argument("refute_so: malformed parameters " + to_string(p));
    if (p.d & 1)
        throw OddDistance("refute_so: self-orthogonal distance must be even, got " +
                          std::to_string(p.d));
    int g = griesmer_max_d(p.n, p.k);
    if (g < p.d) {
        NonexistenceChain chain{p, {}};
        chain.steps.push_back(ChainStep{RuleKind::Griesmer, p, {}, true, g});
        return chain;
    }
    if (depth >= 1 && p.k >= 2 && p.d >= 2 && p.d < p.n) {
        CodeParams r = residual_step(p);
        int gr = griesmer_max_d(r.n, r.k);
        if (gr < r.d) {
            NonexistenceChain chain{p, {}};
            chain.steps.push_back(ChainStep{RuleKind::Residual, p, r, true, 0});
            chain.steps.push_back(ChainStep{RuleKind::Griesmer, r, {}, false, gr});
            return chain;
        }
    }
    return std::nullopt;
}

}  // namespace sodist
