// search.hpp
//
// Branch-and-bound search for (self-orthogonal) codes of maximal minimum
// distance over the column-multiplicity model, k <= 6.  Branching assigns a
// multiplicity to each of the 2^k - 1 column labels in a fixed order
// (decreasing popcount, then numeric); pruning combines
//   - mass windows (remaining mass must be placeable under the column cap),
//   - a per-codeword potential bound and a global deficit bound (each mass
//     unit feeds exactly 2^(k-1) codewords),
//   - parity propagation for the k(k+1)/2 self-orthogonality constraints
//     (in the chosen order each constraint is decided last at a distinct
//     weight-1 or weight-2 column),
//   - lex-max canonicity under linear symmetries of F_2^k (all of GL(k,2)
//     for k <= 4, coordinate permutations for k = 5, 6).
//
// Exhaustion results are genuine nonexistence proofs: any code of minimum
// distance >= D has every column multiplicity at most
//   floor((n * 2^(k-2) - D * (2^(k-1) - 1)) / 2^(k-2)),
// because the 2^(k-1) - 1 nonzero codewords avoiding a fixed column have
// total weight exactly 2^(k-2) * (n - mult).  A run under a smaller
// heuristic cap that exhausts is transparently repeated under this sound
// cap, so Infeasible and OptimumCertified are never artifacts of the cap.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "multiplicity.hpp"

namespace sodist {

struct SearchProblem {
    int n = 0;
    int k = 0;
    bool require_so = false;
    std::optional<int> target_d;  // feasibility when set, otherwise maximize
    int max_mult = 0;             // 0: default cap ceil(n / 2^(k-1)) + 1
    bool lift_cap = false;        // start uncapped
    double budget_seconds = 0.0;  // <= 0: unlimited
    bool deterministic = true;    // single worker, bit-identical outcome
    int workers = 0;              // 0: hardware concurrency (when not deterministic)
    bool use_symmetry = true;     // disable only for cross-checking tests
    std::uint64_t node_limit = 0; // 0: unlimited
};

enum class SearchStatus { OptimumCertified, FeasibleFound, Infeasible, BudgetExhausted };

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::OptimumCertified: return "OptimumCertified";
        case SearchStatus::FeasibleFound: return "FeasibleFound";
        case SearchStatus::Infeasible: return "Infeasible";
        case SearchStatus::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

struct SearchOutcome {
    SearchStatus status = SearchStatus::Infeasible;
    int best_d = 0;  // minimum distance of the witness, when present
    std::optional<MultiplicityVector> witness;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

namespace detail {

struct ColumnOrder {
    int k = 0;
    int M = 0;                        // 2^k - 1 labels
    std::vector<int> labels;          // branch position -> label
    std::vector<int> pos_of;          // label -> branch position
    std::vector<std::uint64_t> hit;   // position -> bitmask over messages 1..M
};

inline ColumnOrder make_column_order(int k) {
    ColumnOrder co;
    co.k = k;
    co.M = (1 << k) - 1;
    co.labels.resize(co.M);
    for (int h = 1; h <= co.M; ++h) co.labels[h - 1] = h;
    std::sort(co.labels.begin(), co.labels.end(), [](int a, int b) {
        int pa = std::popcount(unsigned(a)), pb = std::popcount(unsigned(b));
        if (pa != pb) return pa > pb;
        return a < b;
    });
    co.pos_of.assign(co.M + 1, -1);
    for (int t = 0; t < co.M; ++t) co.pos_of[co.labels[t]] = t;
    co.hit.assign(co.M, 0);
    for (int t = 0; t < co.M; ++t)
        for (int c = 1; c <= co.M; ++c)
            if (hits(std::uint32_t(c), std::uint32_t(co.labels[t])))
                co.hit[t] |= std::uint64_t{1} << c;
    return co;
}

// Position permutations induced by label bijections h -> sigma(h): the
// canonical (kept) assignments are the lexicographically maximal ones in
// their orbit.  Each entry stores pinv with (sigma.v)[q] = v[pinv[q]].
inline std::vector<std::vector<std::uint8_t>> make_symmetry(const ColumnOrder& co) {
    std::vector<std::vector<int>> label_maps;
    int k = co.k, M = co.M;
    if (k <= 4) {
        // All of GL(k, 2): enumerate k x k bit matrices, keep the invertible.
        int total = 1 << (k * k);
        for (int bits = 0; bits < total; ++bits) {
            std::array<int, 4> rows{};
            for (int i = 0; i < k; ++i) rows[i] = (bits >> (i * k)) & M;
            std::array<int, 4> work = rows;
            int rank = 0;
            for (int c = 0; c < k; ++c) {
                int pivot = -1;
                for (int r = rank; r < k; ++r)
                    if ((work[r] >> c) & 1) { pivot = r; break; }
                if (pivot < 0) continue;
                std::swap(work[pivot], work[rank]);
                for (int r = 0; r < k; ++r)
                    if (r != rank && ((work[r] >> c) & 1)) work[r] ^= work[rank];
                ++rank;
            }
            if (rank != k) continue;
            std::vector<int> lm(M + 1, 0);
            for (int h = 1; h <= M; ++h) {
                int img = 0;
                for (int i = 0; i < k; ++i)
                    if (std::popcount(unsigned(rows[i] & h)) & 1) img |= 1 << i;
                lm[h] = img;
            }
            label_maps.push_back(std::move(lm));
        }
    } else {
        // Coordinate permutations only.
        std::array<int, 6> perm{};
        for (int i = 0; i < k; ++i) perm[i] = i;
        do {
            std::vector<int> lm(M + 1, 0);
            for (int h = 1; h <= M; ++h) {
                int img = 0;
                for (int i = 0; i < k; ++i)
                    if ((h >> i) & 1) img |= 1 << perm[i];
                lm[h] = img;
            }
            label_maps.push_back(std::move(lm));
        } while (std::next_permutation(perm.begin(), perm.begin() + k));
    }

    std::vector<std::vector<std::uint8_t>> pinvs;
    for (const auto& lm : label_maps) {
        bool identity = true;
        for (int h = 1; h <= M && identity; ++h) identity = lm[h] == h;
        if (identity) continue;
        // pi maps position p to the position of sigma(labels[p]); the value
        // landing at q under the action came from pinv[q] = pi^{-1}(q).
        std::vector<std::uint8_t> pinv(M);
        for (int p = 0; p < M; ++p) pinv[co.pos_of[lm[co.labels[p]]]] = std::uint8_t(p);
        pinvs.push_back(std::move(pinv));
    }
    return pinvs;
}

// Largest multiplicity any column can carry in a minimum-distance >= D code
// with n nonzero columns; negative means no such code exists at all.
inline int sound_mult_cap(int n, int k, int D) {
    if (k < 2) return n;
    std::int64_t q = std::int64_t{1} << (k - 2);                // 2^(k-2)
    std::int64_t num = std::int64_t(n) * q - std::int64_t(D) * (2 * q - 1);
    if (num < 0) return -1;
    return int(std::min<std::int64_t>(num / q, n));
}

enum class LevelStatus { Found, Exhausted, Aborted };

struct SharedState {
    std::atomic<bool> found{false};
    std::atomic<bool> aborted{false};
    std::atomic<std::uint64_t> nodes{0};
    std::mutex witness_mutex;
    std::vector<int> witness_vals;  // by branch position
};

// One feasibility level: does a spanning assignment with every codeword
// weight >= D (and the parity system, when required) exist?
class Level {
public:
    Level(const ColumnOrder& co, const std::vector<std::vector<std::uint8_t>>* sym,
          int n, int D, bool so, int cap,
          std::chrono::steady_clock::time_point deadline, bool has_deadline,
          std::uint64_t node_limit, SharedState& shared)
        : co_(co), sym_(sym), n_(n), D_(D), so_(so), cap_(cap),
          deadline_(deadline), has_deadline_(has_deadline),
          node_limit_(node_limit), shared_(shared) {
        M_ = co_.M;
        half_ = 1 << (co_.k - 1);
        surplus_ = std::int64_t(half_) * n_ - std::int64_t(M_) * D_;
        w_.assign(M_ + 1, 0);
        vals_.assign(M_, 0);
        cand_.assign(M_, std::vector<int>(std::size_t(cap_) + 2, 0));
        // suffix hit counts: hc_[t][c] = #positions >= t whose column hits c
        hc_.assign(std::size_t(M_ + 1) * (M_ + 1), 0);
        for (int t = M_ - 1; t >= 0; --t)
            for (int c = 1; c <= M_; ++c)
                hc_[idx(t, c)] =
                    std::uint8_t(hc_[idx(t + 1, c)] + ((co_.hit[t] >> c) & 1));
        if (so_) {
            auto cons = so_parity_constraints(co_.k);
            cons_parity_.assign(cons.size(), 0);
            cons_of_.assign(M_, {});
            end_cons_.assign(M_, -1);
            for (std::size_t id = 0; id < cons.size(); ++id) {
                int last = -1;
                for (std::uint32_t h : cons[id].labels) {
                    int p = co_.pos_of[h];
                    cons_of_[p].push_back(int(id));
                    last = std::max(last, p);
                }
                end_cons_[last] = int(id);
            }
        }
    }

    LevelStatus run() {
        LevelStatus st = dfs(0, n_);
        flush_nodes();
        return st;
    }

    // Runs the subtree below a fixed prefix (vals for positions < t0).
    LevelStatus run_prefix(const std::vector<int>& prefix, int t0) {
        int R = n_;
        for (int t = 0; t < t0; ++t) {
            apply(t, prefix[t]);
            R -= prefix[t];
        }
        LevelStatus st = dfs(t0, R);
        flush_nodes();
        return st;
    }

    // Enumerate the prefix assignments of the first `depth` positions that
    // pass the local pruning, for parallel splitting.  May record a witness
    // if a full assignment is reached before the split depth.
    LevelStatus collect_prefixes(int depth, std::vector<std::vector<int>>& out) {
        collecting_ = depth;
        collected_ = &out;
        LevelStatus st = dfs(0, n_);
        flush_nodes();
        collecting_ = -1;
        collected_ = nullptr;
        return st;
    }

private:
    std::size_t idx(int t, int c) const { return std::size_t(t) * (M_ + 1) + c; }

    void apply(int t, int v) {
        vals_[t] = v;
        if (v) {
            std::uint64_t m = co_.hit[t];
            while (m) {
                int c = std::countr_zero(m);
                m &= m - 1;
                w_[c] += v;
            }
        }
        if (so_ && (v & 1))
            for (int id : cons_of_[t]) cons_parity_[id] ^= 1;
    }

    void undo(int t, int v) {
        if (v) {
            std::uint64_t m = co_.hit[t];
            while (m) {
                int c = std::countr_zero(m);
                m &= m - 1;
                w_[c] -= v;
            }
        }
        if (so_ && (v & 1))
            for (int id : cons_of_[t]) cons_parity_[id] ^= 1;
        vals_[t] = 0;
    }

    bool bounds_ok(int t_next, int R) const {
        // Every column feeds exactly 2^(k-1) codewords, so the final total
        // weight is n * 2^(k-1) and the total surplus over D is fixed at
        // surplus_; weight already above D consumes it irrevocably.
        std::int64_t deficit = 0, excess = 0;
        for (int c = 1; c <= M_; ++c) {
            int wc = w_[c];
            if (wc >= D_) {
                excess += wc - D_;
                continue;
            }
            int pot = cap_ * hc_[idx(t_next, c)];
            if (pot > R) pot = R;
            if (wc + pot < D_) return false;
            deficit += D_ - wc;
        }
        return excess <= surplus_ && deficit <= std::int64_t(half_) * R;
    }

    // Lex-max canonicity on the known prefix [0, t].  Checking any subset of
    // the symmetry group is sound: the lex-max member of a feasible orbit is
    // never pruned by any partial test.
    bool canonical_prefix(int t) const {
        if (!sym_) return true;
        for (const auto& pinv : *sym_) {
            for (int q = 0; q <= t; ++q) {
                int p = pinv[q];
                if (p > t) break;  // undecidable from this prefix
                if (vals_[p] != vals_[q]) {
                    if (vals_[p] > vals_[q]) return false;  // image is lex-greater
                    break;
                }
            }
        }
        return true;
    }

    bool tick() {
        if (++local_nodes_ >= 1024) {
            flush_nodes();
            if (node_limit_ && shared_.nodes.load(std::memory_order_relaxed) >= node_limit_)
                shared_.aborted.store(true, std::memory_order_relaxed);
            if (has_deadline_ && std::chrono::steady_clock::now() >= deadline_)
                shared_.aborted.store(true, std::memory_order_relaxed);
        }
        return !shared_.aborted.load(std::memory_order_relaxed) &&
               !shared_.found.load(std::memory_order_relaxed);
    }

    LevelStatus dfs(int t, int R) {
        if (!tick())
            return shared_.found.load(std::memory_order_relaxed) ? LevelStatus::Found
                                                                 : LevelStatus::Aborted;
        if (t == M_) {
            std::lock_guard<std::mutex> lock(shared_.witness_mutex);
            shared_.witness_vals = vals_;
            shared_.found.store(true, std::memory_order_relaxed);
            return LevelStatus::Found;
        }
        if (collecting_ == t) {
            collected_->emplace_back(vals_.begin(), vals_.begin() + t);
            return LevelStatus::Exhausted;  // a leaf while collecting
        }
        int rem = M_ - t;
        int hi = std::min(cap_, R);
        int lo = R - cap_ * (rem - 1);
        if (lo < 0) lo = 0;
        if (lo > hi) return LevelStatus::Exhausted;

        // Candidate values, balanced-first: closest to the average remaining
        // mass per column, larger value on ties.
        int forced = -1;
        if (so_ && end_cons_[t] >= 0) forced = cons_parity_[end_cons_[t]];
        std::vector<int>& cand = cand_[t];
        int ncand = 0;
        double ratio = double(R) / rem;
        for (int v = lo; v <= hi; ++v) {
            if (forced >= 0 && (v & 1) != forced) continue;
            cand[ncand++] = v;
        }
        std::stable_sort(cand.begin(), cand.begin() + ncand, [&](int a, int b) {
            double da = std::fabs(a - ratio), db = std::fabs(b - ratio);
            if (da != db) return da < db;
            return a > b;
        });

        bool aborted = false;
        for (int i = 0; i < ncand; ++i) {
            int v = cand[i];
            apply(t, v);
            if (bounds_ok(t + 1, R - v) && canonical_prefix(t)) {
                LevelStatus st = dfs(t + 1, R - v);
                if (st == LevelStatus::Found) return st;
                if (st == LevelStatus::Aborted) aborted = true;
            }
            undo(t, v);
            if (aborted) break;
        }
        return aborted ? LevelStatus::Aborted : LevelStatus::Exhausted;
    }

    void flush_nodes() {
        shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
        local_nodes_ = 0;
    }

    const ColumnOrder& co_;
    const std::vector<std::vector<std::uint8_t>>* sym_;
    int n_, D_;
    bool so_;
    int cap_;
    std::chrono::steady_clock::time_point deadline_;
    bool has_deadline_;
    std::uint64_t node_limit_;
    SharedState& shared_;

    int M_ = 0, half_ = 0;
    std::int64_t surplus_ = 0;
    std::vector<int> w_;
    std::vector<int> vals_;
    std::vector<std::vector<int>> cand_;  // per-depth candidate buffers
    std::vector<std::uint8_t> hc_;
    std::vector<std::uint8_t> cons_parity_;
    std::vector<std::vector<int>> cons_of_;
    std::vector<int> end_cons_;
    std::uint64_t local_nodes_ = 0;
    int collecting_ = -1;
    std::vector<std::vector<int>>* collected_ = nullptr;
};

}  // namespace detail

class Searcher {
public:
    explicit Searcher(const SearchProblem& p) : p_(p) {
        if (p.k < 1 || p.k > 6)
            throw std::invalid_argument("search: k must be in [1, 6]");
        if (p.n < 1) throw std::invalid_argument("search: n must be positive");
        if (p.target_d && *p.target_d < 1)
            throw std::invalid_argument("search: target distance must be positive");
        if (p.target_d && p.require_so && (*p.target_d & 1))
            throw OddDistance("search: self-orthogonal target distance must be even, got " +
                              std::to_string(*p.target_d));
        co_ = detail::make_column_order(p.k);
        if (p.use_symmetry) sym_ = detail::make_symmetry(co_);
        start_ = std::chrono::steady_clock::now();
        if (p.budget_seconds > 0) {
            deadline_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(p.budget_seconds));
            has_deadline_ = true;
        }
    }

    SearchOutcome run() {
        SearchOutcome out;
        int ub = griesmer_max_d(p_.n, p_.k);
        if (p_.require_so) ub = 2 * (ub / 2);
        if (p_.n < p_.k || ub < 1) {
            finish(out, SearchStatus::Infeasible);  // cannot span / bound proof
            return out;
        }

        if (p_.target_d) {
            int D = *p_.target_d;
            if (D > ub) {
                finish(out, SearchStatus::Infeasible);  // bound proof, no tree needed
                return out;
            }
            auto [st, wit] = level(D);
            if (st == detail::LevelStatus::Found) {
                out.witness = wit;
                out.best_d = min_codeword_weight(*wit);
                finish(out, SearchStatus::FeasibleFound);
            } else {
                finish(out, st == detail::LevelStatus::Exhausted ? SearchStatus::Infeasible
                                                                 : SearchStatus::BudgetExhausted);
            }
            return out;
        }

        int step = p_.require_so ? 2 : 1;
        int lowest = p_.require_so ? 2 : 1;
        for (int D = ub; D >= lowest; D -= step) {
            auto [st, wit] = level(D);
            if (st == detail::LevelStatus::Found) {
                out.witness = wit;
                out.best_d = min_codeword_weight(*wit);
                finish(out, SearchStatus::OptimumCertified);
                return out;
            }
            if (st == detail::LevelStatus::Aborted) {
                finish(out, SearchStatus::BudgetExhausted);
                return out;
            }
        }
        finish(out, SearchStatus::Infeasible);
        return out;
    }

private:
    // One feasibility level with the soundness rerun: an exhaustion under a
    // cap below the provable multiplicity bound is repeated at that bound.
    std::pair<detail::LevelStatus, std::optional<MultiplicityVector>> level(int D) {
        int scap = detail::sound_mult_cap(p_.n, p_.k, D);
        if (scap < 0) return {detail::LevelStatus::Exhausted, std::nullopt};
        int half = 1 << (p_.k - 1);
        int config = p_.lift_cap ? p_.n
                     : p_.max_mult > 0 ? p_.max_mult
                                       : (p_.n + half - 1) / half + 1;
        int cap1 = std::min(config, scap);
        auto r1 = run_level(D, cap1);
        if (r1.first != detail::LevelStatus::Exhausted || cap1 >= scap) return r1;
        return run_level(D, scap);
    }

    std::pair<detail::LevelStatus, std::optional<MultiplicityVector>> run_level(int D, int cap) {
        detail::SharedState shared;
        const auto* sym = p_.use_symmetry ? &sym_ : nullptr;
        int workers = p_.deterministic
                          ? 1
                          : (p_.workers > 0 ? p_.workers
                                            : std::max(1u, std::thread::hardware_concurrency()));

        detail::LevelStatus st;
        if (workers == 1) {
            detail::Level lvl(co_, sym, p_.n, D, p_.require_so, cap, deadline_, has_deadline_,
                              p_.node_limit, shared);
            st = lvl.run();
        } else {
            st = run_parallel(D, cap, workers, shared);
        }
        nodes_ += shared.nodes.load();
        if (shared.found.load()) {
            MultiplicityVector v(p_.k);
            for (int t = 0; t < co_.M; ++t) v.counts[co_.labels[t]] = shared.witness_vals[t];
            return {detail::LevelStatus::Found, v};
        }
        return {st, std::nullopt};
    }

    detail::LevelStatus run_parallel(int D, int cap, int workers, detail::SharedState& shared) {
        const auto* sym = p_.use_symmetry ? &sym_ : nullptr;
        // Split on the first two branch positions; each worker replays a
        // prefix and exhausts its subtree.
        std::vector<std::vector<int>> prefixes;
        {
            detail::Level collector(co_, sym, p_.n, D, p_.require_so, cap, deadline_,
                                    has_deadline_, p_.node_limit, shared);
            auto st = collector.collect_prefixes(std::min(2, co_.M), prefixes);
            if (st == detail::LevelStatus::Found) return st;
            if (st == detail::LevelStatus::Aborted) return st;
        }
        std::atomic<std::size_t> next{0};
        std::atomic<bool> any_aborted{false};
        auto work = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= prefixes.size()) return;
                if (shared.found.load() || shared.aborted.load()) return;
                detail::Level lvl(co_, sym, p_.n, D, p_.require_so, cap, deadline_,
                                  has_deadline_, p_.node_limit, shared);
                auto st = lvl.run_prefix(prefixes[i], int(prefixes[i].size()));
                if (st == detail::LevelStatus::Aborted &&
                    !shared.found.load(std::memory_order_relaxed))
                    any_aborted.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (shared.found.load()) return detail::LevelStatus::Found;
        if (any_aborted.load() || shared.aborted.load()) return detail::LevelStatus::Aborted;
        return detail::LevelStatus::Exhausted;
    }

    void finish(SearchOutcome& out, SearchStatus st) {
        out.status = st;
        out.nodes = nodes_;
        out.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    SearchProblem p_;
    detail::ColumnOrder co_;
    std::vector<std::vector<std::uint8_t>> sym_;
    std::chrono::steady_clock::time_point start_, deadline_;
    bool has_deadline_ = false;
    std::uint64_t nodes_ = 0;
};

inline SearchOutcome search(const SearchProblem& p) { return Searcher(p).run(); }

// Randomized local search for a witness at a fixed target level.  A pure
// finder: on instances where the exhaustive tree is enormous it often lands
// on a witness in seconds, and it proves nothing when it fails — callers
// fall back to the branch and bound for certificates.  Deterministic for a
// fixed seed.
struct AnnealOptions {
    double budget_seconds = 30.0;
    std::uint64_t seed = 0;                  // 0: derived from the parameters
    std::uint64_t steps_per_round = 400000;  // restart period
};

inline std::optional<MultiplicityVector> anneal_find(const SearchProblem& p,
                                                     const AnnealOptions& opts = {}) {
    if (p.k < 1 || p.k > 6) throw std::invalid_argument("anneal_find: k must be in [1, 6]");
    if (p.n < 1) throw std::invalid_argument("anneal_find: n must be positive");
    if (!p.target_d) throw std::invalid_argument("anneal_find: a target distance is required");
    const int D = *p.target_d;
    if (D < 1) throw std::invalid_argument("anneal_find: target distance must be positive");
    if (p.require_so && (D & 1))
        throw OddDistance("anneal_find: self-orthogonal target distance must be even, got " +
                          std::to_string(D));
    const int k = p.k, n = p.n;
    const int M = (1 << k) - 1;
    if (n < k || D > griesmer_max_d(n, k)) return std::nullopt;
    int cap = detail::sound_mult_cap(n, k, D);
    if (cap < 0) return std::nullopt;
    cap = std::min(cap, n);

    // hits[h]: bit c set iff codeword c sees column label h.
    std::array<std::uint64_t, 64> hits{};
    for (int h = 1; h <= M; ++h)
        for (int c = 1; c <= M; ++c)
            if (std::popcount(unsigned(c & h)) & 1) hits[h] |= std::uint64_t(1) << c;

    // sig[h]: bit per self-orthogonality parity constraint that label h
    // participates in; a constraint is violated when the XOR of odd-count
    // member labels is odd.
    std::vector<std::uint32_t> sig(M + 1, 0);
    if (p.require_so) {
        auto cons = so_parity_constraints(k);
        for (std::size_t id = 0; id < cons.size(); ++id)
            for (std::uint32_t h : cons[id].labels) sig[h] |= std::uint32_t(1) << id;
    }

    std::uint64_t seed = opts.seed ? opts.seed
                                   : (std::uint64_t(n) << 32) ^ (std::uint64_t(k) << 16) ^
                                         std::uint64_t(D);
    std::mt19937_64 rng(seed);
    std::vector<int> counts(M + 1, 0), wt(M + 1, 0);
    std::uint32_t viol = 0;
    long long deficit = 0;

    auto rebuild = [&] {
        std::fill(counts.begin(), counts.end(), 0);
        int base = std::min(n / M, cap);
        for (int h = 1; h <= M; ++h) counts[h] = base;
        int left = n - base * M;
        std::uniform_int_distribution<int> pick(1, M);
        while (left > 0) {
            int h = pick(rng);
            if (counts[h] < cap) {
                ++counts[h];
                --left;
            }
        }
        std::fill(wt.begin(), wt.end(), 0);
        viol = 0;
        for (int h = 1; h <= M; ++h) {
            if (!counts[h]) continue;
            for (std::uint64_t m = hits[h]; m; m &= m - 1)
                wt[std::countr_zero(m)] += counts[h];
            if (p.require_so && (counts[h] & 1)) viol ^= sig[h];
        }
        deficit = 0;
        for (int c = 1; c <= M; ++c) deficit += std::max(0, D - wt[c]);
    };

    auto witness = [&]() -> std::optional<MultiplicityVector> {
        MultiplicityVector v(k);
        for (int h = 1; h <= M; ++h) v.counts[h] = counts[h];
        if (min_codeword_weight(v) < D) return std::nullopt;  // paranoia recheck
        if (p.require_so && !satisfies_so_parity(v)) return std::nullopt;
        return v;
    };

    rebuild();
    if (deficit == 0 && viol == 0) return witness();
    if (M < 2) return std::nullopt;  // no moves exist

    const double parity_weight = 3.0;
    const auto start = std::chrono::steady_clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(opts.budget_seconds));
    std::uniform_int_distribution<int> pick(1, M);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Moving q units from label a to label b changes wt by -q/+q on the
    // codewords seeing exactly one of them; q = 2 keeps every parity
    // constraint satisfied, so it is the workhorse move once parities hold.
    auto deficit_delta = [&](int c, int q) {
        return std::max(0, D - wt[c] + q) - std::max(0, D - wt[c]);
    };
    // A deficient codeword, if any, to steer proposals toward.
    auto deficient = [&]() -> int {
        if (deficit == 0) return 0;
        for (int probe = 0; probe < 8; ++probe) {
            int c = pick(rng);
            if (wt[c] < D) return c;
        }
        for (int c = 1; c <= M; ++c)
            if (wt[c] < D) return c;
        return 0;
    };

    double T = 3.0;
    std::uint64_t step = 0;
    for (;;) {
        if ((step & 4095) == 0 && std::chrono::steady_clock::now() >= deadline)
            return std::nullopt;
        if (opts.steps_per_round && step && step % opts.steps_per_round == 0) {
            rebuild();  // restart with a fresh random configuration
            if (deficit == 0 && viol == 0) return witness();
            T = 3.0;
        }
        ++step;
        T = std::max(T * 0.99999, 0.05);

        // Proposal: mostly parity-preserving 2-unit transfers, steered toward
        // a deficient codeword when one exists; occasional 1-unit transfers
        // jump between parity classes.
        int q = (step & 7) ? 2 : 1;
        int b;
        int c_target = deficient();
        if (c_target) {
            std::uint64_t m = hits[c_target];
            int nth = int(rng() % std::uint64_t(std::popcount(m)));
            while (nth--) m &= m - 1;
            b = std::countr_zero(m);
        } else {
            b = pick(rng);
        }
        int a = pick(rng);
        if (a == b || counts[a] < q || counts[b] + q > cap) continue;

        long long dd = 0;
        for (std::uint64_t m = hits[a] & ~hits[b]; m; m &= m - 1)
            dd += deficit_delta(std::countr_zero(m), q);
        for (std::uint64_t m = hits[b] & ~hits[a]; m; m &= m - 1)
            dd += deficit_delta(std::countr_zero(m), -q);
        std::uint32_t nviol = p.require_so && (q & 1) ? viol ^ sig[a] ^ sig[b] : viol;
        double dE = double(dd) + parity_weight * (std::popcount(nviol) - std::popcount(viol));
        if (dE > 0 && coin(rng) >= std::exp(-dE / T)) continue;

        for (std::uint64_t m = hits[a] & ~hits[b]; m; m &= m - 1) wt[std::countr_zero(m)] -= q;
        for (std::uint64_t m = hits[b] & ~hits[a]; m; m &= m - 1) wt[std::countr_zero(m)] += q;
        counts[a] -= q;
        counts[b] += q;
        viol = nviol;
        deficit += dd;
        if (deficit == 0 && viol == 0) {
            auto w = witness();
            if (w) return w;
        }
    }
}

// Grow a known code by duplicated-column pairs.  Appending the same column
// twice leaves every multiplicity parity unchanged, so self-orthogonality is
// preserved with no bookkeeping, and each pair adds exactly 2 to the weight
// of the codewords that see its label.  Finding an [n, k, D] extension of an
// [n0, k, d0] base therefore reduces to placing (n - n0) / 2 pair labels so
// that every codeword weight reaches D — a smooth covering objective that
// greedy placement plus a short anneal handles well.  A pure finder, like
// anneal_find: failure proves nothing.
inline std::optional<MultiplicityVector> augment_find(const SearchProblem& p,
                                                      const MultiplicityVector& base,
                                                      const AnnealOptions& opts = {}) {
    if (p.k < 1 || p.k > 6) throw std::invalid_argument("augment_find: k must be in [1, 6]");
    if (base.k != p.k)
        throw std::invalid_argument("augment_find: base has k=" + std::to_string(base.k) +
                                    ", problem wants k=" + std::to_string(p.k));
    if (!p.target_d) throw std::invalid_argument("augment_find: a target distance is required");
    const int D = *p.target_d;
    if (D < 1) throw std::invalid_argument("augment_find: target distance must be positive");
    if (p.require_so && (D & 1))
        throw OddDistance("augment_find: self-orthogonal target distance must be even, got " +
                          std::to_string(D));
    if (p.require_so && !satisfies_so_parity(base))
        throw std::invalid_argument("augment_find: base is not self-orthogonal");
    const int n0 = base.length();
    if (p.n < n0)
        throw std::invalid_argument("augment_find: augmentation needs n >= base length " +
                                    std::to_string(n0) + ", got n=" + std::to_string(p.n));
    // Pairs cover even growth.  An odd step spends one zero column first: a
    // zero column meets no parity constraint and never lowers a weight, while
    // odd all-nonzero growth would need an odd-size zero-Gram label multiset,
    // which this pair placer cannot express.
    const int zeros = (p.n - n0) & 1;
    const int k = p.k, n = p.n, r = (n - n0) / 2;
    const int M = (1 << k) - 1;
    if (D > griesmer_max_d(n, k)) return std::nullopt;
    int cap = detail::sound_mult_cap(n, k, D);
    if (cap < 0) return std::nullopt;
    cap = std::min(cap, n);
    for (int h = 1; h <= M; ++h)
        if (base.counts[h] > cap) return std::nullopt;  // base already too lumpy for D

    std::array<std::uint64_t, 64> hits_mask{};
    for (int h = 1; h <= M; ++h)
        for (int c = 1; c <= M; ++c)
            if (hits(c, h)) hits_mask[h] |= std::uint64_t(1) << c;

    std::vector<int> wt(M + 1, 0);  // current weights, base plus pairs
    std::vector<int> extra(M + 1, 0);  // pairs placed per label
    std::vector<int> slot(std::size_t(r), 0);
    long long deficit = 0;

    auto place = [&](int i, int h) {  // move slot i to label h (0 = empty)
        int old = slot[i];
        if (old) {
            extra[old]--;
            for (std::uint64_t m = hits_mask[old]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                wt[c] -= 2;
                if (wt[c] < D) deficit += std::min(2, D - wt[c]);
            }
        }
        slot[i] = h;
        if (h) {
            extra[h]++;
            for (std::uint64_t m = hits_mask[h]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                if (wt[c] < D) deficit -= std::min(2, D - wt[c]);
                wt[c] += 2;
            }
        }
    };
    auto room = [&](int h) { return base.counts[h] + 2 * (extra[h] + 1) <= cap; };
    auto reset = [&] {
        for (int c = 1; c <= M; ++c) wt[c] = codeword_weight(base, c);
        std::fill(extra.begin(), extra.end(), 0);
        std::fill(slot.begin(), slot.end(), 0);
        deficit = 0;
        for (int c = 1; c <= M; ++c) deficit += std::max(0, D - wt[c]);
    };
    auto witness = [&]() -> std::optional<MultiplicityVector> {
        MultiplicityVector v = base;
        v.counts[0] += zeros;
        for (int h = 1; h <= M; ++h) v.counts[h] += 2 * extra[h];
        if (min_codeword_weight(v) < D) return std::nullopt;  // paranoia recheck
        if (p.require_so && !satisfies_so_parity(v)) return std::nullopt;
        return v;
    };

    std::uint64_t seed = opts.seed ? opts.seed
                                   : (std::uint64_t(n) << 40) ^ (std::uint64_t(n0) << 20) ^
                                         (std::uint64_t(k) << 8) ^ std::uint64_t(D);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_label(1, M);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Greedy init: each pair goes where it erases the most deficit.
    reset();
    for (int i = 0; i < r; ++i) {
        int best_h = 0;
        long long best_gain = -1;
        for (int h = 1; h <= M; ++h) {
            if (!room(h)) continue;
            long long gain = 0;
            for (std::uint64_t m = hits_mask[h]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                if (wt[c] < D) gain += std::min(2, D - wt[c]);
            }
            if (gain > best_gain) {
                best_gain = gain;
                best_h = h;
            }
        }
        if (!best_h) return std::nullopt;  // cap leaves nowhere to put a pair
        place(i, best_h);
    }
    if (deficit == 0) return witness();
    if (r == 0) return std::nullopt;  // nothing to move and the base falls short

    const auto start = std::chrono::steady_clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(opts.budget_seconds));
    std::uniform_int_distribution<int> pick_slot(0, r - 1);
    double T = 1.5;
    std::uint64_t step = 0;
    for (;;) {
        if ((step & 1023) == 0 && std::chrono::steady_clock::now() >= deadline)
            return std::nullopt;
        if (opts.steps_per_round && step && step % opts.steps_per_round == 0) {
            reset();  // restart: fresh random placement
            for (int i = 0; i < r; ++i) {
                for (int tries = 0; tries < 64; ++tries) {
                    int h = pick_label(rng);
                    if (room(h)) {
                        place(i, h);
                        break;
                    }
                }
                if (!slot[i]) return std::nullopt;  // cap is essentially saturated
            }
            if (deficit == 0) return witness();
            T = 1.5;
        }
        ++step;
        T = std::max(T * 0.99995, 0.02);

        // Reassign one pair, steered toward a codeword still short of D.
        int i = pick_slot(rng);
        int h;
        if (deficit > 0 && (step & 1)) {
            int c = 0;
            for (int probe = 0; probe < 8 && !c; ++probe) {
                int t = pick_label(rng);
                if (wt[t] < D) c = t;
            }
            if (!c)
                for (int t = 1; t <= M; ++t)
                    if (wt[t] < D) {
                        c = t;
                        break;
                    }
            std::uint64_t m = hits_mask[c];
            int nth = int(rng() % std::uint64_t(std::popcount(m)));
            while (nth--) m &= m - 1;
            h = std::countr_zero(m);
        } else {
            h = pick_label(rng);
        }
        if (h == slot[i] || !room(h)) continue;

        long long dd = 0;  // deficit change of the reassignment
        int old = slot[i];
        for (std::uint64_t m = hits_mask[old] & ~hits_mask[h]; m; m &= m - 1) {
            int c = std::countr_zero(m);
            dd += std::min(2, std::max(0, D - wt[c] + 2));
        }
        for (std::uint64_t m = hits_mask[h] & ~hits_mask[old]; m; m &= m - 1) {
            int c = std::countr_zero(m);
            dd -= std::min(2, std::max(0, D - wt[c]));
        }
        if (dd > 0 && coin(rng) >= std::exp(-double(dd) / T)) continue;
        place(i, h);
        if (deficit == 0) return witness();
    }
}

// Shrink a known code by removing duplicated-column pairs, two zero columns
// first when present.  Removing a pair lowers the weight of the codewords
// seeing its label by exactly 2 and keeps self-orthogonality, so the job is
// to pick a removal multiset no codeword sees too often.  Greedy removal is
// myopic when most codewords sit at the minimum weight, so a short anneal
// reassigns removals afterwards.  A pure finder: failure proves nothing.
inline std::optional<MultiplicityVector> shrink_find(const SearchProblem& p,
                                                     const MultiplicityVector& base,
                                                     const AnnealOptions& opts = {}) {
    if (p.k < 1 || p.k > 6) throw std::invalid_argument("shrink_find: k must be in [1, 6]");
    if (base.k != p.k)
        throw std::invalid_argument("shrink_find: base has k=" + std::to_string(base.k) +
                                    ", problem wants k=" + std::to_string(p.k));
    if (!p.target_d) throw std::invalid_argument("shrink_find: a target distance is required");
    const int D = *p.target_d;
    if (D < 1) throw std::invalid_argument("shrink_find: target distance must be positive");
    if (p.require_so && (D & 1))
        throw OddDistance("shrink_find: self-orthogonal target distance must be even, got " +
                          std::to_string(D));
    if (p.require_so && !satisfies_so_parity(base))
        throw std::invalid_argument("shrink_find: base is not self-orthogonal");
    const int n0 = base.length();
    if (p.n > n0 || ((n0 - p.n) & 1))
        throw std::invalid_argument("shrink_find: pair removal needs n <= base length " +
                                    std::to_string(n0) + " with an even difference, got n=" +
                                    std::to_string(p.n));

    const int M = (1 << p.k) - 1;
    MultiplicityVector v = base;
    int r = (n0 - p.n) / 2;
    while (r > 0 && v.counts[0] >= 2) {  // zero columns carry no weight; drop them first
        v.counts[0] -= 2;
        --r;
    }
    if (r == 0) {
        if (min_codeword_weight(v) < D) return std::nullopt;
        return v;
    }

    std::array<std::uint64_t, 64> hits_mask{};
    for (int h = 1; h <= M; ++h)
        for (int c = 1; c <= M; ++c)
            if (hits(c, h)) hits_mask[h] |= std::uint64_t(1) << c;

    std::vector<int> wt(M + 1, 0);     // weights after the removals placed so far
    std::vector<int> taken(M + 1, 0);  // pairs removed per label
    std::vector<int> slot(std::size_t(r), 0);
    long long deficit = 0;

    auto place = [&](int i, int h) {  // retarget removal slot i to label h (0 = none)
        int old = slot[i];
        if (old) {
            taken[old]--;
            for (std::uint64_t m = hits_mask[old]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                if (wt[c] < D) deficit -= std::min(2, D - wt[c]);
                wt[c] += 2;
            }
        }
        slot[i] = h;
        if (h) {
            taken[h]++;
            for (std::uint64_t m = hits_mask[h]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                wt[c] -= 2;
                if (wt[c] < D) deficit += std::min(2, D - wt[c]);
            }
        }
    };
    auto room = [&](int h) { return v.counts[h] - 2 * (taken[h] + 1) >= 0; };
    auto reset = [&] {
        for (int c = 1; c <= M; ++c) wt[c] = codeword_weight(v, c);
        std::fill(taken.begin(), taken.end(), 0);
        std::fill(slot.begin(), slot.end(), 0);
        deficit = 0;
        for (int c = 1; c <= M; ++c) deficit += std::max(0, D - wt[c]);
    };
    auto witness = [&]() -> std::optional<MultiplicityVector> {
        MultiplicityVector out = v;
        for (int h = 1; h <= M; ++h) out.counts[h] -= 2 * taken[h];
        if (min_codeword_weight(out) < D) return std::nullopt;  // paranoia recheck
        if (p.require_so && !satisfies_so_parity(out)) return std::nullopt;
        return out;
    };

    std::uint64_t seed = opts.seed ? opts.seed
                                   : (std::uint64_t(n0) << 40) ^ (std::uint64_t(p.n) << 20) ^
                                         (std::uint64_t(p.k) << 8) ^ std::uint64_t(D);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_label(1, M);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Greedy init: each removal goes where it creates the least deficit.
    reset();
    if (deficit > 0) return std::nullopt;  // the base itself falls short of D
    for (int i = 0; i < r; ++i) {
        int best_h = 0;
        long long best_loss = 1 << 30;
        for (int h = 1; h <= M; ++h) {
            if (!room(h)) continue;
            long long loss = 0;
            for (std::uint64_t m = hits_mask[h]; m; m &= m - 1) {
                int c = std::countr_zero(m);
                if (wt[c] - 2 < D) loss += std::min(2, D - wt[c] + 2);
            }
            if (loss < best_loss) {
                best_loss = loss;
                best_h = h;
            }
        }
        if (!best_h) return std::nullopt;  // not enough duplicated labels to remove
        place(i, best_h);
    }
    if (deficit == 0) return witness();

    const auto start = std::chrono::steady_clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(opts.budget_seconds));
    std::uniform_int_distribution<int> pick_slot(0, r - 1);
    double T = 1.5;
    std::uint64_t step = 0;
    for (;;) {
        if ((step & 1023) == 0 && std::chrono::steady_clock::now() >= deadline)
            return std::nullopt;
        if (opts.steps_per_round && step && step % opts.steps_per_round == 0) {
            reset();  // restart: fresh random removal set
            for (int i = 0; i < r; ++i) {
                int placed = 0;
                for (int tries = 0; tries < 256 && !placed; ++tries) {
                    int h = pick_label(rng);
                    if (room(h)) {
                        place(i, h);
                        placed = 1;
                    }
                }
                if (!placed) return std::nullopt;  // too few duplicated labels
            }
            if (deficit == 0) return witness();
            T = 1.5;
        }
        ++step;
        T = std::max(T * 0.99995, 0.02);

        // Retarget one removal away from a codeword pushed below D.
        int i = pick_slot(rng);
        int h;
        if (deficit > 0 && (step & 1)) {
            int c = 0;
            for (int probe = 0; probe < 8 && !c; ++probe) {
                int t = pick_label(rng);
                if (wt[t] < D) c = t;
            }
            if (!c)
                for (int t = 1; t <= M; ++t)
                    if (wt[t] < D) {
                        c = t;
                        break;
                    }
            // Move the removal to a label this codeword does not see.
            std::uint64_t m = ~hits_mask[c] & ((~std::uint64_t(0) >> (63 - M)) & ~std::uint64_t(1));
            int nth = int(rng() % std::uint64_t(std::popcount(m)));
            while (nth--) m &= m - 1;
            h = std::countr_zero(m);
        } else {
            h = pick_label(rng);
        }
        if (h == slot[i] || !room(h)) continue;

        long long dd = 0;  // deficit change of retargeting slot i to h
        int old = slot[i];
        for (std::uint64_t m = hits_mask[old] & ~hits_mask[h]; m; m &= m - 1) {
            int c = std::countr_zero(m);
            dd -= std::min(2, std::max(0, D - wt[c]));
        }
        for (std::uint64_t m = hits_mask[h] & ~hits_mask[old]; m; m &= m - 1) {
            int c = std::countr_zero(m);
            dd += std::min(2, std::max(0, D - wt[c] + 2));
        }
        if (dd > 0 && coin(rng) >= std::exp(-double(dd) / T)) continue;
        place(i, h);
        if (deficit == 0) return witness();
    }
}

}  // namespace sodist
