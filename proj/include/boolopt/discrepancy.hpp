#pragma once

// Sign selection on the subgroup H: choose u in {-1,1}^N so that every row
// sum sum_k u_k psi(a * y_k), over all 2^n field elements a, stays small.
// A nonconstructive existence bound 11 sqrt(N log(2M/N)) for M rows is used
// as the acceptance certificate for a random baseline and a local search.
//
// Extension point: a partial-coloring or random-walk discrepancy algorithm
// with a proven bound would slot in beside solve_localsearch with the same
// SignProblem / SignSolution surface.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fwht.hpp"
#include "gf2n.hpp"
#include "parallel.hpp"

namespace boolopt {

// Natural log throughout.
inline double spencer_bound(double rows, double columns) {
    require(columns >= 1, "spencer_bound: need N >= 1");
    require(rows >= columns, "spencer_bound: need M >= N");
    return 11.0 * std::sqrt(columns * std::log(2.0 * rows / columns));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream seed for sub-task `index` of a run seeded with `master`.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

class SignProblem {
public:
    SignProblem(FieldContext ctx, std::uint32_t v) : ctx_(std::move(ctx)), v_(v) {
        require(v >= 1 && ctx_.group_order() % v == 0,
                "v = " + std::to_string(v) + " does not divide 2^n - 1 = " + std::to_string(ctx_.group_order()));
        const std::uint32_t count = ctx_.group_order() / v;
        elements_.reserve(count);
        for (std::uint32_t k = 0; k < count; ++k) elements_.push_back(ctx_.exp(std::uint64_t{k} * v));
    }

    // Same problem with every row sum shifted by offset[a].
    SignProblem with_offset(std::vector<std::int64_t> offset) const {
        require(offset.size() == rows(), "offset must have one entry per row");
        SignProblem p = *this;
        p.offset_ = std::move(offset);
        return p;
    }

    const FieldContext& field() const noexcept { return ctx_; }
    std::uint32_t index() const noexcept { return v_; }
    std::size_t rows() const noexcept { return ctx_.size(); }
    std::size_t columns() const noexcept { return elements_.size(); }
    std::span<const FieldElement> elements() const noexcept { return elements_; }
    bool has_offset() const noexcept { return !offset_.empty(); }
    std::span<const std::int64_t> offset() const noexcept { return offset_; }

    // psi(a * y_k), the matrix entry.
    int entry(FieldElement a, std::size_t k) const noexcept { return ctx_.psi_product(a, elements_[k]); }

    // All row sums exactly, via one Walsh transform.
    std::vector<std::int64_t> row_sums(std::span<const std::int8_t> u) const {
        require(u.size() == columns(), "sign vector has wrong length");
        std::vector<std::int32_t> table(ctx_.size(), 0);
        for (std::size_t k = 0; k < u.size(); ++k) table[elements_[k]] = u[k];
        fwht_inplace(std::span<std::int32_t>(table));
        const auto dual = ctx_.dual_table();
        std::vector<std::int64_t> out(ctx_.size());
        for (std::size_t a = 0; a < out.size(); ++a) out[a] = table[dual[a]] + (offset_.empty() ? 0 : offset_[a]);
        return out;
    }

    std::int64_t objective(std::span<const std::int8_t> u) const {
        std::int64_t m = 0;
        for (std::int64_t s : row_sums(u)) m = std::max(m, s < 0 ? -s : s);
        return m;
    }

private:
    FieldContext ctx_;
    std::uint32_t v_;
    std::vector<FieldElement> elements_;  // H in increasing dlog order
    std::vector<std::int64_t> offset_;
};

struct SignSolution {
    std::vector<std::int8_t> u;
    std::int64_t achieved = 0;  // max_a |row sum|
    double bound = 0.0;         // spencer_bound(M, N)
    std::uint64_t seed = 0;
    unsigned restart = 0;       // which trial / restart produced u
    std::size_t flips = 0;
    bool tracked_matches_recomputed = true;
};

namespace detail {

inline std::vector<std::int8_t> draw_signs(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::int8_t> u(count);
    for (auto& s : u) s = (rng() >> 63) ? -1 : 1;
    return u;
}

struct RowStats {
    std::int64_t max = 0;
    std::size_t count = 0;

    friend bool operator<(const RowStats& x, const RowStats& y) {
        return x.max != y.max ? x.max < y.max : x.count < y.count;
    }
};

inline RowStats row_stats(std::span<const std::int64_t> sums) {
    RowStats st;
    for (std::int64_t s : sums) {
        const std::int64_t m = s < 0 ? -s : s;
        if (m > st.max) {
            st.max = m;
            st.count = 1;
        } else if (m == st.max) {
            ++st.count;
        }
    }
    return st;
}

}  // namespace detail

// Best of `trials` uniform sign vectors; trial t uses stream split_seed(seed, t).
inline SignSolution solve_random(const SignProblem& p, unsigned trials, std::uint64_t seed) {
    require(trials >= 1, "solve_random: need at least one trial");
    SignSolution best;
    best.achieved = -1;
    for (unsigned t = 0; t < trials; ++t) {
        auto u = detail::draw_signs(p.columns(), split_seed(seed, t));
        const std::int64_t obj = p.objective(u);
        if (best.achieved < 0 || obj < best.achieved) {
            best.u = std::move(u);
            best.achieved = obj;
            best.restart = t;
        }
    }
    best.seed = seed;
    best.bound = spencer_bound(static_cast<double>(p.rows()), static_cast<double>(p.columns()));
    return best;
}

struct LocalSearchOptions {
    std::size_t sample_rows = 64;    // random rows added to the argmax rows when scoring flips
    std::size_t argmax_rows = 64;    // cap on argmax rows used for scoring
    std::size_t tries_per_step = 8;  // candidates validated globally before declaring a local optimum
};

namespace detail {

// One restart: greedy single flips, objective (max |row sum|, #rows at max)
// strictly decreasing lexicographically with every accepted flip.
inline SignSolution local_search_run(const SignProblem& p, std::vector<std::int8_t> u, std::size_t budget,
                                     std::uint64_t sample_seed, const LocalSearchOptions& opt) {
    const std::size_t rows = p.rows();
    const std::size_t cols = p.columns();
    const FieldContext& ctx = p.field();
    const auto elems = p.elements();
    std::vector<std::int64_t> sums = p.row_sums(u);
    RowStats cur = row_stats(sums);
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<std::size_t> pick_row(0, rows - 1);

    std::vector<std::size_t> probe;
    std::vector<std::pair<std::int64_t, std::size_t>> scored(cols);
    std::size_t flips = 0;

    auto apply = [&](std::size_t k) {
        const std::int64_t delta = -2 * u[k];
        u[k] = static_cast<std::int8_t>(-u[k]);
        const FieldElement y = elems[k];
        for (std::size_t a = 0; a < rows; ++a)
            sums[a] += delta * ctx.psi_product(static_cast<FieldElement>(a), y);
        return row_stats(sums);
    };

    while (flips < budget && cur.max > 0) {
        probe.clear();
        for (std::size_t a = 0; a < rows && probe.size() < opt.argmax_rows; ++a) {
            const std::int64_t m = sums[a] < 0 ? -sums[a] : sums[a];
            if (m == cur.max) probe.push_back(a);
        }
        for (std::size_t i = 0; i < opt.sample_rows; ++i) probe.push_back(pick_row(rng));

        for (std::size_t k = 0; k < cols; ++k) {
            const std::int64_t delta = -2 * u[k];
            std::int64_t worst = 0;
            for (std::size_t a : probe) {
                const std::int64_t s = sums[a] + delta * ctx.psi_product(static_cast<FieldElement>(a), elems[k]);
                worst = std::max(worst, s < 0 ? -s : s);
            }
            scored[k] = {worst, k};
        }
        std::sort(scored.begin(), scored.end());

        bool accepted = false;
        for (std::size_t t = 0; t < std::min(opt.tries_per_step, cols); ++t) {
            if (scored[t].first > cur.max) break;
            const std::size_t k = scored[t].second;
            const RowStats next = apply(k);
            if (next < cur) {
                cur = next;
                accepted = true;
                ++flips;
                break;
            }
            apply(k);  // revert
        }
        if (!accepted) break;
    }

    SignSolution sol;
    sol.achieved = cur.max;
    sol.flips = flips;
    sol.tracked_matches_recomputed = p.objective(u) == cur.max;
    sol.u = std::move(u);
    return sol;
}

}  // namespace detail

// Restart r starts from the sign vector of solve_random's trial r (same
// seed), so the result is never worse than solve_random(p, restarts, seed).
// Restarts run concurrently; the best (lowest objective, then lowest restart
// index) wins.
inline SignSolution solve_localsearch(const SignProblem& p, unsigned restarts, std::size_t budget, std::uint64_t seed,
                                      const LocalSearchOptions& opt = {}) {
    require(restarts >= 1, "solve_localsearch: need at least one restart");
    require(budget >= 1, "solve_localsearch: budget must be positive");
    std::vector<SignSolution> runs(restarts);
    parallel_for(restarts, [&](std::size_t r) {
        auto start = detail::draw_signs(p.columns(), split_seed(seed, r));
        runs[r] = detail::local_search_run(p, std::move(start), budget, split_seed(~seed, r), opt);
        runs[r].restart = static_cast<unsigned>(r);
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].achieved < runs[best].achieved) best = r;
    SignSolution out = std::move(runs[best]);
    out.seed = seed;
    out.bound = spencer_bound(static_cast<double>(p.rows()), static_cast<double>(p.columns()));
    return out;
}

inline bool certify(const SignSolution& sol, const SignProblem& p) {
    return static_cast<double>(sol.achieved) <=
           spencer_bound(static_cast<double>(p.rows()), static_cast<double>(p.columns()));
}

}  // namespace boolopt
