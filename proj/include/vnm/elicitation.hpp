#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vnm/preference.hpp"

namespace vnm {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultMaxIterations = 200;

struct ExtremeDegenerates {
    std::size_t best = 0;
    std::size_t worst = 0;
    bool all_indifferent = false;
    std::uint64_t comparisons = 0;
};

// One linear scan keeping the running best and worst point masses; only a
// strict improvement replaces the incumbent, so ties go to the lowest index.
template <Scalar S>
ExtremeDegenerates find_extreme_degenerates(PreferenceOracle<S>& o, const OutcomeSpace& space);

template <Scalar S>
struct BisectionResult {
    S alpha;
    S lo;
    S hi;
    int iterations = 0;
    bool exact_hit = false;
    std::uint64_t comparisons = 0;
};

// Finds the weight a with mix(top, bottom, a) ~ target. Keeps
// mix(top, bottom, hi) >= target >= mix(top, bottom, lo) at every step and
// returns as soon as a probe is indifferent; otherwise returns the midpoint
// once hi - lo <= tol. Throws PreconditionViolated unless
// top >= target >= bottom and top > bottom; NoConvergence after max_iter.
template <Scalar S>
BisectionResult<S> bisect_indifference(PreferenceOracle<S>& o, const Lottery<S>& top, const Lottery<S>& target,
                                       const Lottery<S>& bottom, double tol = kDefaultTolerance,
                                       int max_iter = kDefaultMaxIterations);

template <Scalar S>
struct ElicitationResult {
    UtilityFunction<S> utility;
    std::size_t best = 0;
    std::size_t worst = 0;
    bool all_indifferent = false;
    // Three-way comparisons charged to each outcome (scan + bisection).
    std::vector<std::uint64_t> comparisons;
    std::vector<int> iterations;
    std::uint64_t total_comparisons = 0;
    // Raw weak-preference look-ups; always 2 * total_comparisons.
    std::uint64_t oracle_calls = 0;
};

// Normalized utility: u(best) = 1, u(worst) = 0 and u(x) is the indifference
// weight of x between the two. All zeros when every outcome is indifferent.
template <Scalar S>
ElicitationResult<S> elicit_utility(PreferenceOracle<S>& o, const OutcomeSpace& space, double tol = kDefaultTolerance,
                                    int max_iter = kDefaultMaxIterations);

// pref(p, q) <=> EU(p, u) >= EU(q, u) - tol for every sampled pair, checked in
// both directions. Pairs whose EU gap is within tol are near ties: the
// oracle is expected to report indifference there, and mismatches are counted
// in near_tie_mismatches without failing the verdict.
template <Scalar S>
AxiomReport<S> verify_representation(PreferenceOracle<S>& o, const UtilityFunction<S>& u,
                                     const std::vector<std::pair<Lottery<S>, Lottery<S>>>& sample,
                                     double tol = kDefaultTolerance);

}  // namespace vnm
