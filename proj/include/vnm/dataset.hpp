#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vnm/preference.hpp"

namespace vnm {

template <Scalar S>
struct PreferencePair {
    Lottery<S> winner;
    Lottery<S> loser;
};

// Each pair records a strict preference winner > loser.
template <Scalar S>
struct PrefDataset {
    OutcomeSpace space;
    std::vector<PreferencePair<S>> pairs;

    PrefDataset(OutcomeSpace s, std::vector<PreferencePair<S>> p = {}) : space(std::move(s)), pairs(std::move(p)) {
        for (const auto& pair : pairs) {
            require_same_space(pair.winner.space(), space);
            require_same_space(pair.loser.space(), space);
        }
    }
};

// A utility together with the EU relation it induces.
template <Scalar S>
struct RewardModel {
    UtilityFunction<S> utility;

    bool pref(const Lottery<S>& p, const Lottery<S>& q) const {
        return expected_utility(p, utility) >= expected_utility(q, utility);
    }
    UtilityOracle<S> oracle() const { return UtilityOracle<S>(utility); }
};

struct ValidationReport {
    bool nonempty = false;
    std::size_t pair_count = 0;
    std::size_t distinct_lotteries = 0;
    // (i, j) with i <= j: pair i is (a, b) and pair j is (b, a). A pair whose
    // winner equals its loser shows up as (i, i).
    std::vector<std::pair<std::size_t, std::size_t>> direct_contradictions;
    // Pair indices along one cycle per DFS back edge, smallest index first.
    std::vector<std::vector<std::size_t>> cycles;
    bool consistent = false;
};

template <Scalar S>
ValidationReport validate_dataset(const PrefDataset<S>& d);

template <Scalar S>
struct FitCheck {
    bool passed = true;
    std::optional<std::size_t> witness;  // first violated pair
    S worst_slack;                       // min over pairs of EU(w) - EU(l) - margin
};

// Every pair must satisfy EU(winner) >= EU(loser) + margin.
template <Scalar S>
FitCheck<S> model_fits_data(const RewardModel<S>& m, const PrefDataset<S>& d, const S& margin = S(0));

inline constexpr double kDefaultFitMargin = 1e-3;
inline constexpr int kDefaultMaxEpochs = 10000;

class InfeasibleFit : public Error {
public:
    InfeasibleFit(int epochs, std::vector<std::size_t> most_violated)
        : Error(ErrorCode::infeasible, "no utility fits the dataset within " + std::to_string(epochs) + " epochs"),
          epochs_(epochs), most_violated_(std::move(most_violated)) {}
    int epochs() const noexcept { return epochs_; }
    const std::vector<std::size_t>& most_violated() const noexcept { return most_violated_; }

private:
    int epochs_;
    std::vector<std::size_t> most_violated_;
};

// Margin perceptron over the linear constraints (w - l) . u >= margin, with u
// kept in [0, 1]^n, then min-max normalized. Requires a dataset free of
// contradictions and cycles; an empty dataset yields u = 0. Throws
// InfeasibleFit when no fit is found within max_epochs.
template <Scalar S>
RewardModel<S> fit_reward_model(const PrefDataset<S>& d, double margin = kDefaultFitMargin,
                                int max_epochs = kDefaultMaxEpochs);

}  // namespace vnm
