#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vnm/lottery.hpp"

namespace vnm {

enum class Comparison { prefer_first, prefer_second, indifferent };

const char* to_string(Comparison c);

// Black-box weak preference "first is at least as good as second". Concrete
// oracles implement weakly_prefers(); callers go through pref(), which
// counts queries and enforces the optional budget. A session is not
// thread-safe; use one oracle object per thread.
template <Scalar S>
class PreferenceOracle {
public:
    explicit PreferenceOracle(OutcomeSpace space) : space_(std::move(space)) {}
    virtual ~PreferenceOracle() = default;

    bool pref(const Lottery<S>& p, const Lottery<S>& q) {
        require_same_space(p.space(), space_);
        require_same_space(q.space(), space_);
        if (budget_ && query_count_ >= *budget_) {
            throw Error(ErrorCode::budget_exhausted,
                        "oracle query budget of " + std::to_string(*budget_) + " exhausted");
        }
        ++query_count_;
        return weakly_prefers(p, q);
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    std::uint64_t query_count() const noexcept { return query_count_; }
    std::optional<std::uint64_t> query_budget() const noexcept { return budget_; }
    void set_query_budget(std::optional<std::uint64_t> budget) { budget_ = budget; }

protected:
    virtual bool weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) = 0;

private:
    OutcomeSpace space_;
    std::optional<std::uint64_t> budget_;
    std::uint64_t query_count_ = 0;
};

// pref(p, q) = EU(p, u) >= EU(q, u) - epsilon.
template <Scalar S>
class UtilityOracle : public PreferenceOracle<S> {
public:
    explicit UtilityOracle(UtilityFunction<S> u, S indiff_epsilon = S(0))
        : PreferenceOracle<S>(u.space()), utility_(std::move(u)), epsilon_(std::move(indiff_epsilon)) {
        if (epsilon_ < 0) {
            throw Error(ErrorCode::precondition_violated, "indifference epsilon must be >= 0");
        }
    }

    const UtilityFunction<S>& utility() const noexcept { return utility_; }
    const S& indiff_epsilon() const noexcept { return epsilon_; }

protected:
    bool weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) override {
        return expected_utility(p, utility_) >= expected_utility(q, utility_) - epsilon_;
    }

private:
    UtilityFunction<S> utility_;
    S epsilon_;
};

// Wraps an arbitrary comparator (hand-built relations, test doubles).
template <Scalar S>
class FunctionOracle : public PreferenceOracle<S> {
public:
    using Fn = std::function<bool(const Lottery<S>&, const Lottery<S>&)>;

    FunctionOracle(OutcomeSpace space, Fn fn) : PreferenceOracle<S>(std::move(space)), fn_(std::move(fn)) {}

protected:
    bool weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) override { return fn_(p, q); }

private:
    Fn fn_;
};

// Rank-dependent utility: outcomes ranked best to worst by u; the decision
// weight of the k-th ranked outcome is w(P(rank <= k)) - w(P(rank < k)).
// A total preorder, but not linear in probabilities for non-identity w, so
// it violates independence. Default w(p) = p^2.
template <Scalar S>
class RankDependentOracle : public PreferenceOracle<S> {
public:
    using Weighting = std::function<S(const S&)>;

    explicit RankDependentOracle(UtilityFunction<S> u, Weighting w = {})
        : PreferenceOracle<S>(u.space()), utility_(std::move(u)), weighting_(std::move(w)) {
        if (!weighting_) {
            weighting_ = [](const S& p) { return S(p * p); };
        }
        order_.resize(utility_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [this](std::size_t a, std::size_t b) { return utility_[a] > utility_[b]; });
    }

    S value(const Lottery<S>& p) const {
        S total(0);
        S cumulative(0);
        S previous_weight = weighting_(S(0));
        for (std::size_t idx : order_) {
            cumulative += p[idx];
            S weight = weighting_(cumulative);
            total += (weight - previous_weight) * utility_[idx];
            previous_weight = weight;
        }
        return total;
    }

    const UtilityFunction<S>& utility() const noexcept { return utility_; }

protected:
    bool weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) override { return value(p) >= value(q); }

private:
    UtilityFunction<S> utility_;
    Weighting weighting_;
    std::vector<std::size_t> order_;
};

// Two pref queries. Throws Error(incomplete_oracle) when neither direction
// holds.
template <Scalar S>
Comparison compare(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q) {
    const bool pq = o.pref(p, q);
    const bool qp = o.pref(q, p);
    if (pq && qp) return Comparison::indifferent;
    if (pq) return Comparison::prefer_first;
    if (qp) return Comparison::prefer_second;
    throw Error(ErrorCode::incomplete_oracle,
                "oracle ranks neither " + p.to_string() + " nor " + q.to_string() + " as at least as good");
}

inline Comparison flip(Comparison c) {
    switch (c) {
        case Comparison::prefer_first: return Comparison::prefer_second;
        case Comparison::prefer_second: return Comparison::prefer_first;
        default: return c;
    }
}

enum class Axiom {
    order,
    independence,
    classical_independence,
    continuity,
    representation,
};

const char* to_string(Axiom a);

enum class Verdict { pass, fail };

inline const char* to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

// The violating tuple. `lotteries` are in the order the property was stated
// for; `alpha` is set for mixture-based axioms.
template <Scalar S>
struct Witness {
    std::vector<Lottery<S>> lotteries;
    std::optional<S> alpha;
    std::string reason;
};

template <Scalar S>
struct AxiomReport {
    Axiom axiom = Axiom::order;
    Verdict verdict = Verdict::pass;
    std::optional<Witness<S>> witness;
    std::uint64_t queries_used = 0;
    std::size_t checked = 0;
    // Representation checks only: pairs within tol of an EU tie, and how many
    // of those the oracle did not report as indifferent.
    std::size_t near_ties = 0;
    std::size_t near_tie_mismatches = 0;

    bool passed() const noexcept { return verdict == Verdict::pass; }
};

template <Scalar S>
struct LotteryTriple {
    Lottery<S> p, q, r;
};

template <Scalar S>
struct MixtureTuple {
    Lottery<S> p, q, r;
    S alpha;
};

// Completeness on every pair inside each triple, transitivity over all six
// orderings. Six pref queries per triple.
template <Scalar S>
AxiomReport<S> check_order_axioms(PreferenceOracle<S>& o, const std::vector<LotteryTriple<S>>& sample);

// Strict preference and indifference are both preserved under common mixing.
template <Scalar S>
AxiomReport<S> check_independence(PreferenceOracle<S>& o, const std::vector<MixtureTuple<S>>& sample);

// p >= q  <=>  mix(p,r,a) >= mix(q,r,a), checked for (p,q) and (q,p).
template <Scalar S>
AxiomReport<S> check_classical_independence(PreferenceOracle<S>& o, const std::vector<MixtureTuple<S>>& sample);

template <Scalar S>
struct ContinuityWitness {
    S alpha;  // mix(p, r, alpha) strictly better than q
    S beta;   // q strictly better than mix(p, r, beta)
    std::uint64_t queries_used = 0;
    int probes = 0;
};

inline constexpr int kContinuityMaxProbes = 64;

// Witness search, not a proof of continuity. Probes alpha on 1 - 2^-k and
// beta on 2^-k, k = 1..max_probes, and re-verifies both before returning.
// Requires p > q > r strictly (PreconditionViolated otherwise);
// throws SearchExhausted when the grid finds no witness.
template <Scalar S>
ContinuityWitness<S> probe_continuity(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q,
                                      const Lottery<S>& r, int max_probes = kContinuityMaxProbes);

}  // namespace vnm
