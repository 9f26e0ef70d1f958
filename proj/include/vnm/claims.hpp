#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnm/elicitation.hpp"

namespace vnm {

enum class Claim { I, II, III, IV, V };

const char* to_string(Claim c);

template <Scalar S>
struct ClaimReport {
    Claim claim = Claim::I;
    Verdict verdict = Verdict::pass;
    std::optional<Witness<S>> witness;
    std::size_t trials = 0;   // trials whose precondition held and were checked
    std::size_t skipped = 0;  // trials whose precondition failed
    std::uint64_t queries_used = 0;
    // Claim V only.
    std::optional<S> alpha_hat;
    std::optional<S> analytic_alpha;

    bool passed() const noexcept { return verdict == Verdict::pass; }
};

// One trial of Claims I-IV. alpha in (0, 1), beta in (alpha, 1].
template <Scalar S>
struct ClaimTrial {
    Lottery<S> p, q, r;
    S alpha;
    S beta;
};

// Claims I and II run on strictly ordered pairs (roles swapped when q > p),
// Claims III and IV on indifferent pairs.
//   I:   p > mix(p, q, a) > q
//   II:  mix(p, q, b) > mix(p, q, a) for a < b
//   III: p ~ mix(p, q, a) ~ q
//   IV:  mix(p, r, a) ~ mix(q, r, a)
// Returns reports for I, II, III, IV in that order.
template <Scalar S>
std::vector<ClaimReport<S>> verify_claims_i_to_iv(PreferenceOracle<S>& o, const std::vector<ClaimTrial<S>>& sample);

// a* = (EU(q) - EU(r)) / (EU(p) - EU(r)), so that mix(p, r, a*) ~ q.
// Throws PreconditionViolated unless EU(p) >= EU(q) >= EU(r), EU(p) > EU(r).
template <Scalar S>
S analytic_indifference_alpha(const UtilityFunction<S>& u, const Lottery<S>& p, const Lottery<S>& q,
                              const Lottery<S>& r);

// Bisects for the indifference weight, checks that it is indifferent (or the
// bracket converged) and that mix(p, r, a +- 10 tol) fall strictly on either
// side of q. Against a UtilityOracle the result must also agree with the
// analytic weight within tol.
template <Scalar S>
ClaimReport<S> verify_claim_v(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q, const Lottery<S>& r,
                              double tol = kDefaultTolerance, int max_iter = kDefaultMaxIterations);

}  // namespace vnm
