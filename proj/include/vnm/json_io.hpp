#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "vnm/claims.hpp"
#include "vnm/dataset.hpp"
#include "vnm/elicitation.hpp"
#include "vnm/uniqueness.hpp"

namespace vnm::json {

// Insertion-ordered so that utility objects keep their outcome order and
// reports serialize byte-identically run to run.
using Json = nlohmann::ordered_json;

// Rationals are written as "num/den" strings (integers without a slash),
// floats as numbers. On input either form is accepted in both modes.
template <Scalar S>
Json scalar_to_json(const S& v);

template <Scalar S>
S scalar_from_json(const Json& j);

Json space_to_json(const OutcomeSpace& space);
OutcomeSpace space_from_json(const Json& j);

// {"space": [...], "probs": [...]}. When `space` is given, a "space" member
// in j must match it, and bare probability arrays are accepted.
template <Scalar S>
Json lottery_to_json(const Lottery<S>& p);

template <Scalar S>
Lottery<S> lottery_from_json(const Json& j, const std::optional<OutcomeSpace>& space = std::nullopt);

// {"utility": {"x1": 1, ...}}, optionally with "space": [...] fixing the
// order. A bare {"x1": ...} object is also accepted.
template <Scalar S>
Json utility_to_json(const UtilityFunction<S>& u);

template <Scalar S>
UtilityFunction<S> utility_from_json(const Json& j);

// {"space": [...], "pairs": [{"winner": lottery, "loser": lottery}, ...]}
template <Scalar S>
Json dataset_to_json(const PrefDataset<S>& d);

template <Scalar S>
PrefDataset<S> dataset_from_json(const Json& j);

template <Scalar S>
Json witness_to_json(const Witness<S>& w);

template <Scalar S>
Json axiom_report_to_json(const AxiomReport<S>& r);

template <Scalar S>
Json claim_report_to_json(const ClaimReport<S>& r);

template <Scalar S>
Json elicitation_to_json(const ElicitationResult<S>& r);

template <Scalar S>
Json continuity_to_json(const ContinuityWitness<S>& w);

template <Scalar S>
Json affine_to_json(const AffineRecovery<S>& r);

Json validation_to_json(const ValidationReport& r);

template <Scalar S>
Json fit_check_to_json(const FitCheck<S>& c);

// Reads and parses a JSON file; errors name the path.
Json load_file(const std::string& path);

}  // namespace vnm::json
