#include "vnm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace vnm::json {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing member \"") + key + "\"");
    return j.at(key);
}

}  // namespace

template <Scalar S>
Json scalar_to_json(const S& v) {
    if constexpr (std::same_as<S, Rational>) {
        return v.get_str();
    } else {
        return v;
    }
}

template <Scalar S>
S scalar_from_json(const Json& j) {
    if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
    if (j.is_number()) {
        if constexpr (std::same_as<S, Rational>) {
            // The shortest round-trip text of the literal, read exactly.
            return parse_rational(j.dump());
        } else {
            return j.get<double>();
        }
    }
    schema_error("expected a number or a \"num/den\" string, got " + j.dump());
}

Json space_to_json(const OutcomeSpace& space) { return Json(space.labels()); }

OutcomeSpace space_from_json(const Json& j) {
    if (!j.is_array()) schema_error("outcome space must be an array of labels");
    std::vector<std::string> labels;
    for (const auto& x : j) {
        if (!x.is_string()) schema_error("outcome labels must be strings");
        labels.push_back(x.get<std::string>());
    }
    return OutcomeSpace(std::move(labels));
}

template <Scalar S>
Json lottery_to_json(const Lottery<S>& p) {
    Json probs = Json::array();
    for (const auto& x : p.probs()) probs.push_back(scalar_to_json(x));
    return Json{{"space", space_to_json(p.space())}, {"probs", std::move(probs)}};
}

template <Scalar S>
Lottery<S> lottery_from_json(const Json& j, const std::optional<OutcomeSpace>& space) {
    const Json* probs = &j;
    std::optional<OutcomeSpace> own;
    if (j.is_object()) {
        probs = &member(j, "probs");
        if (j.contains("space")) own = space_from_json(j.at("space"));
    } else if (!space) {
        schema_error("lottery must be an object with \"space\" and \"probs\"");
    }
    if (!own && !space) schema_error("lottery has no \"space\"");
    if (own && space) require_same_space(*own, *space);
    const OutcomeSpace& s = own ? *own : *space;
    if (!probs->is_array()) schema_error("lottery \"probs\" must be an array");
    std::vector<S> values;
    for (const auto& x : *probs) values.push_back(scalar_from_json<S>(x));
    return Lottery<S>(s, std::move(values));
}

template <Scalar S>
Json utility_to_json(const UtilityFunction<S>& u) {
    Json values = Json::object();
    for (std::size_t i = 0; i < u.size(); ++i) values[u.space().label(i)] = scalar_to_json(u[i]);
    return Json{{"utility", std::move(values)}};
}

template <Scalar S>
UtilityFunction<S> utility_from_json(const Json& j) {
    if (!j.is_object()) schema_error("utility must be a JSON object");
    const Json& values = j.contains("utility") ? j.at("utility") : j;
    if (!values.is_object()) schema_error("\"utility\" must map outcome labels to values");
    std::vector<std::string> labels;
    if (j.contains("space")) {
        labels = space_from_json(j.at("space")).labels();
    } else {
        for (const auto& [key, _] : values.items()) labels.push_back(key);
    }
    OutcomeSpace space(labels);
    if (values.size() != space.size()) schema_error("utility values do not match the outcome space");
    std::vector<S> out;
    for (const auto& label : labels) {
        if (!values.contains(label)) schema_error("utility has no value for '" + label + "'");
        out.push_back(scalar_from_json<S>(values.at(label)));
    }
    return UtilityFunction<S>(space, std::move(out));
}

template <Scalar S>
Json dataset_to_json(const PrefDataset<S>& d) {
    Json pairs = Json::array();
    for (const auto& p : d.pairs) {
        pairs.push_back(Json{{"winner", lottery_to_json(p.winner)}, {"loser", lottery_to_json(p.loser)}});
    }
    return Json{{"space", space_to_json(d.space)}, {"pairs", std::move(pairs)}};
}

template <Scalar S>
PrefDataset<S> dataset_from_json(const Json& j) {
    OutcomeSpace space = space_from_json(member(j, "space"));
    const Json& pairs = member(j, "pairs");
    if (!pairs.is_array()) schema_error("\"pairs\" must be an array");
    std::vector<PreferencePair<S>> out;
    for (const auto& p : pairs) {
        out.push_back({lottery_from_json<S>(member(p, "winner"), space), lottery_from_json<S>(member(p, "loser"), space)});
    }
    return PrefDataset<S>(std::move(space), std::move(out));
}

template <Scalar S>
Json witness_to_json(const Witness<S>& w) {
    Json lotteries = Json::array();
    for (const auto& l : w.lotteries) lotteries.push_back(lottery_to_json(l));
    Json out{{"lotteries", std::move(lotteries)}};
    if (w.alpha) out["alpha"] = scalar_to_json(*w.alpha);
    out["reason"] = w.reason;
    return out;
}

template <Scalar S>
Json axiom_report_to_json(const AxiomReport<S>& r) {
    Json out{{"axiom", to_string(r.axiom)},
             {"verdict", to_string(r.verdict)},
             {"checked", r.checked},
             {"queries_used", r.queries_used}};
    if (r.axiom == Axiom::representation) {
        out["near_ties"] = r.near_ties;
        out["near_tie_mismatches"] = r.near_tie_mismatches;
    }
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    return out;
}

template <Scalar S>
Json claim_report_to_json(const ClaimReport<S>& r) {
    Json out{{"claim", to_string(r.claim)},
             {"verdict", to_string(r.verdict)},
             {"trials", r.trials},
             {"skipped", r.skipped},
             {"queries_used", r.queries_used}};
    if (r.alpha_hat) out["alpha_hat"] = scalar_to_json(*r.alpha_hat);
    if (r.analytic_alpha) out["analytic_alpha"] = scalar_to_json(*r.analytic_alpha);
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    return out;
}

template <Scalar S>
Json elicitation_to_json(const ElicitationResult<S>& r) {
    const auto& space = r.utility.space();
    Json per_outcome = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        per_outcome.push_back(
            Json{{"outcome", space.label(i)}, {"queries", r.comparisons[i]}, {"iterations", r.iterations[i]}});
    }
    return Json{{"utility", utility_to_json(r.utility).at("utility")},
                {"best", space.label(r.best)},
                {"worst", space.label(r.worst)},
                {"all_indifferent", r.all_indifferent},
                {"queries", r.total_comparisons},
                {"oracle_calls", r.oracle_calls},
                {"per_outcome", std::move(per_outcome)}};
}

template <Scalar S>
Json continuity_to_json(const ContinuityWitness<S>& w) {
    return Json{{"axiom", "continuity"},
                {"kind", "witness search"},
                {"alpha", scalar_to_json(w.alpha)},
                {"beta", scalar_to_json(w.beta)},
                {"probes", w.probes},
                {"queries_used", w.queries_used}};
}

template <Scalar S>
Json affine_to_json(const AffineRecovery<S>& r) {
    return Json{{"alpha", scalar_to_json(r.transform.alpha)},
                {"beta", scalar_to_json(r.transform.beta)},
                {"max_residual", scalar_to_json(r.max_residual)}};
}

Json validation_to_json(const ValidationReport& r) {
    Json contradictions = Json::array();
    for (const auto& [i, j] : r.direct_contradictions) contradictions.push_back(Json::array({i, j}));
    Json cycles = Json::array();
    for (const auto& c : r.cycles) cycles.push_back(Json(c));
    return Json{{"verdict", r.consistent ? "consistent" : "inconsistent"},
                {"nonempty", r.nonempty},
                {"pair_count", r.pair_count},
                {"distinct_lotteries", r.distinct_lotteries},
                {"direct_contradictions", std::move(contradictions)},
                {"cycles", std::move(cycles)},
                {"cycle_check", "extension: DFS over winner -> loser edges"}};
}

template <Scalar S>
Json fit_check_to_json(const FitCheck<S>& c) {
    Json out{{"verdict", c.passed ? "pass" : "fail"}, {"worst_slack", scalar_to_json(c.worst_slack)}};
    if (c.witness) out["witness"] = *c.witness;
    return out;
}

Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

#define VNM_INSTANTIATE(S)                                                                   \
    template Json scalar_to_json<S>(const S&);                                               \
    template S scalar_from_json<S>(const Json&);                                             \
    template Json lottery_to_json<S>(const Lottery<S>&);                                     \
    template Lottery<S> lottery_from_json<S>(const Json&, const std::optional<OutcomeSpace>&); \
    template Json utility_to_json<S>(const UtilityFunction<S>&);                             \
    template UtilityFunction<S> utility_from_json<S>(const Json&);                           \
    template Json dataset_to_json<S>(const PrefDataset<S>&);                                 \
    template PrefDataset<S> dataset_from_json<S>(const Json&);                               \
    template Json witness_to_json<S>(const Witness<S>&);                                     \
    template Json axiom_report_to_json<S>(const AxiomReport<S>&);                            \
    template Json claim_report_to_json<S>(const ClaimReport<S>&);                            \
    template Json elicitation_to_json<S>(const ElicitationResult<S>&);                       \
    template Json continuity_to_json<S>(const ContinuityWitness<S>&);                        \
    template Json affine_to_json<S>(const AffineRecovery<S>&);                               \
    template Json fit_check_to_json<S>(const FitCheck<S>&);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm::json
