#include "vnm/outcome_space.hpp"

#include "vnm/errors.hpp"

namespace vnm {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) {
    if (labels.empty()) {
        throw Error(ErrorCode::precondition_violated, "outcome space must be non-empty");
    }
    auto impl = std::make_shared<Impl>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!impl->index.emplace(labels[i], i).second) {
            throw Error(ErrorCode::precondition_violated,
                        "duplicate outcome label '" + labels[i] + "'");
        }
    }
    impl->labels = std::move(labels);
    impl_ = std::move(impl);
}

std::optional<std::size_t> OutcomeSpace::find(const std::string& label) const {
    auto it = impl_->index.find(label);
    if (it == impl_->index.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t OutcomeSpace::index_of(const std::string& label) const {
    if (auto i = find(label)) {
        return *i;
    }
    throw UnknownOutcome(label);
}

void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b) {
    if (!(a == b)) {
        throw Error(ErrorCode::space_mismatch, "operands live on different outcome spaces");
    }
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::negative_probability: return "NegativeProbability";
        case ErrorCode::sum_not_one: return "SumNotOne";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::unknown_outcome: return "UnknownOutcome";
        case ErrorCode::space_mismatch: return "SpaceMismatch";
        case ErrorCode::alpha_out_of_range: return "AlphaOutOfRange";
        case ErrorCode::invalid_utility: return "InvalidUtility";
        case ErrorCode::incomplete_oracle: return "IncompleteOracle";
        case ErrorCode::budget_exhausted: return "BudgetExhausted";
        case ErrorCode::precondition_violated: return "PreconditionViolated";
        case ErrorCode::search_exhausted: return "SearchExhausted";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::rank_mismatch: return "RankMismatch";
        case ErrorCode::not_affine: return "NotAffine";
        case ErrorCode::infeasible: return "Infeasible";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::oracle_protocol: return "OracleProtocol";
    }
    return "Unknown";
}

}  // namespace vnm
