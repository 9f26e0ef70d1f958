#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vnm {

enum class ErrorCode {
    negative_probability,
    sum_not_one,
    length_mismatch,
    unknown_outcome,
    space_mismatch,
    alpha_out_of_range,
    invalid_utility,
    incomplete_oracle,
    budget_exhausted,
    precondition_violated,
    search_exhausted,
    no_convergence,
    rank_mismatch,
    not_affine,
    infeasible,
    parse_error,
    oracle_protocol,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class NegativeProbability : public Error {
public:
    explicit NegativeProbability(std::size_t index)
        : Error(ErrorCode::negative_probability,
                "negative probability at index " + std::to_string(index)),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class SumNotOne : public Error {
public:
    explicit SumNotOne(std::string actual_sum)
        : Error(ErrorCode::sum_not_one, "probabilities sum to " + actual_sum + ", expected 1"),
          actual_sum_(std::move(actual_sum)) {}
    const std::string& actual_sum() const noexcept { return actual_sum_; }

private:
    std::string actual_sum_;
};

class UnknownOutcome : public Error {
public:
    explicit UnknownOutcome(std::string label)
        : Error(ErrorCode::unknown_outcome, "unknown outcome '" + label + "'"),
          label_(std::move(label)) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, const std::string& context)
        : Error(ErrorCode::no_convergence,
                "no convergence after " + std::to_string(iterations) + " iterations" +
                    (context.empty() ? "" : " (" + context + ")")),
          iterations_(iterations) {}
    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

class RankMismatch : public Error {
public:
    RankMismatch(std::size_t first, std::size_t second, const std::string& message)
        : Error(ErrorCode::rank_mismatch, message), first_(first), second_(second) {}
    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class NotAffine : public Error {
public:
    // residual is the exact text in rational mode.
    NotAffine(std::size_t index, std::string residual, const std::string& message)
        : Error(ErrorCode::not_affine, message), index_(index), residual_(std::move(residual)) {}
    std::size_t index() const noexcept { return index_; }
    const std::string& residual() const noexcept { return residual_; }

private:
    std::size_t index_;
    std::string residual_;
};

}  // namespace vnm
