#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "vnm/errors.hpp"
#include "vnm/outcome_space.hpp"
#include "vnm/scalar.hpp"

namespace vnm {

// A probability vector over an outcome space. Entries are non-negative and
// sum to one (exactly in rational mode, within 1e-12 in float mode).
template <Scalar S>
class Lottery {
public:
    using scalar_type = S;

    // Validating constructor. Throws LengthMismatch, NegativeProbability,
    // SumNotOne.
    Lottery(OutcomeSpace space, std::vector<S> probs) : space_(std::move(space)), probs_(std::move(probs)) {
        validate();
    }

    static Lottery degenerate(const OutcomeSpace& space, std::size_t index) {
        if (index >= space.size()) {
            throw Error(ErrorCode::unknown_outcome, "outcome index " + std::to_string(index) + " out of range");
        }
        std::vector<S> probs(space.size(), S(0));
        probs[index] = S(1);
        return Lottery(space, std::move(probs), unchecked{});
    }

    static Lottery degenerate(const OutcomeSpace& space, const std::string& label) {
        return degenerate(space, space.index_of(label));
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    const std::vector<S>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    const S& operator[](std::size_t i) const { return probs_[i]; }
    const S& prob(const std::string& label) const { return probs_[space_.index_of(label)]; }

    // Exact componentwise equality (both modes).
    friend bool operator==(const Lottery& a, const Lottery& b) {
        return a.space_ == b.space_ && a.probs_ == b.probs_;
    }

    // Equality up to the mode's componentwise tolerance.
    bool approx_equal(const Lottery& other) const {
        if (!(space_ == other.space_)) return false;
        const S tol = ScalarTraits<S>::equality_tolerance();
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            if (abs_value<S>(probs_[i] - other.probs_[i]) > tol) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            if (i) out += ", ";
            out += ScalarTraits<S>::to_string(probs_[i]);
        }
        return out + ")";
    }

private:
    struct unchecked {};
    Lottery(OutcomeSpace space, std::vector<S> probs, unchecked) : space_(std::move(space)), probs_(std::move(probs)) {}

    void validate() const {
        if (probs_.size() != space_.size()) {
            throw Error(ErrorCode::length_mismatch,
                        "lottery has " + std::to_string(probs_.size()) + " entries for a space of " +
                            std::to_string(space_.size()) + " outcomes");
        }
        S total(0);
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            if (!ScalarTraits<S>::is_finite(probs_[i]) || probs_[i] < 0) {
                throw NegativeProbability(i);
            }
            total += probs_[i];
        }
        if (abs_value<S>(total - S(1)) > ScalarTraits<S>::sum_tolerance()) {
            throw SumNotOne(ScalarTraits<S>::to_string(total));
        }
    }

    template <Scalar T>
    friend Lottery<T> mix(const Lottery<T>& p, const Lottery<T>& q, const T& alpha);

    OutcomeSpace space_;
    std::vector<S> probs_;
};

using RationalLottery = Lottery<Rational>;
using FloatLottery = Lottery<double>;

template <Scalar S>
Lottery<S> new_lottery(const OutcomeSpace& space, std::vector<S> probs) {
    return Lottery<S>(space, std::move(probs));
}

template <Scalar S>
Lottery<S> degenerate(const OutcomeSpace& space, const std::string& label) {
    return Lottery<S>::degenerate(space, label);
}

template <Scalar S>
void require_unit_interval(const S& alpha, const char* what = "mixing weight") {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw Error(ErrorCode::alpha_out_of_range,
                    std::string(what) + " " + ScalarTraits<S>::to_string(alpha) + " outside [0, 1]");
    }
}

// alpha * p + (1 - alpha) * q. The result is a lottery for every alpha in
// [0, 1], so it skips re-validation; in float mode the sum may drift by a few
// ulps, well inside the sum tolerance.
template <Scalar S>
Lottery<S> mix(const Lottery<S>& p, const Lottery<S>& q, const S& alpha) {
    require_same_space(p.space(), q.space());
    require_unit_interval(alpha);
    const S beta = S(1) - alpha;
    std::vector<S> out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = alpha * p[i] + beta * q[i];
    }
    return Lottery<S>(p.space(), std::move(out), typename Lottery<S>::unchecked{});
}

template <Scalar S>
std::vector<std::string> support(const Lottery<S>& p) {
    const S threshold = ScalarTraits<S>::support_threshold();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > threshold) labels.push_back(p.space().label(i));
    }
    return labels;
}

// u: X -> values. All entries finite.
template <Scalar S>
class UtilityFunction {
public:
    using scalar_type = S;

    UtilityFunction(OutcomeSpace space, std::vector<S> values) : space_(std::move(space)), values_(std::move(values)) {
        if (values_.size() != space_.size()) {
            throw Error(ErrorCode::length_mismatch,
                        "utility has " + std::to_string(values_.size()) + " values for a space of " +
                            std::to_string(space_.size()) + " outcomes");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!ScalarTraits<S>::is_finite(values_[i])) {
                throw Error(ErrorCode::invalid_utility, "utility of '" + space_.label(i) + "' is not finite");
            }
        }
    }

    static UtilityFunction constant(const OutcomeSpace& space, const S& c) {
        return UtilityFunction(space, std::vector<S>(space.size(), c));
    }

    const OutcomeSpace& space() const noexcept { return space_; }
    const std::vector<S>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const S& operator[](std::size_t i) const { return values_[i]; }
    const S& at(const std::string& label) const { return values_[space_.index_of(label)]; }

    // Lowest index attaining the max / min.
    std::size_t argmax() const {
        return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
    }
    std::size_t argmin() const {
        return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
    }
    bool is_constant() const { return values_[argmax()] == values_[argmin()]; }

    friend bool operator==(const UtilityFunction& a, const UtilityFunction& b) {
        return a.space_ == b.space_ && a.values_ == b.values_;
    }

private:
    OutcomeSpace space_;
    std::vector<S> values_;
};

// Sum over the support of p(x) * u(x).
template <Scalar S>
S expected_utility(const Lottery<S>& p, const UtilityFunction<S>& u) {
    require_same_space(p.space(), u.space());
    S total(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0) total += p[i] * u[i];
    }
    return total;
}

}  // namespace vnm
