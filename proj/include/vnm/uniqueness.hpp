#pragma once

#include <cstddef>
#include <optional>

#include "vnm/lottery.hpp"

namespace vnm {

// v = alpha * u + beta with alpha > 0.
template <Scalar S>
struct AffineTransform {
    S alpha;
    S beta;

    S apply(const S& x) const { return S(alpha * x + beta); }
};

// First apply `first`, then `second`.
template <Scalar S>
AffineTransform<S> compose(const AffineTransform<S>& first, const AffineTransform<S>& second) {
    return {S(second.alpha * first.alpha), S(second.alpha * first.beta + second.beta)};
}

template <Scalar S>
struct AffineRecovery {
    AffineTransform<S> transform;
    S max_residual;
};

// Default tolerance: exact in rational mode, 1e-9 in float mode.
template <Scalar S>
S default_affine_tolerance() {
    if constexpr (std::same_as<S, Rational>) {
        return Rational(0);
    } else {
        return 1e-9;
    }
}

// Recovers (alpha, beta) from the extremes of u; alpha = 1 when u is
// constant. Throws RankMismatch if u and v order some pair of outcomes
// differently, NotAffine if any residual exceeds tol.
template <Scalar S>
AffineRecovery<S> recover_affine(const UtilityFunction<S>& u, const UtilityFunction<S>& v,
                                 const S& tol = default_affine_tolerance<S>());

template <Scalar S>
struct AffineCheck {
    bool passed = true;
    std::optional<std::size_t> witness;  // outcome with the largest residual, on failure
    S max_residual;
};

// Passes iff max_x |v(x) - (alpha u(x) + beta)| <= tol. Requires alpha > 0.
template <Scalar S>
AffineCheck<S> verify_affine(const UtilityFunction<S>& u, const UtilityFunction<S>& v, const AffineTransform<S>& t,
                             const S& tol = default_affine_tolerance<S>());

}  // namespace vnm
