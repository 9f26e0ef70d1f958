#include "vnm/uniqueness.hpp"

namespace vnm {

namespace {

template <Scalar S>
int tolerant_sign(const S& diff, const S& tol) {
    if (abs_value<S>(diff) <= tol) return 0;
    return sign_of<S>(diff);
}

}  // namespace

template <Scalar S>
AffineCheck<S> verify_affine(const UtilityFunction<S>& u, const UtilityFunction<S>& v, const AffineTransform<S>& t,
                             const S& tol) {
    require_same_space(u.space(), v.space());
    if (!(t.alpha > 0)) {
        throw Error(ErrorCode::precondition_violated, "affine transform needs alpha > 0");
    }
    AffineCheck<S> check{true, std::nullopt, S(0)};
    std::size_t worst = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const S residual = abs_value<S>(v[i] - t.apply(u[i]));
        if (residual > check.max_residual) {
            check.max_residual = residual;
            worst = i;
        }
    }
    if (check.max_residual > tol) {
        check.passed = false;
        check.witness = worst;
    }
    return check;
}

template <Scalar S>
AffineRecovery<S> recover_affine(const UtilityFunction<S>& u, const UtilityFunction<S>& v, const S& tol) {
    require_same_space(u.space(), v.space());
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int su = tolerant_sign<S>(S(u[i] - u[j]), tol);
            const int sv = tolerant_sign<S>(S(v[i] - v[j]), tol);
            if (su != sv) {
                const auto& space = u.space();
                throw RankMismatch(i, j,
                                   "u and v order '" + space.label(i) + "' and '" + space.label(j) + "' differently");
            }
        }
    }

    AffineTransform<S> t{S(1), S(0)};
    const std::size_t lo = u.argmin();
    const std::size_t hi = u.argmax();
    if (u[hi] == u[lo]) {
        t.beta = v[lo] - u[lo];
    } else {
        t.alpha = (v[hi] - v[lo]) / (u[hi] - u[lo]);
        t.beta = v[lo] - t.alpha * u[lo];
    }
    if (!(t.alpha > 0)) {
        // v flat where u is not, which the rank check only admits inside tol.
        throw RankMismatch(lo, hi, "v does not separate the extremes of u");
    }
    const auto check = verify_affine(u, v, t, tol);
    if (!check.passed) {
        const std::size_t x = *check.witness;
        throw NotAffine(x, ScalarTraits<S>::to_string(check.max_residual),
                        "v('" + u.space().label(x) + "') = " + ScalarTraits<S>::to_string(v[x]) +
                            " but the recovered transform gives " + ScalarTraits<S>::to_string(t.apply(u[x])));
    }
    return {t, check.max_residual};
}

#define VNM_INSTANTIATE(S)                                                                                     \
    template AffineCheck<S> verify_affine<S>(const UtilityFunction<S>&, const UtilityFunction<S>&,              \
                                             const AffineTransform<S>&, const S&);                             \
    template AffineRecovery<S> recover_affine<S>(const UtilityFunction<S>&, const UtilityFunction<S>&, const S&);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm
