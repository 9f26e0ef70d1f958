#include "vnm/claims.hpp"

namespace vnm {

const char* to_string(Claim c) {
    switch (c) {
        case Claim::I: return "I";
        case Claim::II: return "II";
        case Claim::III: return "III";
        case Claim::IV: return "IV";
        case Claim::V: return "V";
    }
    return "?";
}

namespace {

template <Scalar S>
void fail_once(ClaimReport<S>& report, std::vector<Lottery<S>> lotteries, std::optional<S> alpha, std::string reason) {
    if (report.verdict == Verdict::fail) return;
    report.verdict = Verdict::fail;
    report.witness = Witness<S>{std::move(lotteries), std::move(alpha), std::move(reason)};
}

}  // namespace

template <Scalar S>
std::vector<ClaimReport<S>> verify_claims_i_to_iv(PreferenceOracle<S>& o, const std::vector<ClaimTrial<S>>& sample) {
    for (const auto& t : sample) {
        if (!(t.alpha > 0 && t.alpha < 1)) {
            throw Error(ErrorCode::alpha_out_of_range,
                        "claim weight " + ScalarTraits<S>::to_string(t.alpha) + " outside (0, 1)");
        }
        if (!(t.beta > t.alpha && t.beta <= 1)) {
            throw Error(ErrorCode::alpha_out_of_range,
                        "claim weight beta " + ScalarTraits<S>::to_string(t.beta) + " outside (alpha, 1]");
        }
    }
    std::vector<ClaimReport<S>> reports(4);
    reports[0].claim = Claim::I;
    reports[1].claim = Claim::II;
    reports[2].claim = Claim::III;
    reports[3].claim = Claim::IV;
    auto& c1 = reports[0];
    auto& c2 = reports[1];
    auto& c3 = reports[2];
    auto& c4 = reports[3];

    const auto start = o.query_count();
    for (const auto& t : sample) {
        const auto base = compare(o, t.p, t.q);
        if (base == Comparison::indifferent) {
            ++c1.skipped;
            ++c2.skipped;

            ++c3.trials;
            const auto m = mix(t.p, t.q, t.alpha);
            if (compare(o, t.p, m) != Comparison::indifferent || compare(o, m, t.q) != Comparison::indifferent) {
                fail_once(c3, {t.p, t.q}, std::optional<S>(t.alpha), "p ~ q but mix(p, q, a) is not indifferent to both");
            }
            ++c4.trials;
            if (compare(o, mix(t.p, t.r, t.alpha), mix(t.q, t.r, t.alpha)) != Comparison::indifferent) {
                fail_once(c4, {t.p, t.q, t.r}, std::optional<S>(t.alpha), "p ~ q but mix(p, r, a) !~ mix(q, r, a)");
            }
            continue;
        }
        ++c3.skipped;
        ++c4.skipped;

        const Lottery<S>& hi = base == Comparison::prefer_first ? t.p : t.q;
        const Lottery<S>& lo = base == Comparison::prefer_first ? t.q : t.p;
        const auto ma = mix(hi, lo, t.alpha);

        ++c1.trials;
        if (compare(o, hi, ma) != Comparison::prefer_first || compare(o, ma, lo) != Comparison::prefer_first) {
            fail_once(c1, {hi, lo}, std::optional<S>(t.alpha), "p > q but mix(p, q, a) is not strictly between");
        }
        ++c2.trials;
        if (compare(o, mix(hi, lo, t.beta), ma) != Comparison::prefer_first) {
            fail_once(c2, {hi, lo}, std::optional<S>(t.alpha),
                      "p > q but mix(p, q, b) is not strictly better than mix(p, q, a) for b = " +
                          ScalarTraits<S>::to_string(t.beta));
        }
    }
    const auto used = o.query_count() - start;
    for (auto& r : reports) r.queries_used = used;
    return reports;
}

template <Scalar S>
S analytic_indifference_alpha(const UtilityFunction<S>& u, const Lottery<S>& p, const Lottery<S>& q,
                              const Lottery<S>& r) {
    const S eu_p = expected_utility(p, u);
    const S eu_q = expected_utility(q, u);
    const S eu_r = expected_utility(r, u);
    if (!(eu_p >= eu_q && eu_q >= eu_r && eu_p > eu_r)) {
        throw Error(ErrorCode::precondition_violated,
                    "indifference weight needs EU(p) >= EU(q) >= EU(r) with EU(p) > EU(r)");
    }
    return S((eu_q - eu_r) / (eu_p - eu_r));
}

template <Scalar S>
ClaimReport<S> verify_claim_v(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q, const Lottery<S>& r,
                              double tol, int max_iter) {
    ClaimReport<S> report;
    report.claim = Claim::V;
    const auto start = o.query_count();

    const auto pq = compare(o, p, q);
    const auto qr = compare(o, q, r);
    const auto pr = compare(o, p, r);
    if (pq == Comparison::prefer_second || qr == Comparison::prefer_second || pr != Comparison::prefer_first) {
        throw Error(ErrorCode::precondition_violated, "Claim V needs p >= q >= r with p > r");
    }

    const auto b = bisect_indifference(o, p, q, r, tol, max_iter);
    report.trials = 1;
    report.alpha_hat = b.alpha;
    const S tol_s = ScalarTraits<S>::from_double(tol);

    const auto at_hat = compare(o, mix(p, r, b.alpha), q);
    if (at_hat != Comparison::indifferent && !(b.hi - b.lo <= tol_s)) {
        fail_once(report, {p, q, r}, std::optional<S>(b.alpha), "bisection weight is neither indifferent nor converged");
    }

    if (const auto* uo = dynamic_cast<const UtilityOracle<S>*>(&o)) {
        const S exact = analytic_indifference_alpha(uo->utility(), p, q, r);
        report.analytic_alpha = exact;
        if (abs_value<S>(b.alpha - exact) > tol_s) {
            fail_once(report, {p, q, r}, std::optional<S>(b.alpha),
                      "bisection weight differs from analytic weight " + ScalarTraits<S>::to_string(exact));
        }
    }

    // Uniqueness bracket; a side that leaves [0, 1] is skipped.
    const S offset = 10 * tol_s;
    const S above = b.alpha + offset;
    const S below = b.alpha - offset;
    if (above <= 1 && compare(o, mix(p, r, above), q) != Comparison::prefer_first) {
        fail_once(report, {p, q, r}, std::optional<S>(above), "mix(p, r, a + 10 tol) is not strictly better than q");
    }
    if (below >= 0 && compare(o, q, mix(p, r, below)) != Comparison::prefer_first) {
        fail_once(report, {p, q, r}, std::optional<S>(below), "q is not strictly better than mix(p, r, a - 10 tol)");
    }
    report.queries_used = o.query_count() - start;
    return report;
}

#define VNM_INSTANTIATE(S)                                                                                      \
    template std::vector<ClaimReport<S>> verify_claims_i_to_iv<S>(PreferenceOracle<S>&,                         \
                                                                  const std::vector<ClaimTrial<S>>&);           \
    template S analytic_indifference_alpha<S>(const UtilityFunction<S>&, const Lottery<S>&, const Lottery<S>&,  \
                                              const Lottery<S>&);                                               \
    template ClaimReport<S> verify_claim_v<S>(PreferenceOracle<S>&, const Lottery<S>&, const Lottery<S>&,       \
                                              const Lottery<S>&, double, int);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm
