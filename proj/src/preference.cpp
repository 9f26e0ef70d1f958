#include "vnm/preference.hpp"

#include <array>

namespace vnm {

const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::prefer_first: return "prefer_first";
        case Comparison::prefer_second: return "prefer_second";
        case Comparison::indifferent: return "indifferent";
    }
    return "?";
}

const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::order: return "order";
        case Axiom::independence: return "independence";
        case Axiom::classical_independence: return "classical_independence";
        case Axiom::continuity: return "continuity";
        case Axiom::representation: return "representation";
    }
    return "?";
}

namespace {

template <Scalar S>
void require_mixing_weights(const std::vector<MixtureTuple<S>>& sample) {
    for (const auto& t : sample) {
        if (!(t.alpha > 0 && t.alpha <= 1)) {
            throw Error(ErrorCode::alpha_out_of_range,
                        "mixing weight " + ScalarTraits<S>::to_string(t.alpha) + " outside (0, 1]");
        }
    }
}

template <Scalar S>
void fail(AxiomReport<S>& report, std::vector<Lottery<S>> lotteries, std::optional<S> alpha, std::string reason) {
    report.verdict = Verdict::fail;
    report.witness = Witness<S>{std::move(lotteries), std::move(alpha), std::move(reason)};
}

// Comparison without throwing on incompleteness.
template <Scalar S>
std::optional<Comparison> try_compare(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q) {
    const bool pq = o.pref(p, q);
    const bool qp = o.pref(q, p);
    if (pq && qp) return Comparison::indifferent;
    if (pq) return Comparison::prefer_first;
    if (qp) return Comparison::prefer_second;
    return std::nullopt;
}

}  // namespace

template <Scalar S>
AxiomReport<S> check_order_axioms(PreferenceOracle<S>& o, const std::vector<LotteryTriple<S>>& sample) {
    if (sample.empty()) {
        throw Error(ErrorCode::precondition_violated, "order-axiom sample is empty");
    }
    AxiomReport<S> report;
    report.axiom = Axiom::order;
    const auto start = o.query_count();

    for (const auto& t : sample) {
        const std::array<const Lottery<S>*, 3> l{&t.p, &t.q, &t.r};
        // weak[i][j] = pref(l[i], l[j]); the diagonal is never queried.
        std::array<std::array<bool, 3>, 3> weak{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (i != j) weak[i][j] = o.pref(*l[i], *l[j]);
            }
        }
        ++report.checked;

        for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
            if (!weak[i][j] && !weak[j][i]) {
                fail<S>(report, {*l[i], *l[j]}, std::nullopt, "completeness: neither lottery is weakly preferred");
                report.queries_used = o.query_count() - start;
                return report;
            }
        }
        static constexpr std::array<std::array<int, 3>, 6> orderings{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        for (const auto& [a, b, c] : orderings) {
            if (weak[a][b] && weak[b][c] && !weak[a][c]) {
                fail<S>(report, {*l[a], *l[b], *l[c]}, std::nullopt,
                        "transitivity: first >= second and second >= third but not first >= third");
                report.queries_used = o.query_count() - start;
                return report;
            }
        }
    }
    report.queries_used = o.query_count() - start;
    return report;
}

template <Scalar S>
AxiomReport<S> check_independence(PreferenceOracle<S>& o, const std::vector<MixtureTuple<S>>& sample) {
    require_mixing_weights(sample);
    AxiomReport<S> report;
    report.axiom = Axiom::independence;
    const auto start = o.query_count();

    for (const auto& t : sample) {
        ++report.checked;
        auto base = try_compare(o, t.p, t.q);
        const auto mp = mix(t.p, t.r, t.alpha);
        const auto mq = mix(t.q, t.r, t.alpha);
        auto mixed = try_compare(o, mp, mq);
        if (!base || !mixed) {
            fail<S>(report, {t.p, t.q, t.r}, t.alpha, "oracle is incomplete on this tuple");
            break;
        }
        if (*base != *mixed) {
            fail<S>(report, {t.p, t.q, t.r}, t.alpha,
                    std::string("compare(p, q) = ") + to_string(*base) + " but compare(mix(p, r, a), mix(q, r, a)) = " +
                        to_string(*mixed));
            break;
        }
    }
    report.queries_used = o.query_count() - start;
    return report;
}

template <Scalar S>
AxiomReport<S> check_classical_independence(PreferenceOracle<S>& o, const std::vector<MixtureTuple<S>>& sample) {
    require_mixing_weights(sample);
    AxiomReport<S> report;
    report.axiom = Axiom::classical_independence;
    const auto start = o.query_count();

    for (const auto& t : sample) {
        ++report.checked;
        const auto mp = mix(t.p, t.r, t.alpha);
        const auto mq = mix(t.q, t.r, t.alpha);
        const bool forward = o.pref(t.p, t.q);
        const bool mixed_forward = o.pref(mp, mq);
        const bool backward = o.pref(t.q, t.p);
        const bool mixed_backward = o.pref(mq, mp);
        if (forward != mixed_forward) {
            fail<S>(report, {t.p, t.q, t.r}, t.alpha,
                    std::string("pref(p, q) = ") + (forward ? "true" : "false") + " but pref(mix(p, r, a), mix(q, r, a)) = " +
                        (mixed_forward ? "true" : "false"));
            break;
        }
        if (backward != mixed_backward) {
            fail<S>(report, {t.q, t.p, t.r}, t.alpha,
                    std::string("pref(q, p) = ") + (backward ? "true" : "false") + " but pref(mix(q, r, a), mix(p, r, a)) = " +
                        (mixed_backward ? "true" : "false"));
            break;
        }
    }
    report.queries_used = o.query_count() - start;
    return report;
}

template <Scalar S>
ContinuityWitness<S> probe_continuity(PreferenceOracle<S>& o, const Lottery<S>& p, const Lottery<S>& q,
                                      const Lottery<S>& r, int max_probes) {
    const auto start = o.query_count();
    if (compare(o, p, q) != Comparison::prefer_first || compare(o, q, r) != Comparison::prefer_first ||
        compare(o, p, r) != Comparison::prefer_first) {
        throw Error(ErrorCode::precondition_violated,
                    "continuity probe needs p > q > r strictly; q must lie strictly between p and r");
    }

    ContinuityWitness<S> result{S(0), S(0)};
    std::optional<S> alpha;
    std::optional<S> beta;
    S step(1);
    for (int k = 1; k <= max_probes && !(alpha && beta); ++k) {
        step /= 2;
        if (!alpha) {
            const S a = S(1) - step;
            ++result.probes;
            if (compare(o, mix(p, r, a), q) == Comparison::prefer_first) alpha = a;
        }
        if (!beta) {
            ++result.probes;
            if (compare(o, q, mix(p, r, step)) == Comparison::prefer_first) beta = step;
        }
    }
    if (!alpha || !beta) {
        throw Error(ErrorCode::search_exhausted, "no continuity witness within " + std::to_string(max_probes) +
                                                     " probes per side");
    }
    // Replay both before handing them out.
    if (compare(o, mix(p, r, *alpha), q) != Comparison::prefer_first ||
        compare(o, q, mix(p, r, *beta)) != Comparison::prefer_first) {
        throw Error(ErrorCode::oracle_protocol, "continuity witness did not replay; oracle is not deterministic");
    }
    result.alpha = *alpha;
    result.beta = *beta;
    result.queries_used = o.query_count() - start;
    return result;
}

#define VNM_INSTANTIATE(S)                                                                                     \
    template AxiomReport<S> check_order_axioms<S>(PreferenceOracle<S>&, const std::vector<LotteryTriple<S>>&); \
    template AxiomReport<S> check_independence<S>(PreferenceOracle<S>&, const std::vector<MixtureTuple<S>>&);  \
    template AxiomReport<S> check_classical_independence<S>(PreferenceOracle<S>&,                              \
                                                            const std::vector<MixtureTuple<S>>&);              \
    template ContinuityWitness<S> probe_continuity<S>(PreferenceOracle<S>&, const Lottery<S>&, const Lottery<S>&, \
                                                      const Lottery<S>&, int);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm
