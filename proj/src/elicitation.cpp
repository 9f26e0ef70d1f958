#include "vnm/elicitation.hpp"

namespace vnm {

template <Scalar S>
ExtremeDegenerates find_extreme_degenerates(PreferenceOracle<S>& o, const OutcomeSpace& space) {
    ExtremeDegenerates out;
    auto best = Lottery<S>::degenerate(space, 0);
    auto worst = best;
    for (std::size_t i = 1; i < space.size(); ++i) {
        const auto candidate = Lottery<S>::degenerate(space, i);
        ++out.comparisons;
        if (compare(o, candidate, best) == Comparison::prefer_first) {
            out.best = i;
            best = candidate;
        }
        ++out.comparisons;
        if (compare(o, candidate, worst) == Comparison::prefer_second) {
            out.worst = i;
            worst = candidate;
        }
    }
    ++out.comparisons;
    out.all_indifferent = compare(o, best, worst) == Comparison::indifferent;
    return out;
}

template <Scalar S>
BisectionResult<S> bisect_indifference(PreferenceOracle<S>& o, const Lottery<S>& top, const Lottery<S>& target,
                                       const Lottery<S>& bottom, double tol, int max_iter) {
    BisectionResult<S> res{S(0), S(0), S(1)};
    auto cmp = [&](const Lottery<S>& a, const Lottery<S>& b) {
        ++res.comparisons;
        return compare(o, a, b);
    };

    if (cmp(top, bottom) != Comparison::prefer_first) {
        throw Error(ErrorCode::precondition_violated, "bisection needs top strictly preferred to bottom");
    }
    const auto upper = cmp(top, target);
    if (upper == Comparison::prefer_second) {
        throw Error(ErrorCode::precondition_violated, "bisection target is better than top");
    }
    if (upper == Comparison::indifferent) {
        res.alpha = res.lo = res.hi = S(1);
        res.exact_hit = true;
        return res;
    }
    const auto lower = cmp(target, bottom);
    if (lower == Comparison::prefer_second) {
        throw Error(ErrorCode::precondition_violated, "bisection target is worse than bottom");
    }
    if (lower == Comparison::indifferent) {
        res.alpha = res.lo = res.hi = S(0);
        res.exact_hit = true;
        return res;
    }

    const S width_limit = ScalarTraits<S>::from_double(tol);
    while (res.hi - res.lo > width_limit) {
        if (res.iterations >= max_iter) {
            throw NoConvergence(res.iterations, "bracket still wider than tolerance");
        }
        ++res.iterations;
        S mid = (res.lo + res.hi) / 2;
        switch (cmp(mix(top, bottom, mid), target)) {
            case Comparison::indifferent:
                res.alpha = res.lo = res.hi = mid;
                res.exact_hit = true;
                return res;
            case Comparison::prefer_first:
                res.hi = mid;
                break;
            case Comparison::prefer_second:
                res.lo = mid;
                break;
        }
    }
    res.alpha = (res.lo + res.hi) / 2;
    return res;
}

template <Scalar S>
ElicitationResult<S> elicit_utility(PreferenceOracle<S>& o, const OutcomeSpace& space, double tol, int max_iter) {
    require_same_space(o.space(), space);
    const auto calls_before = o.query_count();
    const std::size_t n = space.size();

    ElicitationResult<S> out{UtilityFunction<S>::constant(space, S(0)), 0, 0, false,
                             std::vector<std::uint64_t>(n, 0), std::vector<int>(n, 0)};

    // Scan comparisons: two per outcome after the first, plus the final
    // best-vs-worst check, charged to outcome 0.
    const auto extremes = find_extreme_degenerates(o, space);
    for (std::size_t i = 1; i < n; ++i) out.comparisons[i] += 2;
    out.comparisons[0] += 1;
    out.best = extremes.best;
    out.worst = extremes.worst;
    out.all_indifferent = extremes.all_indifferent;

    if (!out.all_indifferent) {
        std::vector<S> values(n, S(0));
        values[out.best] = S(1);
        values[out.worst] = S(0);
        const auto top = Lottery<S>::degenerate(space, out.best);
        const auto bottom = Lottery<S>::degenerate(space, out.worst);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == out.best || i == out.worst) continue;
            BisectionResult<S> b;
            try {
                b = bisect_indifference(o, top, Lottery<S>::degenerate(space, i), bottom, tol, max_iter);
            } catch (const NoConvergence& e) {
                throw NoConvergence(e.iterations(), "eliciting outcome '" + space.label(i) + "'");
            }
            values[i] = b.alpha;
            out.comparisons[i] += b.comparisons;
            out.iterations[i] = b.iterations;
        }
        out.utility = UtilityFunction<S>(space, std::move(values));
    }
    for (auto c : out.comparisons) out.total_comparisons += c;
    out.oracle_calls = o.query_count() - calls_before;
    return out;
}

template <Scalar S>
AxiomReport<S> verify_representation(PreferenceOracle<S>& o, const UtilityFunction<S>& u,
                                     const std::vector<std::pair<Lottery<S>, Lottery<S>>>& sample, double tol) {
    AxiomReport<S> report;
    report.axiom = Axiom::representation;
    const auto start = o.query_count();
    const S slack = ScalarTraits<S>::from_double(tol);

    for (const auto& [p, q] : sample) {
        ++report.checked;
        const S gap = expected_utility(p, u) - expected_utility(q, u);
        const bool pq = o.pref(p, q);
        const bool qp = o.pref(q, p);
        if (abs_value<S>(gap) <= slack) {
            ++report.near_ties;
            if (!(pq && qp)) ++report.near_tie_mismatches;
            continue;
        }
        const bool expect_pq = gap >= -slack;
        const bool expect_qp = -gap >= -slack;
        if (pq != expect_pq || qp != expect_qp) {
            report.verdict = Verdict::fail;
            report.witness = Witness<S>{{p, q},
                                        std::nullopt,
                                        "EU gap " + ScalarTraits<S>::to_string(gap) + " but oracle says pref(p, q) = " +
                                            (pq ? "true" : "false") + ", pref(q, p) = " + (qp ? "true" : "false")};
            break;
        }
    }
    report.queries_used = o.query_count() - start;
    return report;
}

#define VNM_INSTANTIATE(S)                                                                                       \
    template ExtremeDegenerates find_extreme_degenerates<S>(PreferenceOracle<S>&, const OutcomeSpace&);         \
    template BisectionResult<S> bisect_indifference<S>(PreferenceOracle<S>&, const Lottery<S>&, const Lottery<S>&, \
                                                       const Lottery<S>&, double, int);                           \
    template ElicitationResult<S> elicit_utility<S>(PreferenceOracle<S>&, const OutcomeSpace&, double, int);      \
    template AxiomReport<S> verify_representation<S>(PreferenceOracle<S>&, const UtilityFunction<S>&,            \
                                                     const std::vector<std::pair<Lottery<S>, Lottery<S>>>&, double);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm
