#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vnm/elicitation.hpp"
#include "vnm/sampling.hpp"

using namespace vnm;
using vnm::test::lot;
using vnm::test::R;
using vnm::test::util;

namespace {

// Normalized reference utility, computed without the elicitation code.
std::vector<double> normalized(const UtilityFunction<Rational>& u) {
    const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
    std::vector<double> out;
    for (const auto& v : u.values()) {
        out.push_back(*hi == *lo ? 0.0 : ScalarTraits<Rational>::to_double(Rational((v - *lo) / (*hi - *lo))));
    }
    return out;
}

std::uint64_t query_bound(std::size_t n, double tol) {
    return n * static_cast<std::uint64_t>(std::ceil(std::log2(1.0 / tol))) + 4 * n;
}

}  // namespace

TEST_CASE("extreme degenerates") {
    const auto space = test::cities();
    UtilityOracle<Rational> o(util(space, {"1", "0.7", "0"}));
    auto e = find_extreme_degenerates(o, space);
    CHECK(e.best == 0);
    CHECK(e.worst == 2);
    CHECK_FALSE(e.all_indifferent);

    UtilityOracle<Rational> mid_first(util(space, {"0.5", "1", "0"}));
    e = find_extreme_degenerates(mid_first, space);
    CHECK(e.best == 1);
    CHECK(e.worst == 2);

    UtilityOracle<Rational> ties(util(test::x3(), {"1", "1", "0"}));
    e = find_extreme_degenerates(ties, test::x3());
    CHECK(e.best == 0);

    UtilityOracle<Rational> flat(UtilityFunction<Rational>::constant(space, R("2")));
    e = find_extreme_degenerates(flat, space);
    CHECK(e.all_indifferent);
    CHECK(e.best == 0);
    CHECK(e.worst == 0);
}

TEST_CASE("bisection") {
    const auto space = test::cities();
    UtilityOracle<Rational> o(util(space, {"1", "0.7", "0"}));
    const auto paris = degenerate<Rational>(space, "Paris");
    const auto rome = degenerate<Rational>(space, "Rome");
    const auto village = degenerate<Rational>(space, "village");

    const auto b = bisect_indifference(o, paris, rome, village, 1e-9);
    CHECK_FALSE(b.exact_hit);
    CHECK(b.lo <= R("0.7"));
    CHECK(b.hi >= R("0.7"));
    CHECK(b.hi - b.lo <= Rational(1, 1000000000));
    CHECK(abs_value<Rational>(b.alpha - R("0.7")) <= Rational(1, 1000000000));
    CHECK(b.iterations == 30);
    CHECK(b.comparisons == 33);

    const auto top = bisect_indifference(o, paris, paris, village);
    CHECK(top.exact_hit);
    CHECK(top.alpha == 1);
    const auto bottom = bisect_indifference(o, paris, village, village);
    CHECK(bottom.alpha == 0);

    CHECK_THROWS_AS(bisect_indifference(o, village, rome, paris), Error);
    CHECK_THROWS_AS(bisect_indifference(o, rome, paris, village), Error);
    CHECK_THROWS_AS(bisect_indifference(o, paris, village, rome), Error);

    try {
        bisect_indifference(o, paris, rome, village, 1e-9, 3);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.iterations() == 3);
    }
}

TEST_CASE_TEMPLATE("elicitation of the city example", S, Rational, double) {
    const auto space = test::cities();
    for (const auto& values : {std::vector<const char*>{"1", "0.7", "0"}, std::vector<const char*>{"3", "2.1", "0"}}) {
        std::vector<S> v;
        for (const char* x : values) v.push_back(parse_scalar<S>(x));
        UtilityOracle<S> o(UtilityFunction<S>(space, v));
        const auto res = elicit_utility(o, space, 1e-9);
        CHECK(res.best == 0);
        CHECK(res.worst == 2);
        CHECK(res.utility[0] == S(1));
        CHECK(res.utility[2] == S(0));
        CHECK(std::fabs(ScalarTraits<S>::to_double(res.utility[1]) - 0.7) <= 1e-9);
        CHECK(res.oracle_calls == 2 * res.total_comparisons);
        CHECK(res.total_comparisons <= query_bound(3, 1e-9));
    }
}

TEST_CASE("elicitation when every outcome is indifferent") {
    const auto space = test::cities();
    UtilityOracle<Rational> o(UtilityFunction<Rational>::constant(space, R("5")));
    const auto res = elicit_utility(o, space);
    CHECK(res.all_indifferent);
    CHECK(res.utility.is_constant());
    CHECK(res.utility[0] == 0);
    CHECK(res.oracle_calls == 2 * res.total_comparisons);
}

TEST_CASE("elicitation reports non-convergence with the outcome") {
    UtilityOracle<Rational> o(util(test::cities(), {"1", "0.7", "0"}));
    try {
        elicit_utility(o, test::cities(), 1e-9, 5);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(std::string(e.what()).find("Rome") != std::string::npos);
    }
}

TEST_CASE("representation check") {
    const auto space = test::cities();
    UtilityOracle<Rational> o(util(space, {"1", "0.7", "0"}));
    const auto paris = degenerate<Rational>(space, "Paris");
    const auto village = degenerate<Rational>(space, "village");

    CHECK(verify_representation(o, util(space, {"3", "2.1", "0"}), {{paris, village}}).passed());

    const auto reversed = verify_representation(o, util(space, {"0", "0.7", "1"}), {{paris, village}});
    REQUIRE_FALSE(reversed.passed());
    REQUIRE(reversed.witness);
    CHECK(reversed.witness->lotteries == std::vector<Lottery<Rational>>{paris, village});

    const auto ties = verify_representation(o, util(space, {"1", "0.7", "0"}), {{paris, paris}});
    CHECK(ties.passed());
    CHECK(ties.near_ties == 1);
    CHECK(ties.near_tie_mismatches == 0);
}

TEST_CASE_TEMPLATE("elicitation recovers random utilities", S, Rational, double) {
    Sampler<S> sampler(31);
    Sampler<S> pairs(32);
    const double tol = 1e-9;
    for (std::size_t n = 2; n <= 8; ++n) {
        const OutcomeSpace space(test::labels(n));
        for (int i = 0; i < 4; ++i) {
            const auto u = sampler.non_constant_utility(space);
            UtilityOracle<S> o(u);
            const auto res = elicit_utility(o, space, tol);

            std::vector<Rational> exact;
            for (const auto& x : u.values()) exact.push_back(Rational(ScalarTraits<S>::to_double(x)));
            const auto expected = normalized(UtilityFunction<Rational>(space, exact));
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(std::fabs(ScalarTraits<S>::to_double(res.utility[k]) - expected[k]) <= 1e-8);
                CHECK(res.utility[k] >= S(0));
                CHECK(res.utility[k] <= S(1));
            }
            CHECK(res.utility[res.best] == S(1));
            CHECK(res.utility[res.worst] == S(0));
            CHECK(res.oracle_calls == 2 * res.total_comparisons);
            CHECK(res.total_comparisons <= query_bound(n, tol));

            std::vector<std::pair<Lottery<S>, Lottery<S>>> sample;
            for (int j = 0; j < 50; ++j) sample.emplace_back(pairs.lottery(space), pairs.lottery(space));
            const auto rep = verify_representation(o, res.utility, sample, tol);
            CHECK(rep.passed());
        }
    }
}

TEST_CASE("re-eliciting an elicited utility is idempotent") {
    Sampler<Rational> sampler(37);
    const OutcomeSpace space(test::labels(5));
    for (int i = 0; i < 10; ++i) {
        UtilityOracle<Rational> o(sampler.non_constant_utility(space));
        const auto first = elicit_utility(o, space);
        UtilityOracle<Rational> again(first.utility);
        const auto second = elicit_utility(again, space);
        for (std::size_t k = 0; k < space.size(); ++k) {
            CHECK(abs_value<Rational>(first.utility[k] - second.utility[k]) <= Rational(1, 1000000000));
        }
    }
}

TEST_CASE("elicitation requires matching spaces") {
    UtilityOracle<Rational> o(util(test::x3(), {"1", "0.5", "0"}));
    CHECK_THROWS_AS(elicit_utility(o, test::cities()), Error);
}
