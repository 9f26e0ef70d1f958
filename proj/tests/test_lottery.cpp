#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "vnm/sampling.hpp"

using namespace vnm;
using vnm::test::lot;
using vnm::test::R;
using vnm::test::util;

TEST_CASE("new_lottery accepts valid probability vectors") {
    const auto space = test::x3();
    const auto p = lot(space, {"0.2", "0.5", "0.3"});
    CHECK(p[1] == R("1/2"));
    CHECK(lot(OutcomeSpace({"x1"}), {"1"}).size() == 1);

    // Decimal literals that do not sum to exactly 1 in binary still pass in
    // float mode.
    CHECK_NOTHROW(lot<double>(space, {"0.1", "0.2", "0.7"}));
}

TEST_CASE("new_lottery rejects invalid vectors") {
    const auto space = test::x2();
    try {
        lot(space, {"0.5", "0.6"});
        FAIL("expected SumNotOne");
    } catch (const SumNotOne& e) {
        CHECK(e.actual_sum() == "11/10");
    }
    try {
        lot(test::x3(), {"0.5", "-0.2", "0.7"});
        FAIL("expected NegativeProbability");
    } catch (const NegativeProbability& e) {
        CHECK(e.index() == 1);
    }
    try {
        lot(space, {"1"});
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::length_mismatch);
    }
    CHECK_THROWS_AS(lot<double>(space, {"0.5", "0.5000001"}), SumNotOne);
    CHECK_THROWS_AS(Lottery<double>(space, {NAN, 1.0}), NegativeProbability);
}

TEST_CASE("outcome spaces are non-empty with distinct labels") {
    CHECK_THROWS_AS(OutcomeSpace({}), Error);
    CHECK_THROWS_AS(OutcomeSpace({"a", "b", "a"}), Error);
    const auto s = test::x3();
    CHECK(s.index_of("x2") == 1);
    CHECK_THROWS_AS(s.index_of("x9"), UnknownOutcome);
    CHECK(s == OutcomeSpace({"x1", "x2", "x3"}));
    CHECK_FALSE(s == OutcomeSpace({"x1", "x3", "x2"}));
}

TEST_CASE("degenerate lotteries") {
    const auto space = test::x3();
    CHECK(degenerate<Rational>(space, "x1") == lot(space, {"1", "0", "0"}));
    CHECK(degenerate<Rational>(OutcomeSpace({"x1"}), "x1").probs() == std::vector<Rational>{1});
    CHECK(mix(degenerate<Rational>(space, "x1"), degenerate<Rational>(space, "x2"), R("1/2")) ==
          lot(space, {"0.5", "0.5", "0"}));
    CHECK_THROWS_AS(degenerate<Rational>(space, "x4"), UnknownOutcome);
}

TEST_CASE("mix reproduces the worked mixtures exactly") {
    const auto space = test::x3();
    const auto p = lot(space, {"0.7", "0.3", "0"});
    const auto q = lot(space, {"0.2", "0.3", "0.5"});
    const auto r = lot(space, {"0.1", "0.1", "0.8"});
    CHECK(mix(p, q, R("0.6")) == lot(space, {"0.5", "0.3", "0.2"}));
    CHECK(mix(p, r, R("0.6")) == lot(space, {"0.46", "0.22", "0.32"}));
    CHECK(mix(p, q, R("1")) == p);
    CHECK(mix(p, q, R("0")) == q);
}

TEST_CASE("mix in float mode matches within tolerance") {
    const auto space = test::x3();
    const auto m = mix(lot<double>(space, {"0.7", "0.3", "0"}), lot<double>(space, {"0.2", "0.3", "0.5"}), 0.6);
    CHECK(m.approx_equal(lot<double>(space, {"0.5", "0.3", "0.2"})));
}

TEST_CASE("mix errors") {
    const auto p = lot(test::x3(), {"0.7", "0.3", "0"});
    const auto other = lot(OutcomeSpace({"a", "b", "c"}), {"0.7", "0.3", "0"});
    try {
        mix(p, other, R("0.5"));
        FAIL("expected SpaceMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::space_mismatch);
    }
    for (const char* a : {"-1/10", "11/10"}) {
        try {
            mix(p, p, R(a));
            FAIL("expected AlphaOutOfRange");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::alpha_out_of_range);
        }
    }
}

TEST_CASE("expected utility") {
    const auto space = test::x3();
    const auto u = util(space, {"10", "5", "0"});
    CHECK(expected_utility(lot(space, {"0.5", "0.3", "0.2"}), u) == R("6.5"));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(expected_utility(Lottery<Rational>::degenerate(space, i), u) == u[i]);
    }

    // Linearity on the worked mixture, both sides computed independently:
    // 0.6 * (0.7*10 + 0.3*5) + 0.4 * (0.2*10 + 0.3*5 + 0.5*0).
    const auto p = lot(space, {"0.7", "0.3", "0"});
    const auto q = lot(space, {"0.2", "0.3", "0.5"});
    const Rational lhs = expected_utility(mix(p, q, R("0.6")), u);
    const Rational rhs = R("0.6") * (R("0.7") * 10 + R("0.3") * 5) + R("0.4") * (R("0.2") * 10 + R("0.3") * 5);
    CHECK(lhs == R("6.5"));
    CHECK(rhs == R("6.5"));
    CHECK(expected_utility(p, u) == R("8.5"));
    CHECK(expected_utility(q, u) == R("3.5"));

    try {
        expected_utility(p, util(OutcomeSpace({"a", "b", "c"}), {"1", "2", "3"}));
        FAIL("expected SpaceMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::space_mismatch);
    }
}

TEST_CASE("expected utility skips zero-probability outcomes") {
    // A huge utility on a zero-probability outcome must not leak into the
    // float sum.
    const OutcomeSpace space({"a", "b"});
    const UtilityFunction<double> u(space, {1.0, 1e308});
    CHECK(expected_utility(Lottery<double>(space, {1.0, 0.0}), u) == 1.0);
}

TEST_CASE("utility functions must be finite") {
    CHECK_THROWS_AS(UtilityFunction<double>(test::x2(), {1.0, INFINITY}), Error);
    CHECK_THROWS_AS(UtilityFunction<Rational>(test::x2(), {Rational(1)}), Error);
}

TEST_CASE("support") {
    const auto space = test::x3();
    CHECK(support(lot(space, {"0.5", "0.3", "0.2"})) == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(support(degenerate<Rational>(space, "x1")) == std::vector<std::string>{"x1"});
    CHECK(support(lot(space, {"0.5", "0.5", "0"})) == std::vector<std::string>{"x1", "x2"});
    CHECK(support(Lottery<double>(space, {0.5, 0.5 - 1e-16, 1e-16})) == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE_TEMPLATE("mixture algebra properties", S, Rational, double) {
    Sampler<S> sampler(42);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
        const OutcomeSpace space(test::labels(n));
        for (int trial = 0; trial < 200; ++trial) {
            const auto p = sampler.lottery(space);
            const auto q = sampler.lottery(space);
            const S a = sampler.alpha();
            const auto u = sampler.utility(space);

            // Closure: the mixture passes full validation.
            const auto m = mix(p, q, a);
            CHECK_NOTHROW(Lottery<S>(space, m.probs()));

            // mix(p, p, a) = p and mix(p, q, a) = mix(q, p, 1 - a).
            CHECK(mix(p, p, a).approx_equal(p));
            CHECK(m.approx_equal(mix(q, p, S(S(1) - a))));

            const S eu_m = expected_utility(m, u);
            const S eu_p = expected_utility(p, u);
            const S eu_q = expected_utility(q, u);
            const S combo = a * eu_p + (S(1) - a) * eu_q;
            if constexpr (std::same_as<S, Rational>) {
                CHECK(eu_m == combo);
            } else {
                CHECK(std::fabs(eu_m - combo) <= 1e-9 * std::max({1.0, std::fabs(combo)}));
            }

            const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
            const S slack = std::same_as<S, Rational> ? S(0) : S(1e-9);
            CHECK(eu_p >= *lo - slack);
            CHECK(eu_p <= *hi + slack);
        }
    }
}
