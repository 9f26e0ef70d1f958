#include <doctest.h>

#include <algorithm>
#include <string>

#include "test_util.hpp"
#include "vnm/dataset.hpp"
#include "vnm/json_io.hpp"
#include "vnm/sampling.hpp"

using namespace vnm;
using vnm::test::lot;
using vnm::test::R;
using vnm::test::util;

namespace {

template <Scalar S = Rational>
PrefDataset<S> fixture(const std::string& name) {
    return json::dataset_from_json<S>(json::load_file(std::string(VNM_FIXTURE_DIR) + "/" + name));
}

// Reachability by Floyd-Warshall over distinct lotteries; true iff some
// lottery reaches itself through one or more recorded preferences.
bool has_cycle_reference(const PrefDataset<Rational>& d) {
    std::vector<Lottery<Rational>> nodes;
    auto id = [&](const Lottery<Rational>& l) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i] == l) return i;
        }
        nodes.push_back(l);
        return nodes.size() - 1;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& p : d.pairs) {
        const auto w = id(p.winner);
        edges.emplace_back(w, id(p.loser));
    }
    const std::size_t n = nodes.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) reach[a][b] = true;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (reach[i][i]) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("fixtures are flagged") {
    const auto two = validate_dataset(fixture("dataset_two_cycle.json"));
    CHECK_FALSE(two.consistent);
    CHECK(two.direct_contradictions == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(two.cycles.size() == 1);

    const auto three = validate_dataset(fixture("dataset_three_cycle.json"));
    CHECK_FALSE(three.consistent);
    CHECK(three.direct_contradictions.empty());
    REQUIRE(three.cycles.size() == 1);
    CHECK(three.cycles[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(three.distinct_lotteries == 3);

    const auto strict = validate_dataset(fixture("dataset_strict_order.json"));
    CHECK(strict.consistent);
    CHECK(strict.nonempty);
    CHECK(strict.pair_count == 3);

    const auto empty = validate_dataset(fixture("dataset_empty.json"));
    CHECK_FALSE(empty.nonempty);
    CHECK_FALSE(empty.consistent);

    CHECK(validate_dataset(fixture("dataset_not_eu.json")).consistent);
}

TEST_CASE("self pairs are contradictions") {
    const auto space = test::x2();
    const auto p = lot(space, {"1/2", "1/2"});
    const auto r = validate_dataset(PrefDataset<Rational>(space, {{p, p}}));
    CHECK_FALSE(r.consistent);
    CHECK(r.direct_contradictions == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
}

TEST_CASE("datasets reject foreign lotteries") {
    const auto p = lot(test::x2(), {"1", "0"});
    CHECK_THROWS_AS(PrefDataset<Rational>(OutcomeSpace({"a", "b"}), {{p, p}}), Error);
}

TEST_CASE("cycle detection agrees with a reachability reference") {
    Sampler<Rational> sampler(51);
    const auto space = test::x3();
    int cyclic = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Lottery<Rational>> pool;
        for (int i = 0; i < 5; ++i) pool.push_back(sampler.lottery(space));
        std::vector<PreferencePair<Rational>> pairs;
        const int count = 1 + trial % 8;
        for (int i = 0; i < count; ++i) {
            const auto a = static_cast<std::size_t>(sampler.random_unit_rational().get_num().get_ui() % 5);
            auto b = static_cast<std::size_t>(sampler.random_unit_rational().get_num().get_ui() % 5);
            if (b == a) b = (a + 1) % 5;
            pairs.push_back({pool[a], pool[b]});
        }
        const PrefDataset<Rational> d(space, pairs);
        const auto report = validate_dataset(d);
        const bool reference = has_cycle_reference(d);
        CHECK(reference == !report.cycles.empty());
        CHECK(report.consistent == (!reference && report.direct_contradictions.empty()));
        if (reference) ++cyclic;

        for (const auto& cycle : report.cycles) {
            REQUIRE_FALSE(cycle.empty());
            CHECK(*std::min_element(cycle.begin(), cycle.end()) == cycle.front());
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                const auto& here = d.pairs[cycle[k]];
                const auto& next = d.pairs[cycle[(k + 1) % cycle.size()]];
                CHECK(here.loser == next.winner);
            }
        }
        // Every 2-cycle is also a direct contradiction.
        for (std::size_t i = 0; i < d.pairs.size(); ++i) {
            for (std::size_t j = i + 1; j < d.pairs.size(); ++j) {
                if (d.pairs[i].winner == d.pairs[j].loser && d.pairs[i].loser == d.pairs[j].winner) {
                    CHECK(std::find(report.direct_contradictions.begin(), report.direct_contradictions.end(),
                                    std::pair<std::size_t, std::size_t>{i, j}) != report.direct_contradictions.end());
                }
            }
        }
    }
    CHECK(cyclic > 50);
}

TEST_CASE_TEMPLATE("fit on the strict order fixture", S, Rational, double) {
    const auto d = fixture<S>("dataset_strict_order.json");
    const auto m = fit_reward_model(d, 1e-3);
    const auto check = model_fits_data(m, d, ScalarTraits<S>::from_double(1e-3));
    CHECK(check.passed);
    CHECK(check.worst_slack >= S(0));
    // Independent check of the ranking x1 > x2 > x3.
    CHECK(m.utility[0] > m.utility[1]);
    CHECK(m.utility[1] > m.utility[2]);
    CHECK(m.utility[0] == S(1));
    CHECK(m.utility[2] == S(0));
}

TEST_CASE("fit rejects contradictions and cycles") {
    for (const char* name : {"dataset_two_cycle.json", "dataset_three_cycle.json"}) {
        try {
            fit_reward_model(fixture(name));
            FAIL("expected PreconditionViolated");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::precondition_violated);
        }
    }
}

TEST_CASE("fit on an empty dataset") {
    const auto m = fit_reward_model(fixture("dataset_empty.json"));
    CHECK(m.utility.is_constant());
    CHECK(m.utility[0] == 0);
}

TEST_CASE("acyclic data that no expected utility can fit") {
    const auto d = fixture("dataset_not_eu.json");
    try {
        fit_reward_model(d, 1e-3, 500);
        FAIL("expected InfeasibleFit");
    } catch (const InfeasibleFit& e) {
        CHECK(e.code() == ErrorCode::infeasible);
        CHECK(e.epochs() == 500);
        CHECK_FALSE(e.most_violated().empty());
    }
}

TEST_CASE("model_fits_data reports the first violation") {
    const auto d = fixture("dataset_strict_order.json");
    const RewardModel<Rational> wrong{util(d.space, {"0", "0.5", "1"})};
    const auto check = model_fits_data(wrong, d);
    CHECK_FALSE(check.passed);
    CHECK(check.witness == std::optional<std::size_t>(0));
    CHECK(check.worst_slack == -1);
}

TEST_CASE_TEMPLATE("fits data generated by a utility", S, Rational, double) {
    Sampler<S> sampler(61);
    for (std::size_t n : {2u, 3u, 5u}) {
        const OutcomeSpace space(test::labels(n));
        for (int trial = 0; trial < 10; ++trial) {
            const auto u = sampler.non_constant_utility(space);
            const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
            const S range = *hi - *lo;
            std::vector<PreferencePair<S>> pairs;
            while (pairs.size() < 15) {
                auto p = sampler.lottery(space);
                auto q = sampler.lottery(space);
                const S gap = expected_utility(p, u) - expected_utility(q, u);
                if (abs_value<S>(gap) < range / 20) continue;
                if (gap > 0) {
                    pairs.push_back({std::move(p), std::move(q)});
                } else {
                    pairs.push_back({std::move(q), std::move(p)});
                }
            }
            const PrefDataset<S> d(space, pairs);
            REQUIRE(validate_dataset(d).consistent);
            const auto m = fit_reward_model(d);
            CHECK(model_fits_data(m, d, ScalarTraits<S>::from_double(kDefaultFitMargin)).passed);
            auto o = m.oracle();
            for (const auto& pr : d.pairs) CHECK(compare(o, pr.winner, pr.loser) == Comparison::prefer_first);
        }
    }
}
