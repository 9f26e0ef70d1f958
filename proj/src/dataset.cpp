#include "vnm/dataset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace vnm {

namespace {

// Maps each lottery to a node id; rational lotteries compare exactly,
// float lotteries within the componentwise equality tolerance.
template <Scalar S>
class LotteryIndex {
public:
    std::size_t id(const Lottery<S>& l) {
        if constexpr (std::same_as<S, Rational>) {
            auto [it, inserted] = exact_.emplace(l.probs(), exact_.size());
            return it->second;
        } else {
            for (std::size_t i = 0; i < seen_.size(); ++i) {
                if (seen_[i].approx_equal(l)) return i;
            }
            seen_.push_back(l);
            return seen_.size() - 1;
        }
    }

    std::size_t size() const {
        if constexpr (std::same_as<S, Rational>) {
            return exact_.size();
        } else {
            return seen_.size();
        }
    }

private:
    std::map<std::vector<Rational>, std::size_t> exact_;
    std::vector<Lottery<S>> seen_;
};

struct Edge {
    std::size_t to;
    std::size_t pair_index;
};

std::vector<std::vector<std::size_t>> find_cycles(const std::vector<std::vector<Edge>>& adjacency) {
    enum class Color { white, gray, black };
    std::vector<Color> color(adjacency.size(), Color::white);
    std::vector<std::vector<std::size_t>> cycles;

    struct Frame {
        std::size_t node;
        std::size_t next = 0;
    };
    for (std::size_t root = 0; root < adjacency.size(); ++root) {
        if (color[root] != Color::white) continue;
        std::vector<Frame> stack{{root}};
        std::vector<std::size_t> path_edges;  // path_edges[k] leads from stack[k] to stack[k + 1]
        color[root] = Color::gray;
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next == adjacency[top.node].size()) {
                color[top.node] = Color::black;
                stack.pop_back();
                if (!path_edges.empty()) path_edges.pop_back();
                continue;
            }
            const Edge e = adjacency[top.node][top.next++];
            if (color[e.to] == Color::white) {
                color[e.to] = Color::gray;
                path_edges.push_back(e.pair_index);
                stack.push_back({e.to});
            } else if (color[e.to] == Color::gray) {
                std::size_t k = 0;
                while (stack[k].node != e.to) ++k;
                std::vector<std::size_t> cycle(path_edges.begin() + static_cast<std::ptrdiff_t>(k), path_edges.end());
                cycle.push_back(e.pair_index);
                std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                cycles.push_back(std::move(cycle));
            }
        }
    }
    return cycles;
}

}  // namespace

template <Scalar S>
ValidationReport validate_dataset(const PrefDataset<S>& d) {
    ValidationReport report;
    report.pair_count = d.pairs.size();
    report.nonempty = !d.pairs.empty();

    LotteryIndex<S> index;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(d.pairs.size());
    for (const auto& pair : d.pairs) {
        const std::size_t w = index.id(pair.winner);
        const std::size_t l = index.id(pair.loser);
        edges.emplace_back(w, l);
    }
    report.distinct_lotteries = index.size();

    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
    for (std::size_t i = 0; i < edges.size(); ++i) by_edge[edges[i]].push_back(i);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [w, l] = edges[i];
        if (w == l) {
            report.direct_contradictions.emplace_back(i, i);
            continue;
        }
        auto it = by_edge.find({l, w});
        if (it == by_edge.end()) continue;
        for (std::size_t j : it->second) {
            if (i < j) report.direct_contradictions.emplace_back(i, j);
        }
    }
    std::sort(report.direct_contradictions.begin(), report.direct_contradictions.end());

    std::vector<std::vector<Edge>> adjacency(index.size());
    for (std::size_t i = 0; i < edges.size(); ++i) adjacency[edges[i].first].push_back({edges[i].second, i});
    report.cycles = find_cycles(adjacency);

    report.consistent = report.nonempty && report.direct_contradictions.empty() && report.cycles.empty();
    return report;
}

template <Scalar S>
FitCheck<S> model_fits_data(const RewardModel<S>& m, const PrefDataset<S>& d, const S& margin) {
    FitCheck<S> check{true, std::nullopt, S(0)};
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        const S slack = expected_utility(d.pairs[i].winner, m.utility) -
                        expected_utility(d.pairs[i].loser, m.utility) - margin;
        if (i == 0 || slack < check.worst_slack) check.worst_slack = slack;
        if (slack < 0 && check.passed) {
            check.passed = false;
            check.witness = i;
        }
    }
    return check;
}

template <Scalar S>
RewardModel<S> fit_reward_model(const PrefDataset<S>& d, double margin, int max_epochs) {
    const std::size_t n = d.space.size();
    if (d.pairs.empty()) {
        return {UtilityFunction<S>::constant(d.space, S(0))};
    }
    if (!(margin > 0)) {
        throw Error(ErrorCode::precondition_violated, "fit margin must be > 0");
    }
    const auto validation = validate_dataset(d);
    if (!validation.direct_contradictions.empty() || !validation.cycles.empty()) {
        throw Error(ErrorCode::precondition_violated, "dataset has contradictions or cycles; validate it first");
    }

    std::vector<std::vector<double>> diffs(d.pairs.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            diffs[i][k] = ScalarTraits<S>::to_double(d.pairs[i].winner[k]) - ScalarTraits<S>::to_double(d.pairs[i].loser[k]);
        }
    }
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    };

    const double target = 2 * margin;
    const S margin_s = ScalarTraits<S>::from_double(margin);
    std::vector<double> u(n, 0.0);
    int epoch = 0;
    for (; epoch < max_epochs; ++epoch) {
        for (const auto& diff : diffs) {
            const double s = dot(diff, u);
            if (s >= margin) continue;
            const double norm2 = dot(diff, diff);
            const double step = (target - s) / norm2;
            for (std::size_t k = 0; k < n; ++k) u[k] = std::clamp(u[k] + step * diff[k], 0.0, 1.0);
        }
        if (std::all_of(diffs.begin(), diffs.end(), [&](const auto& diff) { return dot(diff, u) >= margin; })) {
            const auto [lo_it, hi_it] = std::minmax_element(u.begin(), u.end());
            const double lo = *lo_it;
            const double range = *hi_it - lo;
            std::vector<S> values(n);
            for (std::size_t k = 0; k < n; ++k) {
                values[k] = ScalarTraits<S>::from_double(range > 0 ? (u[k] - lo) / range : 0.0);
            }
            RewardModel<S> model{UtilityFunction<S>(d.space, std::move(values))};
            if (model_fits_data(model, d, margin_s).passed) return model;
        }
    }

    std::vector<std::size_t> order(diffs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dot(diffs[a], u) < dot(diffs[b], u); });
    order.resize(std::min<std::size_t>(order.size(), 5));
    throw InfeasibleFit(epoch, std::move(order));
}

#define VNM_INSTANTIATE(S)                                                                         \
    template ValidationReport validate_dataset<S>(const PrefDataset<S>&);                          \
    template FitCheck<S> model_fits_data<S>(const RewardModel<S>&, const PrefDataset<S>&, const S&); \
    template RewardModel<S> fit_reward_model<S>(const PrefDataset<S>&, double, int);

VNM_INSTANTIATE(Rational)
VNM_INSTANTIATE(double)

#undef VNM_INSTANTIATE

}  // namespace vnm
