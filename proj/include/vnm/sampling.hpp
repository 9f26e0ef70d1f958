#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "vnm/preference.hpp"

namespace vnm {

// Seeded generator for sample lotteries, weights and utilities. Lotteries
// are normalized vectors of random rationals k/d with d <= 1000; mixing
// weights come from the same family with k >= 1. In float mode the exact
// values are rounded to double.
template <Scalar S>
class Sampler {
public:
    static constexpr long kMaxDenominator = 1000;

    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    Rational random_unit_rational(bool allow_zero = true) {
        const long d = uniform(1, kMaxDenominator);
        const long k = uniform(allow_zero ? 0 : 1, d);
        Rational v(k, d);
        v.canonicalize();
        return v;
    }

    Lottery<S> lottery(const OutcomeSpace& space) {
        for (;;) {
            std::vector<Rational> w(space.size());
            Rational total(0);
            for (auto& x : w) {
                x = random_unit_rational();
                total += x;
            }
            if (total == 0) continue;
            std::vector<S> probs(space.size());
            for (std::size_t i = 0; i < w.size(); ++i) probs[i] = convert(Rational(w[i] / total));
            return Lottery<S>(space, std::move(probs));
        }
    }

    // A weight in (0, 1].
    S alpha() { return convert(random_unit_rational(false)); }

    // A weight in (0, 1).
    S open_alpha() {
        for (;;) {
            Rational a = random_unit_rational(false);
            if (a < 1) return convert(a);
        }
    }

    // Values k/d with |k| <= 1000, d <= 1000.
    UtilityFunction<S> utility(const OutcomeSpace& space) {
        std::vector<S> values(space.size());
        for (auto& v : values) {
            Rational x(uniform(-kMaxDenominator, kMaxDenominator), uniform(1, kMaxDenominator));
            x.canonicalize();
            v = convert(x);
        }
        return UtilityFunction<S>(space, std::move(values));
    }

    UtilityFunction<S> non_constant_utility(const OutcomeSpace& space) {
        for (;;) {
            auto u = utility(space);
            if (!u.is_constant()) return u;
        }
    }

    LotteryTriple<S> triple(const OutcomeSpace& space) { return {lottery(space), lottery(space), lottery(space)}; }

    MixtureTuple<S> mixture_tuple(const OutcomeSpace& space) {
        auto p = lottery(space);
        auto q = lottery(space);
        auto r = lottery(space);
        return {std::move(p), std::move(q), std::move(r), alpha()};
    }

    std::vector<LotteryTriple<S>> triples(const OutcomeSpace& space, std::size_t n) {
        std::vector<LotteryTriple<S>> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(triple(space));
        return out;
    }

    std::vector<MixtureTuple<S>> mixture_tuples(const OutcomeSpace& space, std::size_t n) {
        std::vector<MixtureTuple<S>> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(mixture_tuple(space));
        return out;
    }

    std::vector<std::pair<Lottery<S>, Lottery<S>>> pairs(const OutcomeSpace& space, std::size_t n) {
        std::vector<std::pair<Lottery<S>, Lottery<S>>> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto p = lottery(space);
            out.emplace_back(std::move(p), lottery(space));
        }
        return out;
    }

    // A lottery with the same expected utility as p under u (exactly so in
    // rational mode): a mixture of the best and worst point masses, blended
    // with p by a random weight.
    Lottery<S> indifferent_partner(const UtilityFunction<S>& u, const Lottery<S>& p) {
        if (u.is_constant()) return lottery(u.space());
        const auto best = Lottery<S>::degenerate(u.space(), u.argmax());
        const auto worst = Lottery<S>::degenerate(u.space(), u.argmin());
        const S top = u[u.argmax()];
        const S bottom = u[u.argmin()];
        S a = (expected_utility(p, u) - bottom) / (top - bottom);
        if (a < 0) a = 0;
        if (a > 1) a = 1;
        return mix(mix(best, worst, a), p, open_alpha());
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    static S convert(const Rational& x) {
        if constexpr (std::same_as<S, Rational>) {
            return x;
        } else {
            return x.get_d();
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace vnm
