#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vnm {

using Rational = mpq_class;

enum class ArithmeticMode { rational, floating };

// Per-mode constants and conversions. Rational mode is exact: every tolerance
// is zero. Float mode uses the fixed thresholds below.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr ArithmeticMode mode = ArithmeticMode::rational;
    static constexpr const char* name = "rational";

    static Rational sum_tolerance() { return Rational(0); }
    static Rational support_threshold() { return Rational(0); }
    static Rational equality_tolerance() { return Rational(0); }

    static Rational from_double(double v) { return Rational(v); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static bool is_finite(const Rational&) { return true; }
    static std::string to_string(const Rational& v) { return v.get_str(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr ArithmeticMode mode = ArithmeticMode::floating;
    static constexpr const char* name = "float";

    static double sum_tolerance() { return 1e-12; }
    static double support_threshold() { return 1e-15; }
    static double equality_tolerance() { return 1e-12; }

    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    static bool is_finite(double v) { return std::isfinite(v); }
    static std::string to_string(double v);
};

template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
S abs_value(const S& v) {
    if constexpr (std::same_as<S, Rational>) {
        return abs(v);
    } else {
        return std::fabs(v);
    }
}

template <Scalar S>
int sign_of(const S& v) {
    if constexpr (std::same_as<S, Rational>) {
        return sgn(v);
    } else {
        return (v > 0) - (v < 0);
    }
}

// Parses "num/den", an integer, or a decimal literal ("0.35", "-1.5e-3")
// into an exact rational. Throws ParseError on malformed text.
Rational parse_rational(std::string_view text);

// Same grammar, nearest double (decimal literals go through strtod).
double parse_double(std::string_view text);

template <Scalar S>
S parse_scalar(std::string_view text) {
    if constexpr (std::same_as<S, Rational>) {
        return parse_rational(text);
    } else {
        return parse_double(text);
    }
}

}  // namespace vnm
