#include "vnm/scalar.hpp"

#include <charconv>
#include <cstdlib>

#include "vnm/errors.hpp"

namespace vnm {

namespace {

[[noreturn]] void bad_number(std::string_view text) {
    throw Error(ErrorCode::parse_error, "malformed number '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text)) bad_number(whole);
    mpz_class value(std::string(text), 10);
    return negative ? mpz_class(-value) : value;
}

// Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal(std::string_view text) {
    const std::string_view whole = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        mpz_class exp_value = parse_integer(exp_text, whole);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) bad_number(whole);
        exponent = exp_value.get_si();
    }
    std::string digits;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_number(whole);
        if (!int_part.empty() && !all_digits(int_part)) bad_number(whole);
        if (!frac_part.empty() && !all_digits(frac_part)) bad_number(whole);
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(mantissa)) bad_number(whole);
        digits = std::string(mantissa);
    }
    mpz_class numerator(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational value = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) bad_number(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) bad_number(text);
        mpz_class den(std::string(den_text), 10);
        if (den == 0) {
            throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
        }
        Rational value(num, den);
        value.canonicalize();
        return value;
    }
    return parse_decimal(text);
}

double parse_double(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        return parse_rational(text).get_d();
    }
    parse_rational(text);  // validates syntax
    std::string owned(text);
    return std::strtod(owned.c_str(), nullptr);
}

std::string ScalarTraits<double>::to_string(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace vnm
