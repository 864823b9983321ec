#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ops {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: "num/den" with den omitted when it equals 1.
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

// Accepts "a", "a/b", and plain decimals like "-0.25".
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string s(text);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
    BigInt den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    bool neg = false;
    if (digits[0] == '+' || digits[0] == '-') {
        neg = digits[0] == '-';
        digits.erase(digits.begin());
    }
    // Strip leading zeros so the BigInt parser never sees an octal-looking
    // literal; validate the rest by hand.
    while (digits.size() > 1 && digits[0] == '0') digits.erase(digits.begin());
    if (digits.empty()) throw std::invalid_argument("bad rational literal: " + s);
    for (char c : digits)
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + s);
    BigInt num(digits);
    if (neg) num = -num;
    return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact: every finite double is a binary rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    BigInt two = 2;
    if (exp > 0) {
        BigInt f = 1;
        for (int i = 0; i < exp; ++i) f *= two;
        r *= Rational(f);
    } else if (exp < 0) {
        BigInt f = 1;
        for (int i = 0; i < -exp; ++i) f *= two;
        r /= Rational(f);
    }
    return r;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
    Rational acc = 1, b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline uint64_t integer_sqrt(uint64_t v) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    auto sq = [](uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
    while (r > 0 && sq(r) > v) --r;
    while (sq(r + 1) <= v) ++r;
    return r;
}

}  // namespace ops
