#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "listrec/errors.hpp"

namespace listrec {

// Exact nonnegative rational. All radius/rate/threshold comparisons in the
// library go through this type; floating point never decides anything.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
        require(d != 0, errc::invalid_argument, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        reduce();
    }

    void reduce() {
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) {
        require(b.num != 0, errc::division_by_zero, "rational division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Largest integer strictly below this value.
    std::int64_t floor_strict() const {
        std::int64_t f = num / den;
        if (num % den == 0) return f - 1;
        if (num < 0) --f;
        return f;
    }

    std::int64_t floor() const {
        std::int64_t f = num / den;
        if (num % den != 0 && num < 0) --f;
        return f;
    }

    std::int64_t ceil() const {
        std::int64_t f = floor();
        return (Rat(f) == *this) ? f : f + 1;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "a", "a/b" or a plain decimal like "0.25" into an exact rational.
Rat parse_rational(const std::string& s);

}  // namespace listrec
