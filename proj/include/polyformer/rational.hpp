#ifndef POLYFORMER_RATIONAL_HPP
#define POLYFORMER_RATIONAL_HPP

#include "polyformer/indices.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polyformer {

// Exact rational on checked 64-bit integers, always stored reduced with a
// positive denominator. Coefficient arithmetic in the symmetric-basis
// decomposition must be exact; overflow throws instead of wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::int64_t g = std::gcd(a.den, b.den);
        const std::int64_t bd = b.den / g;
        return Rational(checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g)),
                        checked_mul(a.den, bd));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num, b.den); }
    friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        return Rational(checked_mul(a.num / g1, b.num / g2),
                        checked_mul(a.den / g2, b.den / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return a * Rational(b.den, b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace polyformer

#endif
