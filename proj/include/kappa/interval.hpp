#pragma once

// Certified rational enclosures of the one transcendental this project
// needs: the natural log. Everything is computed in exact rational
// arithmetic; the truncation error of the atanh series is bounded by its
// geometric tail, so [lo, hi] always brackets the true value.

#include <cstddef>
#include <stdexcept>

#include "kappa/rational.hpp"

namespace kappa {

struct RatInterval {
    Rational lo, hi;

    Rational width() const { return hi - lo; }

    RatInterval operator-() const { return {-hi, -lo}; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }

    // scale by an exact rational (sign-aware)
    friend RatInterval operator*(const Rational& c, const RatInterval& iv) {
        if (c.sign() >= 0) return {c * iv.lo, c * iv.hi};
        return {c * iv.hi, c * iv.lo};
    }
};

namespace detail {

// atanh(t) = sum t^{2j+1}/(2j+1) for |t| < 1; tail after J terms is at most
// t^{2J+1} / ((2J+1)(1-t^2)).
inline RatInterval atanh_enclosure(const Rational& t, const Rational& eps) {
    if (t.sign() < 0) return -atanh_enclosure(-t, eps);
    Rational t2 = t * t;
    if (t2 >= 1) throw std::invalid_argument("atanh_enclosure: |t| must be < 1");
    Rational one_minus = Rational(1) - t2;
    Rational sum = 0;
    Rational power = t;  // t^{2j+1}
    for (long j = 0;; ++j) {
        Rational tail = power / (Rational(2 * j + 1) * one_minus);
        if (tail <= eps) return {sum, sum + tail};
        sum += power / Rational(2 * j + 1);
        power *= t2;
    }
}

inline Rational pow10_inverse(std::size_t digits) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    return Rational(BigInt(1), p);
}

}  // namespace detail

// Enclosure of log(x) for rational x > 0 with width <= 10^-digits.
// Argument reduction x = 2^e * m with m in [3/4, 3/2] keeps the series
// parameter |t| <= 1/5; log 2 itself is 2*atanh(1/3).
inline RatInterval log_enclosure(const Rational& x, std::size_t digits = 50) {
    if (x.sign() <= 0) throw std::invalid_argument("log_enclosure: argument must be positive");
    if (x == Rational(1)) return {0, 0};

    Rational m = x;
    long e = 0;
    const Rational three_halves(3, 2), three_quarters(3, 4), half(1, 2);
    while (m > three_halves) {
        m *= half;
        ++e;
    }
    while (m < three_quarters) {
        m *= 2;
        --e;
    }

    Rational eps = detail::pow10_inverse(digits + 2) / Rational(4 * (std::abs(e) + 1));
    RatInterval log_m = Rational(2) * detail::atanh_enclosure((m - 1) / (m + 1), eps);
    if (e == 0) return log_m;
    RatInterval ln2 = Rational(2) * detail::atanh_enclosure(Rational(1, 3), eps);
    return log_m + Rational(e) * ln2;
}

}  // namespace kappa
