#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/monte_carlo.hpp"
#include "kappa/power_series.hpp"

using kappa::PowerSeries;
using kappa::Rational;
using kappa::SparseFactor;

namespace {

PowerSeries random_series(kappa::SplitMix64& rng, std::size_t order, bool zero_constant = false) {
    PowerSeries s(order);
    for (std::size_t i = zero_constant ? 1 : 0; i <= order; ++i) {
        long num = static_cast<long>(rng.next_below(9)) - 4;
        long den = static_cast<long>(rng.next_below(4)) + 1;
        s.set_coeff(i, Rational(num, den));
    }
    return s;
}

}  // namespace

TEST_CASE("difference of squares") {
    PowerSeries a(2), b(2);
    a.set_coeff(0, 1);
    a.set_coeff(1, 1);
    b.set_coeff(0, 1);
    b.set_coeff(1, -1);
    PowerSeries p = a * b;
    CHECK(p.coeff(0) == Rational(1));
    CHECK(p.coeff(1) == Rational(0));
    CHECK(p.coeff(2) == Rational(-1));
}

TEST_CASE("multiplicative identity") {
    kappa::SplitMix64 rng(11);
    PowerSeries a = random_series(rng, 7);
    CHECK(a * PowerSeries::one(7) == a);
}

TEST_CASE("coefficient access") {
    PowerSeries p(3);
    p.set_coeff(0, 1);
    p.set_coeff(1, 2);
    CHECK(p.coeff(1) == Rational(2));
    CHECK(p.coeff(3) == Rational(0));
}

TEST_CASE("square of the exponential series at order 4") {
    // e^x truncated; coefficient of x^4 in (e^x)^2 computed two ways
    PowerSeries e(4);
    Rational fact = 1;
    for (std::size_t i = 0; i <= 4; ++i) {
        if (i > 0) fact *= Rational(static_cast<long>(i));
        e.set_coeff(i, Rational(1) / fact);
    }
    // independent convolution
    Rational direct = 0;
    for (std::size_t i = 0; i <= 4; ++i) direct += e.coeff(i) * e.coeff(4 - i);
    CHECK(direct == Rational(2, 3));
    CHECK((e * e).coeff(4) == Rational(2, 3));
}

TEST_CASE("truncation discards high terms") {
    PowerSeries x(2);
    x.set_coeff(1, 1);
    PowerSeries x2 = x * x;  // x^2
    CHECK(x2.coeff(2) == Rational(1));
    PowerSeries x3 = x2 * x;  // x^3 truncated away at N=2
    CHECK(x3 == PowerSeries(2));
}

TEST_CASE("usage errors") {
    PowerSeries a(3), b(4);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a.coeff(4), std::out_of_range);
    PowerSeries c = PowerSeries::one(3);
    CHECK_THROWS_AS(kappa::exp(c), std::invalid_argument);  // nonzero constant term
    CHECK_THROWS_AS(kappa::sparse_product({{0, Rational(1)}}, 3), std::invalid_argument);
}

TEST_CASE("sparse product examples") {
    SUBCASE("two factors by hand") {
        PowerSeries p = kappa::sparse_product({{1, Rational(1)}, {3, Rational(1, 9)}}, 4);
        CHECK(p.coeff(0) == Rational(1));
        CHECK(p.coeff(1) == Rational(1));
        CHECK(p.coeff(2) == Rational(0));
        CHECK(p.coeff(3) == Rational(1, 9));
        CHECK(p.coeff(4) == Rational(1, 9));
    }
    SUBCASE("empty product") {
        CHECK(kappa::sparse_product({}, 5) == PowerSeries::one(5));
    }
    SUBCASE("odd-d factors reproduce Q(S_4) at x^4") {
        std::vector<SparseFactor> f;
        for (long d = 1; d <= 15; d += 2) f.push_back({static_cast<std::size_t>(d), Rational(1, d * d)});
        PowerSeries p = kappa::sparse_product(f, 15);
        CHECK(p.coeff(0) == Rational(1));
        CHECK(p.coeff(4) == Rational(1, 9));
    }
    SUBCASE("degrees beyond the order are skipped") {
        PowerSeries p = kappa::sparse_product({{9, Rational(1)}}, 4);
        CHECK(p == PowerSeries::one(4));
    }
}

TEST_CASE("exp examples") {
    SUBCASE("exp(0) = 1") {
        CHECK(kappa::exp(PowerSeries(5)) == PowerSeries::one(5));
    }
    SUBCASE("exp(x) through order 3") {
        PowerSeries f = PowerSeries::monomial(1, 1, 3);
        PowerSeries g = kappa::exp(f);
        CHECK(g.coeff(0) == Rational(1));
        CHECK(g.coeff(1) == Rational(1));
        CHECK(g.coeff(2) == Rational(1, 2));
        CHECK(g.coeff(3) == Rational(1, 6));
    }
    SUBCASE("exp(sum x^d/d) = 1/(1-x): every coefficient 1") {
        const std::size_t n = 24;
        PowerSeries f(n);
        for (std::size_t d = 1; d <= n; ++d) f.set_coeff(d, Rational(1, static_cast<long>(d)));
        PowerSeries g = kappa::exp(f);
        for (std::size_t i = 0; i <= n; ++i) CHECK(g.coeff(i) == Rational(1));
    }
}

TEST_CASE("ring properties on random small series") {
    kappa::SplitMix64 rng(20250101);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t order = 4 + rng.next_below(13);  // N <= 16
        PowerSeries a = random_series(rng, order);
        PowerSeries b = random_series(rng, order);
        PowerSeries c = random_series(rng, order);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("exp is a homomorphism: exp(f+g) = exp(f)*exp(g)") {
    kappa::SplitMix64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t order = 4 + rng.next_below(11);
        PowerSeries f = random_series(rng, order, /*zero_constant=*/true);
        PowerSeries g = random_series(rng, order, /*zero_constant=*/true);
        CHECK(kappa::exp(f + g) == kappa::exp(f) * kappa::exp(g));
    }
}

TEST_CASE("sparse product equals the fold of full multiplications") {
    kappa::SplitMix64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t order = 6 + rng.next_below(9);
        std::vector<SparseFactor> factors;
        std::size_t count = 1 + rng.next_below(6);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t d = 1 + rng.next_below(order + 3);  // some exceed the order
            Rational w(static_cast<long>(rng.next_below(9)) - 4, static_cast<long>(rng.next_below(5)) + 1);
            factors.push_back({d, w});
        }
        PowerSeries folded = PowerSeries::one(order);
        for (const auto& f : factors) {
            PowerSeries binom = PowerSeries::one(order);
            if (f.degree <= order) binom.set_coeff(f.degree, f.weight);
            folded = folded * binom;
        }
        CHECK(kappa::sparse_product(factors, order) == folded);
    }
}
