#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/bounds.hpp"

using kappa::BoundReport;
using kappa::BoundVerifier;
using kappa::Rational;
using kappa::StatEngine;
using Direction = kappa::BoundVerifier::Direction;

namespace {

const StatEngine& engine() {
    static StatEngine e(40);
    return e;
}

const BoundVerifier& verifier() {
    static BoundVerifier v(engine());
    return v;
}

}  // namespace

TEST_CASE("BoundReport bookkeeping") {
    BoundReport r{"demo"};
    r.record(3, 1, Rational(1, 2), Rational(2, 3));
    CHECK(r.holds);
    CHECK(*r.worst_margin == Rational(1, 6));
    r.record(4, 1, Rational(5, 6), Rational(2, 3));  // violated cell
    CHECK_FALSE(r.holds);
    CHECK(*r.worst_margin == Rational(-1, 6));
    REQUIRE(r.counterexamples.size() == 1);
    CHECK(r.counterexamples[0].n == 4);
    CHECK(r.counterexamples[0].lhs == Rational(5, 6));
    CHECK(r.counterexamples[0].rhs == Rational(2, 3));

    BoundReport other{"demo"};
    other.record(5, 2, Rational(0), Rational(1));
    other.merge(r);
    CHECK_FALSE(other.holds);
    CHECK(other.range_checked.size() == 3);
    CHECK(*other.worst_margin == Rational(-1, 6));
}

TEST_CASE("even-parity recursion, upper direction") {
    CHECK(verifier().prop_even_upper(10, 6).holds);
    CHECK(verifier().prop_even_upper(4, 2).holds);
    BoundReport sweep = verifier().prop_even_upper_sweep(25);
    CHECK(sweep.holds);
    CHECK(sweep.counterexamples.empty());
    // the bound is exactly tight at three small cells, so the sweep margin is 0
    CHECK(*sweep.worst_margin == Rational(0));
    CHECK(*verifier().prop_even_upper(2, 2).worst_margin == Rational(0));
    CHECK(*verifier().prop_even_upper(3, 2).worst_margin == Rational(0));
    CHECK(*verifier().prop_even_upper(3, 3).worst_margin == Rational(0));
    CHECK(*verifier().prop_even_upper(4, 3).worst_margin == Rational(1, 24));
    CHECK_THROWS_AS(verifier().prop_even_upper(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(verifier().prop_even_upper(61, 5), std::invalid_argument);
}

TEST_CASE("even-parity recursion, lower direction") {
    CHECK(verifier().prop_even_lower(10, 6).holds);
    CHECK(verifier().prop_even_lower(9, 5).holds);
    BoundReport sweep = verifier().prop_even_lower_sweep(30);
    CHECK(sweep.holds);
    CHECK(*sweep.worst_margin >= Rational(0));
    CHECK_THROWS_AS(verifier().prop_even_lower(10, 5), std::invalid_argument);  // k <= n/2
}

TEST_CASE("lower bound is tightest just past n/2") {
    // the sum keeps more terms for small k, so the margin grows with k and
    // the bound is sharpest at k = n/2 + 1 (observable trend, not a theorem)
    Rational prev = *verifier().prop_even_lower(20, 11).worst_margin;
    for (std::size_t k = 12; k <= 20; ++k) {
        Rational cur = *verifier().prop_even_lower(20, k).worst_margin;
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("split-type recursion, both directions") {
    CHECK(verifier().prop_q(12, 7, Direction::lower).holds);
    CHECK(verifier().prop_q(12, 3, Direction::upper).holds);
    CHECK(verifier().prop_q_sweep(30, Direction::upper).holds);
    CHECK(verifier().prop_q_sweep(30, Direction::lower).holds);
    CHECK_THROWS_AS(verifier().prop_q(12, 6, Direction::lower), std::invalid_argument);
    CHECK_THROWS_AS(verifier().prop_q(12, 1, Direction::upper), std::invalid_argument);
}

TEST_CASE("uniform n^2 bounds up to 40") {
    BoundReport q = verifier().q_uniform_bound(40);
    CHECK(q.holds);
    // C_2 = 16 Q(S_4) makes the n = 4 cell an exact equality
    CHECK(*q.worst_margin == Rational(0));

    BoundReport kap = verifier().kappa_uniform_bound(40);
    CHECK(kap.holds);
    CHECK(kap.range_checked.front().first == 2);

    CHECK(verifier().parity_uniform_bounds(40).holds);

    BoundReport all = verifier().uniform_bounds(40);
    CHECK(all.holds);
    CHECK(all.range_checked.size() == 40 + 2 * 40 + 39);
}

TEST_CASE("n^2 kappa(S_n) peaks exactly at n = 13") {
    // the defining property of C_kappa: equality at n = 13, strict below elsewhere
    Rational ck = engine().c_kappa();
    CHECK(Rational(169) * engine().kappa_sym(13) == ck);
    for (std::size_t n = 2; n <= 40; ++n) {
        Rational v = Rational(static_cast<long>(n * n)) * engine().kappa_sym(n);
        if (n == 13) CHECK(v == ck);
        else CHECK(v < ck);
    }
}

TEST_CASE("s_15 monotone run") {
    BoundReport r = verifier().s15_monotone(39);
    CHECK(r.holds);
    CHECK(r.range_checked.size() == 26);  // n = 14..39
}

TEST_CASE("s_15 monotone run extends through the full table") {
    StatEngine wide(300);
    BoundVerifier v(wide);
    BoundReport r = v.s15_monotone(300);  // 14..60 plus the 61..300 extension
    CHECK(r.holds);
    CHECK(r.range_checked.size() == 287);
}

TEST_CASE("s15 value bound uses enumeration route at n=60") {
    StatEngine wide(64);
    BoundVerifier v(wide);
    BoundReport r = v.s15_at_60();
    CHECK(r.holds);
    CHECK(*r.worst_margin > Rational(0));
    CHECK(*r.worst_margin < *Rational::parse("0.00001"));  // the printed 0.19076 is tight
}

TEST_CASE("tail-sum lemma") {
    BoundVerifier v(engine());
    CHECK(v.tail_sum_lemma(300, 15).holds);
    SUBCASE("empty summation range holds trivially") {
        BoundReport r = v.tail_sum_lemma(31, 15);
        CHECK(r.holds);
        REQUIRE(r.range_checked.size() == 1);
        CHECK(*r.worst_margin > Rational(0));  // lhs is the empty sum, rhs positive
    }
    SUBCASE("hypothesis guard") {
        CHECK_THROWS_AS(v.tail_sum_lemma(30, 15), std::invalid_argument);
        CHECK_THROWS_AS(v.tail_sum_lemma(10, 5), std::invalid_argument);
    }
    SUBCASE("sweep") {
        BoundReport r = v.tail_sum_sweep(150);
        CHECK(r.holds);
        CHECK(*r.worst_margin > Rational(0));
    }
}

TEST_CASE("tail-sum lemma left side matches a direct loop") {
    // independent re-computation of a few cells
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{40, 7}, {101, 13}, {300, 15}}) {
        Rational direct = 0;
        for (std::size_t l = (n + 1) / 2; l <= n - k - 1; ++l) {
            Rational term(kappa::BigInt(1),
                          kappa::BigInt(static_cast<unsigned long>(l * l)) *
                              static_cast<unsigned long>((n - l) * (n - l)));
            direct += term;
        }
        Rational rhs_floor =
            Rational(1, static_cast<long>(n * n * k)) +
            2 * kappa::log_enclosure(Rational(static_cast<long>(n), static_cast<long>(k))).lo /
                Rational(static_cast<long>(n * n * n));
        CHECK(direct <= rhs_floor);
    }
}

TEST_CASE("induction certificate replay") {
    StatEngine wide(64);
    BoundVerifier v(wide);
    BoundReport r = v.replay_induction_certificate(301);
    CHECK(r.holds);
    CHECK(r.counterexamples.empty());
    CHECK(*r.worst_margin > Rational(0));
    CHECK_THROWS_AS(v.replay_induction_certificate(300), std::invalid_argument);

    // the three printed constants do sum below 16/9
    Rational total = *Rational::parse("0.03639") + *Rational::parse("1.34393") + *Rational::parse("0.31681");
    CHECK(total == *Rational::parse("1.69713"));
    CHECK(total < Rational(16, 9));
}
