#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "kappa/monte_carlo.hpp"
#include "kappa/statistics.hpp"

using kappa::McEstimate;
using kappa::McQuantity;
using kappa::Partition;
using kappa::Permutation;
using kappa::Rational;
using kappa::SplitMix64;
using kappa::StatEngine;

namespace {

const StatEngine& engine() {
    static StatEngine e(40);
    return e;
}

// independent sign oracle: parity of the inversion count
bool even_by_inversions(const Permutation& p) {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < p.degree(); ++i)
        for (std::size_t j = i + 1; j < p.degree(); ++j)
            if (p(static_cast<std::uint32_t>(i)) > p(static_cast<std::uint32_t>(j))) ++inv;
    return inv % 2 == 0;
}

// exhaustive conjugator search over all even g
bool alternating_conjugate_exhaustive(const Permutation& a, const Permutation& b) {
    std::size_t n = a.degree();
    std::vector<std::uint32_t> g(n);
    std::iota(g.begin(), g.end(), 0);
    do {
        std::vector<std::uint32_t> conj(n);
        for (std::uint32_t x = 0; x < n; ++x) conj[g[x]] = g[a(x)];
        if (conj == b.images() && Permutation(std::vector<std::uint32_t>(g)).is_even()) return true;
    } while (std::next_permutation(g.begin(), g.end()));
    return false;
}

void check_within_sigmas(const McEstimate& e, const Rational& exact, double sigmas) {
    double target = exact.to_double();
    double tol = sigmas * std::max(e.std_error, 1e-9);
    INFO(e.quantity, " n=", e.n, " point=", e.point, " exact=", target, " tol=", tol);
    CHECK(std::abs(e.point - target) <= tol);
}

}  // namespace

TEST_CASE("splitmix64 is deterministic and splittable") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 w0 = SplitMix64::substream(42, 0);
    SplitMix64 w1 = SplitMix64::substream(42, 1);
    bool differs = false;
    for (int i = 0; i < 10; ++i) differs = differs || (w0.next() != w1.next());
    CHECK(differs);
}

TEST_CASE("bounded draws are in range and roughly uniform") {
    SplitMix64 rng(7);
    std::vector<std::uint64_t> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t v = rng.next_below(10);
        REQUIRE(v < 10);
        ++counts[v];
    }
    for (auto c : counts) {
        CHECK(c > 9000);
        CHECK(c < 11000);
    }
    CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("permutation basics") {
    Permutation id = Permutation::identity(4);
    CHECK(id.is_even());
    CHECK(id.cycle_type() == Partition({1, 1, 1, 1}));

    // 0->1->2->0, 3 fixed
    Permutation three({1, 2, 0, 3});
    CHECK(three.cycle_type() == Partition({3, 1}));
    CHECK(three.is_even());

    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3}), std::invalid_argument);
}

TEST_CASE("n = 1 sampling always yields the identity") {
    SplitMix64 rng(1);
    for (int i = 0; i < 50; ++i) CHECK(kappa::sample_permutation(1, rng) == Permutation::identity(1));
}

TEST_CASE("uniformity over S_3: frequency of each permutation within 5 sigma") {
    SplitMix64 rng(20240601);
    const int samples = 600000;
    std::map<std::vector<std::uint32_t>, int> counts;
    for (int i = 0; i < samples; ++i) ++counts[kappa::sample_permutation(3, rng).images()];
    REQUIRE(counts.size() == 6);
    double expect = samples / 6.0;
    double sigma = std::sqrt(samples * (1.0 / 6) * (5.0 / 6));
    for (const auto& [img, c] : counts) CHECK(std::abs(c - expect) <= 5 * sigma);
}

TEST_CASE("an n-cycle appears with frequency about 1/n") {
    const std::size_t n = 8;
    const int samples = 200000;
    SplitMix64 rng(99);
    int hits = 0;
    for (int i = 0; i < samples; ++i)
        if (kappa::sample_permutation(n, rng).cycle_type() == Partition({8})) ++hits;
    double p = 1.0 / n;
    double sigma = std::sqrt(samples * p * (1 - p));
    CHECK(std::abs(hits - samples * p) <= 5 * sigma);
}

TEST_CASE("cycle-type sign agrees with the inversion-count sign") {
    SplitMix64 rng(314159);
    for (int i = 0; i < 400; ++i) {
        std::size_t n = 1 + rng.next_below(9);
        Permutation p = kappa::sample_permutation(n, rng);
        CHECK(p.is_even() == even_by_inversions(p));
    }
}

TEST_CASE("conjugacy in A_n: examples") {
    Permutation id3 = Permutation::identity(3);
    CHECK(kappa::conjugate_in_alternating(id3, id3));

    Permutation c1({1, 2, 0});  // (0 1 2)
    Permutation c2({2, 0, 1});  // (0 2 1)
    CHECK(kappa::conjugate_in_alternating(c1, c1));
    CHECK_FALSE(kappa::conjugate_in_alternating(c1, c2));  // the two A_3 classes
    CHECK_FALSE(alternating_conjugate_exhaustive(c1, c2));

    Permutation d1({1, 0, 3, 2});  // (0 1)(2 3)
    Permutation d2({2, 3, 0, 1});  // (0 2)(1 3)
    CHECK(kappa::conjugate_in_alternating(d1, d2));  // non-split type

    Permutation odd({1, 0, 2});
    CHECK_THROWS_AS(kappa::conjugate_in_alternating(odd, odd), std::invalid_argument);
    CHECK_THROWS_AS(kappa::conjugate_in_alternating(id3, Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("canonical-conjugator decision matches exhaustive search for n <= 6") {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::vector<Permutation> evens;
        std::vector<std::uint32_t> img(n);
        std::iota(img.begin(), img.end(), 0);
        do {
            Permutation p{std::vector<std::uint32_t>(img)};
            if (p.is_even()) evens.push_back(std::move(p));
        } while (std::next_permutation(img.begin(), img.end()));

        for (const auto& a : evens) {
            for (const auto& b : evens) {
                bool fast = kappa::conjugate_in_alternating(a, b);
                if (!(a.cycle_type() == b.cycle_type())) {
                    CHECK_FALSE(fast);
                    continue;
                }
                CHECK(fast == alternating_conjugate_exhaustive(a, b));
            }
        }
    }
}

TEST_CASE("A_n conjugacy behaves as an equivalence relation on samples") {
    SplitMix64 rng(2718);
    const std::size_t n = 7;
    for (int i = 0; i < 200; ++i) {
        Permutation a = kappa::sample_even_permutation(n, rng);
        Permutation b = kappa::sample_even_permutation(n, rng);
        Permutation c = kappa::sample_even_permutation(n, rng);
        CHECK(kappa::conjugate_in_alternating(a, a));
        CHECK(kappa::conjugate_in_alternating(a, b) == kappa::conjugate_in_alternating(b, a));
        if (kappa::conjugate_in_alternating(a, b) && kappa::conjugate_in_alternating(b, c))
            CHECK(kappa::conjugate_in_alternating(a, c));
    }
}

TEST_CASE("estimates land within 4 standard errors of the exact values") {
    const std::uint64_t samples = 200000;
    const std::uint64_t seed = 1337;
    for (std::size_t n : {2u, 3u, 4u, 7u, 10u, 13u, 20u}) {
        check_within_sigmas(kappa::estimate(McQuantity::kappa_sym, n, samples, seed), engine().kappa_sym(n), 4);
        check_within_sigmas(kappa::estimate(McQuantity::kappa_even, n, samples, seed + 1), engine().kappa_even(n), 4);
        if (n >= 2)
            check_within_sigmas(kappa::estimate(McQuantity::kappa_odd, n, samples, seed + 2), engine().kappa_odd(n), 4);
        check_within_sigmas(kappa::estimate(McQuantity::q_split, n, samples, seed + 3), engine().q_split(n), 4);
        check_within_sigmas(kappa::estimate(McQuantity::kappa_alt, n, samples, seed + 4), engine().kappa_alt(n), 4);
        check_within_sigmas(kappa::estimate(McQuantity::s_below, n, samples, seed + 5, 1, 5),
                            engine().s_below(5, n), 4);
    }
}

TEST_CASE("impossible split event at n = 2 is never observed") {
    McEstimate e = kappa::estimate(McQuantity::q_split, 2, 100000, 7);
    CHECK(e.successes == 0);
    CHECK(e.point == 0.0);
}

TEST_CASE("split types land in A_n classes at the half rate") {
    McEstimate e = kappa::estimate(McQuantity::split_half_rate, 9, 20000, 271828);
    double sigma = std::sqrt(0.25 / 20000);
    CHECK(std::abs(e.point - 0.5) <= 4 * sigma);
}

TEST_CASE("estimates are reproducible for a fixed (seed, samples, workers)") {
    McEstimate a = kappa::estimate(McQuantity::kappa_alt, 8, 50000, 5, 3);
    McEstimate b = kappa::estimate(McQuantity::kappa_alt, 8, 50000, 5, 3);
    CHECK(a.successes == b.successes);
    CHECK(a.worker_successes == b.worker_successes);
    CHECK(a.worker_samples == std::vector<std::uint64_t>{16667, 16667, 16666});

    // a different worker count changes the stream split but stays accurate
    McEstimate c = kappa::estimate(McQuantity::kappa_alt, 8, 50000, 5, 4);
    check_within_sigmas(c, engine().kappa_alt(8), 4);
}

TEST_CASE("degenerate requests") {
    McEstimate e = kappa::estimate(McQuantity::kappa_sym, 3, 0, 1);
    CHECK(e.degenerate);
    CHECK(e.point == 0.0);

    // conditioning on events that cannot occur is reported, not looped on
    CHECK(kappa::estimate(McQuantity::kappa_odd, 1, 1000, 1).degenerate);
    CHECK(kappa::estimate(McQuantity::split_half_rate, 2, 1000, 1).degenerate);
    CHECK_FALSE(kappa::estimate(McQuantity::split_half_rate, 3, 100, 1).degenerate);
}
