#pragma once

// Certified enclosures of the limit constants A1, A2, B1, B2 and of the two
// limits of n^2 kappa(A_n) (even/odd n), plus the convergence tabulation.
//
// Series conventions: the d in {0,1} terms of A1/A2 are the recursion
// weights (4 on the even side, 0 on the odd side); see statistics.hpp.
// Tail bounds come from the uniform n^2-bounds: every term of an A-series
// is at most 4*C_kappa/d^2 and every B-term at most (16/9)/d^2, so the tail
// past D is below C/D (the full-series majorant; no parity splitting).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kappa/statistics.hpp"

namespace kappa {

struct Enclosure {
    Rational lo, hi;            // lo = exact partial sum, hi = lo + tail bound
    std::size_t terms_used = 0; // D
    Rational tail_constant;     // C with tail <= C/D

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& inner) const { return lo <= inner.lo && inner.hi <= hi; }
};

struct PartialConstants {
    Rational a1, a2, b1, b2;
};

struct ConstantEnclosures {
    Enclosure a1, a2, b1, b2;
};

struct Theorem1Enclosures {
    Enclosure even_limit;  // A1 - 2*B1, the limit of n^2 kappa(A_n) along even n
    Enclosure odd_limit;   // A2 - 2*B2, along odd n
};

inline PartialConstants partial_constants(const StatEngine& stats, std::size_t D) {
    if (D > stats.truncation()) throw std::invalid_argument("partial_constants: D exceeds truncation");
    PartialConstants p{0, 0, 0, 0};
    for (std::size_t d = 0; d <= D; ++d) {
        if (d % 2 == 0) {
            p.a1 += stats.kappa_odd_weight(d);
            p.a2 += stats.kappa_even_weight(d);
            p.b2 += stats.q_split(d);
        } else {
            p.a1 += stats.kappa_even_weight(d);
            p.a2 += stats.kappa_odd_weight(d);
            p.b1 += stats.q_split(d);
        }
    }
    return p;
}

inline ConstantEnclosures enclose_constants(const StatEngine& stats, std::size_t D) {
    if (D < 2) throw std::invalid_argument("enclose_constants: D must be >= 2");
    PartialConstants p = partial_constants(stats, D);
    Rational ca = 4 * stats.c_kappa();
    Rational cb = stats.c2();
    Rational d(static_cast<long>(D));
    auto enc = [&](const Rational& partial, const Rational& c) {
        return Enclosure{partial, partial + c / d, D, c};
    };
    return {enc(p.a1, ca), enc(p.a2, ca), enc(p.b1, cb), enc(p.b2, cb)};
}

inline Theorem1Enclosures theorem1_constants(const StatEngine& stats, std::size_t D) {
    ConstantEnclosures c = enclose_constants(stats, D);
    Rational tail = 4 * stats.c_kappa() + 2 * stats.c2();
    auto combine = [&](const Enclosure& a, const Enclosure& b) {
        return Enclosure{a.lo - 2 * b.hi, a.hi - 2 * b.lo, D, tail};
    };
    return {combine(c.a1, c.b1), combine(c.a2, c.b2)};
}

// Coarse finite-n allowance from the lower-bound argument with k = floor(3n/4):
// delta(n) = (4*C_kappa + 2*(16/9)) / ceil(n/4). Deliberately loose; recorded
// in output metadata, never claimed sharp.
inline Rational finite_n_allowance(const StatEngine& stats, std::size_t n) {
    if (n < 1) throw std::invalid_argument("finite_n_allowance: n must be >= 1");
    return (4 * stats.c_kappa() + 2 * stats.c2()) / Rational(static_cast<long>((n + 3) / 4));
}

struct ConvergenceRow {
    std::size_t n = 0;
    bool even = true;
    Rational n2_kappa_even, n2_q_split, n2_kappa_alt;
    Rational mid_distance;     // |n^2 kappa(A_n) - mid of the matching-parity enclosure|
    Rational delta_allowance;  // the coarse finite-n allowance delta(n), for context
};

inline std::vector<ConvergenceRow> convergence_table(const StatEngine& stats, std::size_t from,
                                                     std::size_t to) {
    if (to > stats.truncation()) throw std::invalid_argument("convergence_table: range exceeds truncation");
    Theorem1Enclosures t1 = theorem1_constants(stats, stats.truncation());
    std::vector<ConvergenceRow> rows;
    for (std::size_t n = from; n <= to; ++n) {
        ConvergenceRow row;
        row.n = n;
        row.even = n % 2 == 0;
        Rational n2(BigInt(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n));
        row.n2_kappa_even = n2 * stats.kappa_even(n);
        row.n2_q_split = n2 * stats.q_split(n);
        row.n2_kappa_alt = n2 * stats.kappa_alt(n);
        const Enclosure& e = row.even ? t1.even_limit : t1.odd_limit;
        row.mid_distance = (row.n2_kappa_alt - e.mid()).abs();
        row.delta_allowance = finite_n_allowance(stats, n);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace kappa
