#pragma once

// Exact conjugacy-probability statistics of S_n and A_n.
//
// Every sequence is available by two independent routes:
//   * enumeration: direct sums over integer partitions of n (the method of
//     record for n <= 60),
//   * generating_function: coefficient extraction from exact truncated
//     series (the method of record for 60 < n <= N).
//
// Quantities (probabilities, all exact rationals in [0,1]):
//   kappa_sym(n)   P(two uniform elements of S_n are conjugate)
//                    = sum over partitions of 1/z^2
//   kappa_even(n)  same, conditioned on both permutations even  (1 for n < 2)
//   kappa_odd(n)   conditioned on both odd                      (0 for n < 2)
//   q_split(n)     P(same cycle type with pairwise-distinct odd parts)
//   s_below(k,n)   P(a uniform element of S_n has all cycles of length < k)
//   kappa_alt(n)   P(two uniform elements of A_n are A_n-conjugate)
//                    = kappa_even(n) - 2*q_split(n) for n >= 2
//
// Boundary behaviour at n in {0,1}: all permutations are even, so the
// conditional probabilities degenerate to kappa_even = 1, kappa_odd = 0,
// and q_split(0) = q_split(1) = 1 falls out of the enumeration itself.
// The recursion/series weights kappa_even_weight / kappa_odd_weight are a
// different object: they carry the factor P(both even on m points)/(1/4),
// which is 4 (even side) and 0 (odd side) once m <= 1. The inequality
// sweeps and the limit series are only valid with those weights.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kappa/partitions.hpp"
#include "kappa/power_series.hpp"
#include "kappa/rational.hpp"

namespace kappa {

enum class Quantity { kappa_sym, kappa_even, kappa_odd, q_split, s_below, kappa_alt };
enum class Method { enumeration, generating_function, brute_force };

inline std::string quantity_name(Quantity q, std::size_t k = 0) {
    switch (q) {
        case Quantity::kappa_sym: return "kappa_sym";
        case Quantity::kappa_even: return "kappa_even";
        case Quantity::kappa_odd: return "kappa_odd";
        case Quantity::q_split: return "q_split";
        case Quantity::s_below: return "s_below(" + std::to_string(k) + ")";
        case Quantity::kappa_alt: return "kappa_alt";
    }
    return "?";
}

inline std::string method_name(Method m) {
    switch (m) {
        case Method::enumeration: return "enumeration";
        case Method::generating_function: return "generating_function";
        case Method::brute_force: return "brute_force";
    }
    return "?";
}

inline std::optional<Quantity> quantity_from_name(const std::string& s) {
    if (s == "kappa_sym") return Quantity::kappa_sym;
    if (s == "kappa_even") return Quantity::kappa_even;
    if (s == "kappa_odd") return Quantity::kappa_odd;
    if (s == "q_split") return Quantity::q_split;
    if (s == "s_below") return Quantity::s_below;
    if (s == "kappa_alt") return Quantity::kappa_alt;
    return std::nullopt;
}

struct ProbTable {
    Quantity quantity = Quantity::kappa_sym;
    std::size_t k = 0;  // only meaningful for s_below
    Method method = Method::enumeration;
    std::map<std::size_t, Rational> values;
    std::string label;  // display override, e.g. "n^2*kappa_alt" for scaled output

    std::string display_name() const { return label.empty() ? quantity_name(quantity, k) : label; }
};

class StatEngine {
public:
    static constexpr std::size_t kEnumerationLimit = 60;
    // p(n) passes 10^8 past this point; explicit enumeration requests stop here
    static constexpr std::size_t kEnumerationCostGuard = 100;

    explicit StatEngine(std::size_t truncation = 300) : trunc_(truncation) {
        if (trunc_ < 16) throw std::invalid_argument("StatEngine: truncation must be >= 16");
    }

    std::size_t truncation() const { return trunc_; }

    // --- method of record -------------------------------------------------

    Rational kappa_sym(std::size_t n) const { return pick(n, &StatEngine::kappa_sym_via); }

    Rational kappa_even(std::size_t n) const {
        if (n < 2) return 1;
        return pick(n, &StatEngine::kappa_even_via);
    }

    Rational kappa_odd(std::size_t n) const {
        if (n < 2) return 0;
        return pick(n, &StatEngine::kappa_odd_via);
    }

    Rational q_split(std::size_t n) const { return pick(n, &StatEngine::q_split_via); }

    Rational kappa_alt(std::size_t n) const {
        if (n < 2) return 1;
        return kappa_even(n) - 2 * q_split(n);
    }

    // Direct centralizer sum over A_n classes: each even type contributes
    // 4/z^2 (one class, centralizer order z/2), split types 2/z^2 (two
    // classes, centralizer order z). Enumeration only; independent of
    // kappa_alt's route for n > kEnumerationLimit.
    Rational kappa_alt_direct(std::size_t n) const {
        if (n > kEnumerationCostGuard)
            throw std::invalid_argument("kappa_alt_direct: refused beyond n = 100 (partition count)");
        if (n < 2) return 1;
        Rational acc = 0;
        for_each_partition(static_cast<std::uint32_t>(n), [&](std::span<const std::uint32_t> parts) {
            if (!is_even_type(parts)) return;
            BigInt z = centralizer_order(parts);
            acc += Rational(BigInt(is_split_type(parts) ? 2 : 4), z * z);
        });
        return acc;
    }

    // s tables are computed one past the truncation so that adjacent-n
    // comparisons (n vs n+1 monotonicity) stay in range at n = N.
    Rational s_below(std::size_t k, std::size_t n) const {
        if (k < 1) throw std::invalid_argument("s_below: k must be >= 1");
        if (n > trunc_ + 1) throw std::invalid_argument("s_below: n exceeds truncation order");
        if (n <= kEnumerationLimit) return s_below_value(k, n, Method::enumeration);
        return s_below_value(k, n, Method::generating_function);
    }

    // P(all cycles < k | even permutation); equals s_below for n < 2.
    Rational s_below_even(std::size_t k, std::size_t n) const {
        if (k < 1) throw std::invalid_argument("s_below_even: k must be >= 1");
        if (n > trunc_ + 1) throw std::invalid_argument("s_below_even: n exceeds truncation order");
        if (n < 2) return s_below(k, n);
        if (n <= kEnumerationLimit) {
            Rational acc = 0;
            auto mp = static_cast<std::uint32_t>(std::min(k - 1, n));
            for_each_partition_bounded(static_cast<std::uint32_t>(n), mp,
                                       [&](std::span<const std::uint32_t> parts) {
                                           if (is_even_type(parts)) acc += Rational(BigInt(1), centralizer_order(parts));
                                       });
            return 2 * acc;
        }
        std::scoped_lock lock(mu_);
        const auto& t = s_tables_locked(k);
        return t.plain[n] + t.signed_[n];
    }

    // --- recursion / series weights (see header comment) --------------------

    Rational kappa_even_weight(std::size_t m) const { return m < 2 ? Rational(4) : kappa_even(m); }
    Rational kappa_odd_weight(std::size_t m) const { return m < 2 ? Rational(0) : kappa_odd(m); }

    // --- per-method access --------------------------------------------------

    Rational value(Quantity q, Method m, std::size_t n, std::size_t k = 0) const {
        if (m == Method::brute_force)
            throw std::invalid_argument("StatEngine::value: brute-force tables live in brute_force_table()");
        if (m == Method::enumeration && n > kEnumerationCostGuard)
            throw std::invalid_argument("StatEngine::value: enumeration refused beyond n = 100 (partition count)");
        switch (q) {
            case Quantity::kappa_sym: return kappa_sym_via(n, m);
            case Quantity::kappa_even: return n < 2 ? Rational(1) : kappa_even_via(n, m);
            case Quantity::kappa_odd: return n < 2 ? Rational(0) : kappa_odd_via(n, m);
            case Quantity::q_split: return q_split_via(n, m);
            case Quantity::s_below: return s_below_value(k, n, m);
            case Quantity::kappa_alt:
                if (n < 2) return 1;
                return kappa_even_via(n, m) - 2 * q_split_via(n, m);
        }
        throw std::invalid_argument("value: unknown quantity");
    }

    ProbTable prob_table(Quantity q, Method m, std::size_t n_from, std::size_t n_to, std::size_t k = 0) const {
        ProbTable t{q, k, m, {}};
        for (std::size_t n = n_from; n <= n_to; ++n) t.values[n] = value(q, m, n, k);
        return t;
    }

    Method method_of_record(std::size_t n) const {
        return n <= kEnumerationLimit ? Method::enumeration : Method::generating_function;
    }

    // --- constants ----------------------------------------------------------

    // C_kappa = 13^2 * kappa(S_13); n^2 kappa(S_n) <= C_kappa for all n >= 2.
    Rational c_kappa() const { return Rational(169) * kappa_sym(13); }

    // C_2 = 4^2 * Q(S_4) = 16/9; n^2 Q(S_n) <= C_2.
    Rational c2() const { return Rational(16) * q_split(4); }

    // --- extra enumeration sums used by invariant tests ----------------------

    // (sum over partitions of 1/z, sum over even partitions of 1/z)
    std::pair<Rational, Rational> type_weight_sums(std::size_t n) const {
        const EnumRow& row = enum_row(n);
        return {row.w_all, row.w_even};
    }

private:
    struct EnumRow {
        Rational sq_all;    // sum 1/z^2
        Rational sq_even;   // over even types
        Rational sq_split;  // over split types
        Rational w_all;     // sum 1/z
        Rational w_even;
    };

    struct GfKappaTables {
        std::vector<Rational> sq_all;   // [x^n] prod_d sum_m x^{dm}/(d^{2m} m!^2)
        std::vector<Rational> sq_even;  // (sq_all + signed variant)/2
    };

    struct STables {
        std::vector<Rational> plain;    // exp(sum_{d<k} x^d/d), order N+1
        std::vector<Rational> signed_;  // exp(sum_{d<k} (-1)^{d-1} x^d/d)
    };

    template <typename F>
    Rational pick(std::size_t n, F via) const {
        if (n > trunc_) throw std::invalid_argument("StatEngine: n exceeds truncation order");
        if (n <= kEnumerationLimit) return (this->*via)(n, Method::enumeration);
        return (this->*via)(n, Method::generating_function);
    }

    Rational kappa_sym_via(std::size_t n, Method m) const {
        if (m == Method::enumeration) return enum_row(n).sq_all;
        return gf_kappa(n).sq_all[n];
    }
    Rational kappa_even_via(std::size_t n, Method m) const {
        if (m == Method::enumeration) return 4 * enum_row(n).sq_even;
        return 4 * gf_kappa(n).sq_even[n];
    }
    Rational kappa_odd_via(std::size_t n, Method m) const {
        if (m == Method::enumeration) {
            const EnumRow& r = enum_row(n);
            return 4 * (r.sq_all - r.sq_even);
        }
        const GfKappaTables& t = gf_kappa(n);
        return 4 * (t.sq_all[n] - t.sq_even[n]);
    }
    Rational q_split_via(std::size_t n, Method m) const {
        if (m == Method::enumeration) return enum_row(n).sq_split;
        return gf_split(n)[n];
    }

    Rational s_below_value(std::size_t k, std::size_t n, Method m) const {
        if (m == Method::enumeration) {
            std::scoped_lock lock(mu_);
            auto key = std::make_pair(k, n);
            auto it = s_enum_.find(key);
            if (it != s_enum_.end()) return it->second;
            Rational acc = 0;
            auto mp = static_cast<std::uint32_t>(std::min(k - 1, n));
            for_each_partition_bounded(static_cast<std::uint32_t>(n), mp,
                                       [&](std::span<const std::uint32_t> parts) {
                                           acc += Rational(BigInt(1), centralizer_order(parts));
                                       });
            s_enum_.emplace(key, acc);
            return acc;
        }
        std::scoped_lock lock(mu_);
        return s_tables_locked(k).plain[n];
    }

    const EnumRow& enum_row(std::size_t n) const {
        std::scoped_lock lock(mu_);
        auto it = enum_rows_.find(n);
        if (it != enum_rows_.end()) return it->second;
        EnumRow row;
        for_each_partition(static_cast<std::uint32_t>(n), [&](std::span<const std::uint32_t> parts) {
            BigInt z = centralizer_order(parts);
            Rational w(BigInt(1), z);
            Rational sq(BigInt(1), z * z);
            row.sq_all += sq;
            row.w_all += w;
            if (is_even_type(parts)) {
                row.sq_even += sq;
                row.w_even += w;
            }
            if (is_split_type(parts)) row.sq_split += sq;
        });
        return enum_rows_.emplace(n, std::move(row)).first->second;
    }

    const GfKappaTables& gf_kappa(std::size_t n) const {
        if (n > trunc_) throw std::invalid_argument("StatEngine: n exceeds truncation order");
        std::scoped_lock lock(mu_);
        if (!gf_kappa_) gf_kappa_ = build_gf_kappa(trunc_);
        return *gf_kappa_;
    }

    const std::vector<Rational>& gf_split(std::size_t n) const {
        if (n > trunc_) throw std::invalid_argument("StatEngine: n exceeds truncation order");
        std::scoped_lock lock(mu_);
        if (!gf_split_) {
            std::vector<SparseFactor> factors;
            for (std::size_t d = 1; d <= trunc_; d += 2)
                factors.push_back({d, Rational(1, static_cast<long>(d * d))});
            gf_split_ = sparse_product(factors, trunc_).coeffs();
        }
        return *gf_split_;
    }

    static GfKappaTables build_gf_kappa(std::size_t order) {
        PowerSeries plain = PowerSeries::one(order);
        PowerSeries sgn = PowerSeries::one(order);
        for (std::size_t d = 1; d <= order; ++d) {
            PowerSeries factor_plain(order);
            PowerSeries factor_sgn(order);
            Rational c = 1;
            for (std::size_t m = 0; d * m <= order; ++m) {
                if (m > 0) c /= Rational(static_cast<long>(d * d)) * Rational(static_cast<long>(m * m));
                factor_plain.set_coeff(d * m, c);
                // a part of even size d flips the sign once per copy
                factor_sgn.set_coeff(d * m, (d % 2 == 0 && m % 2 == 1) ? -c : c);
            }
            plain = plain * factor_plain;
            sgn = sgn * factor_sgn;
        }
        GfKappaTables t;
        t.sq_all = plain.coeffs();
        t.sq_even.resize(order + 1);
        for (std::size_t i = 0; i <= order; ++i)
            t.sq_even[i] = (plain.coeff(i) + sgn.coeff(i)) / 2;
        return t;
    }

    const STables& s_tables_locked(std::size_t k) const {
        auto it = s_gf_.find(k);
        if (it != s_gf_.end()) return it->second;
        std::size_t order = trunc_ + 1;
        PowerSeries f(order), g(order);
        for (std::size_t d = 1; d < k && d <= order; ++d) {
            Rational w(1, static_cast<long>(d));
            f.set_coeff(d, w);
            g.set_coeff(d, d % 2 == 0 ? -w : w);
        }
        STables t{exp(f).coeffs(), exp(g).coeffs()};
        return s_gf_.emplace(k, std::move(t)).first->second;
    }

    std::size_t trunc_;
    mutable std::recursive_mutex mu_;
    mutable std::optional<GfKappaTables> gf_kappa_;
    mutable std::optional<std::vector<Rational>> gf_split_;
    mutable std::map<std::size_t, EnumRow> enum_rows_;
    mutable std::map<std::size_t, STables> s_gf_;
    mutable std::map<std::pair<std::size_t, std::size_t>, Rational> s_enum_;
};

}  // namespace kappa
