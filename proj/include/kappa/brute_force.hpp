#pragma once

// Exhaustive oracle for tiny n: tallies every element of S_n by cycle type
// and builds the A_n conjugacy classes by explicit conjugation, bypassing
// all centralizer formulas. Refuses n > 8 (cost guard).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "kappa/statistics.hpp"

namespace kappa {

struct BruteTable {
    std::size_t n = 0;
    Rational kappa_sym, kappa_even, kappa_odd, q_split, kappa_alt;
    std::vector<Rational> s_below;  // index k = 1 .. n+1; [0] unused
};

namespace detail {

inline std::vector<std::uint32_t> cycle_lengths_of(const std::vector<std::uint32_t>& img) {
    std::vector<bool> seen(img.size(), false);
    std::vector<std::uint32_t> lens;
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0;
        for (std::size_t j = i; !seen[j]; j = img[j]) {
            seen[j] = true;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

}  // namespace detail

inline BruteTable brute_force_table(std::size_t n) {
    if (n > 8) throw std::invalid_argument("brute_force_table: refused for n > 8 (cost guard)");

    BruteTable t;
    t.n = n;
    t.s_below.assign(n + 2, Rational(0));

    BigInt nfact = 1;
    for (std::size_t i = 2; i <= n; ++i) nfact *= static_cast<unsigned long>(i);

    // tally cycle types element by element
    std::map<std::vector<std::uint32_t>, BigInt> type_count;
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::uint32_t>> even_perms;
    do {
        auto type = detail::cycle_lengths_of(perm);
        bool even = (n - type.size()) % 2 == 0;
        type_count[type] += 1;
        if (even) even_perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    Rational sq_all = 0, sq_even = 0, sq_split = 0;
    for (const auto& [type, count] : type_count) {
        Rational p(count, nfact);
        Rational psq = p * p;
        sq_all += psq;
        if ((n - type.size()) % 2 == 0) sq_even += psq;
        if (is_split_type(type)) sq_split += psq;
        std::uint32_t longest = type.empty() ? 0 : type.front();
        for (std::size_t k = longest + 1; k <= n + 1; ++k) t.s_below[k] += p;
    }

    t.kappa_sym = sq_all;
    t.q_split = sq_split;
    if (n < 2) {
        t.kappa_even = 1;
        t.kappa_odd = 0;
    } else {
        // P(conjugate | both even) = sq_even / (1/2)^2, likewise for odd
        t.kappa_even = 4 * sq_even;
        t.kappa_odd = 4 * (sq_all - sq_even);
    }

    // A_n classes by conjugation closure under the 3-cycle generators (0 1 i)
    if (n < 2) {
        t.kappa_alt = 1;
    } else {
        std::map<std::vector<std::uint32_t>, std::size_t> index;
        for (std::size_t i = 0; i < even_perms.size(); ++i) index[even_perms[i]] = i;

        std::vector<std::vector<std::uint32_t>> generators;
        for (std::uint32_t i = 2; i < n; ++i) {
            std::vector<std::uint32_t> g(n);
            std::iota(g.begin(), g.end(), 0);
            g[0] = 1; g[1] = i; g[i] = 0;  // the 3-cycle (0 1 i)
            generators.push_back(g);
        }

        std::vector<bool> assigned(even_perms.size(), false);
        Rational acc = 0;
        BigInt alt_order = nfact / 2;
        for (std::size_t root = 0; root < even_perms.size(); ++root) {
            if (assigned[root]) continue;
            BigInt class_size = 0;
            std::queue<std::size_t> todo;
            todo.push(root);
            assigned[root] = true;
            while (!todo.empty()) {
                std::size_t cur = todo.front();
                todo.pop();
                class_size += 1;
                for (const auto& g : generators) {
                    const auto& s = even_perms[cur];
                    std::vector<std::uint32_t> conj(n);
                    for (std::uint32_t x = 0; x < n; ++x) conj[g[x]] = g[s[x]];
                    std::size_t idx = index.at(conj);
                    if (!assigned[idx]) {
                        assigned[idx] = true;
                        todo.push(idx);
                    }
                }
            }
            Rational p(class_size, alt_order);
            acc += p * p;
        }
        t.kappa_alt = acc;
    }
    return t;
}

inline std::vector<ProbTable> as_prob_tables(const BruteTable& t) {
    std::vector<ProbTable> out;
    auto single = [&](Quantity q, const Rational& v) {
        ProbTable pt{q, 0, Method::brute_force, {}};
        pt.values[t.n] = v;
        out.push_back(std::move(pt));
    };
    single(Quantity::kappa_sym, t.kappa_sym);
    single(Quantity::kappa_even, t.kappa_even);
    single(Quantity::kappa_odd, t.kappa_odd);
    single(Quantity::q_split, t.q_split);
    single(Quantity::kappa_alt, t.kappa_alt);
    for (std::size_t k = 1; k < t.s_below.size(); ++k) {
        ProbTable pt{Quantity::s_below, k, Method::brute_force, {}};
        pt.values[t.n] = t.s_below[k];
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace kappa
