#pragma once

// Monte Carlo oracle: uniform permutation sampling, conjugacy decisions in
// S_n and A_n, and seeded Bernoulli estimates of every exact quantity.
// Reproducibility contract: results are identical for a fixed
// (seed, samples, worker count) triple, regardless of scheduling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kappa/partitions.hpp"

namespace kappa {

// SplitMix64. The state walks a fixed arithmetic sequence, which makes the
// stream splittable: worker w starts 2^40 * w steps into the master stream,
// giving disjoint blocks of 2^40 draws per worker.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t worker) {
        return SplitMix64(seed + worker * (kGamma << 40));
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t state_;
};

class Permutation {
public:
    explicit Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (auto v : img_) {
            if (v >= img_.size() || seen[v]) throw std::invalid_argument("Permutation: images not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> img(n);
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    std::size_t degree() const { return img_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    Partition cycle_type() const {
        std::vector<bool> seen(img_.size(), false);
        std::vector<std::uint32_t> lens;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            std::uint32_t len = 0;
            for (std::size_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            lens.push_back(len);
        }
        std::sort(lens.rbegin(), lens.rend());
        return Partition(std::move(lens));
    }

    bool is_even() const {
        std::vector<bool> seen(img_.size(), false);
        std::size_t cycles = 0;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (std::size_t j = i; !seen[j]; j = img_[j]) seen[j] = true;
        }
        return (img_.size() - cycles) % 2 == 0;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> img_;
};

// Fisher-Yates with unbiased swaps: exactly uniform over S_n.
inline Permutation sample_permutation(std::size_t n, SplitMix64& rng) {
    if (n < 1) throw std::invalid_argument("sample_permutation: n must be >= 1");
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.next_below(i + 1);
        std::swap(img[i], img[j]);
    }
    return Permutation(std::move(img));
}

inline Permutation sample_even_permutation(std::size_t n, SplitMix64& rng) {
    for (;;) {
        Permutation p = sample_permutation(n, rng);
        if (p.is_even()) return p;
    }
}

namespace detail {

// Cycles listed min-element-first, sorted by (length, min element); this is
// the canonical decomposition behind the canonical conjugator.
inline std::vector<std::vector<std::uint32_t>> canonical_cycles(const Permutation& p) {
    std::vector<bool> seen(p.degree(), false);
    std::vector<std::vector<std::uint32_t>> cycles;
    for (std::uint32_t i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        std::vector<std::uint32_t> cyc;
        for (std::uint32_t j = i; !seen[j]; j = p(j)) {
            seen[j] = true;
            cyc.push_back(j);
        }
        cycles.push_back(std::move(cyc));  // starts at its minimum: i is smallest unseen
    }
    std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    return cycles;
}

}  // namespace detail

// True iff two even permutations are conjugate inside A_n. Same cycle type is
// necessary; for split types the S_n-centralizer is generated by the (odd,
// even-signed) cycles themselves and lies in A_n, so every conjugator carries
// the same sign and the canonical one decides the question.
inline bool conjugate_in_alternating(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("conjugate_in_alternating: degree mismatch");
    if (!a.is_even() || !b.is_even())
        throw std::invalid_argument("conjugate_in_alternating: both permutations must be even");
    Partition ta = a.cycle_type();
    if (!(ta == b.cycle_type())) return false;
    if (!ta.is_split()) return true;

    auto ca = detail::canonical_cycles(a);
    auto cb = detail::canonical_cycles(b);
    std::vector<std::uint32_t> g(a.degree());
    for (std::size_t c = 0; c < ca.size(); ++c)
        for (std::size_t i = 0; i < ca[c].size(); ++i) g[ca[c][i]] = cb[c][i];
    return Permutation(std::move(g)).is_even();
}

enum class McQuantity { kappa_sym, kappa_even, kappa_odd, q_split, kappa_alt, s_below, split_half_rate };

inline std::string mc_quantity_name(McQuantity q, std::size_t k = 0) {
    switch (q) {
        case McQuantity::kappa_sym: return "kappa_sym";
        case McQuantity::kappa_even: return "kappa_even";
        case McQuantity::kappa_odd: return "kappa_odd";
        case McQuantity::q_split: return "q_split";
        case McQuantity::kappa_alt: return "kappa_alt";
        case McQuantity::s_below: return "s_below(" + std::to_string(k) + ")";
        case McQuantity::split_half_rate: return "split_half_rate";
    }
    return "?";
}

struct McEstimate {
    std::string quantity;
    std::size_t n = 0;
    double point = 0.0;
    double std_error = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool degenerate = false;  // nothing tallied: zero samples, or the conditioning event cannot occur
    std::vector<std::uint64_t> worker_samples;
    std::vector<std::uint64_t> worker_successes;
};

namespace detail {

inline bool split_type_of(const Permutation& p) { return p.cycle_type().is_split(); }

// one Bernoulli trial for the given quantity
inline bool mc_trial(McQuantity q, std::size_t n, std::size_t k, SplitMix64& rng) {
    switch (q) {
        case McQuantity::kappa_sym: {
            Permutation a = sample_permutation(n, rng);
            Permutation b = sample_permutation(n, rng);
            return a.cycle_type() == b.cycle_type();
        }
        case McQuantity::kappa_even: {
            Permutation a = sample_even_permutation(n, rng);
            Permutation b = sample_even_permutation(n, rng);
            return a.cycle_type() == b.cycle_type();
        }
        case McQuantity::kappa_odd: {
            for (;;) {
                Permutation a = sample_permutation(n, rng);
                if (a.is_even()) continue;
                for (;;) {
                    Permutation b = sample_permutation(n, rng);
                    if (b.is_even()) continue;
                    return a.cycle_type() == b.cycle_type();
                }
            }
        }
        case McQuantity::q_split: {
            Permutation a = sample_permutation(n, rng);
            Permutation b = sample_permutation(n, rng);
            Partition ta = a.cycle_type();
            return ta.is_split() && ta == b.cycle_type();
        }
        case McQuantity::kappa_alt: {
            Permutation a = sample_even_permutation(n, rng);
            Permutation b = sample_even_permutation(n, rng);
            return conjugate_in_alternating(a, b);
        }
        case McQuantity::s_below: {
            Permutation a = sample_permutation(n, rng);
            Partition type = a.cycle_type();
            return type.parts().empty() || type.parts().front() < k;
        }
        case McQuantity::split_half_rate: {
            // sigma uniform even with split type; tau uniform on sigma's
            // S_n-class (conjugation by uniform g); success = A_n-conjugate.
            for (;;) {
                Permutation s = sample_even_permutation(n, rng);
                if (!split_type_of(s)) continue;
                Permutation g = sample_permutation(n, rng);
                std::vector<std::uint32_t> conj(n);
                for (std::uint32_t x = 0; x < n; ++x) conj[g(x)] = g(s(x));
                return conjugate_in_alternating(s, Permutation(std::move(conj)));
            }
        }
    }
    throw std::invalid_argument("mc_trial: unknown quantity");
}

}  // namespace detail

inline McEstimate estimate(McQuantity q, std::size_t n, std::uint64_t samples, std::uint64_t seed,
                           unsigned workers = 1, std::size_t k = 0) {
    if (n < 1) throw std::invalid_argument("estimate: n must be >= 1");
    if (q == McQuantity::s_below && k < 1) throw std::invalid_argument("estimate: s_below needs k >= 1");
    if (workers < 1) workers = 1;

    // conditioning events that cannot occur: no odd permutations below n = 2,
    // no split types among the even permutations of exactly 2 points
    bool impossible_condition = (q == McQuantity::kappa_odd && n < 2) ||
                                (q == McQuantity::split_half_rate && n == 2);
    if (impossible_condition) {
        McEstimate e;
        e.quantity = mc_quantity_name(q, k);
        e.n = n;
        e.seed = seed;
        e.workers = workers;
        e.degenerate = true;
        return e;
    }

    std::vector<std::uint64_t> hits(workers, 0);
    std::vector<std::uint64_t> quotas(workers, 0);
    std::vector<std::thread> threads;
    std::uint64_t per = samples / workers, extra = samples % workers;
    for (unsigned w = 0; w < workers; ++w) {
        quotas[w] = per + (w < extra ? 1 : 0);
        threads.emplace_back([&, w] {
            SplitMix64 rng = SplitMix64::substream(seed, w);
            std::uint64_t h = 0;
            for (std::uint64_t i = 0; i < quotas[w]; ++i)
                if (detail::mc_trial(q, n, k, rng)) ++h;
            hits[w] = h;
        });
    }
    for (auto& t : threads) t.join();

    McEstimate e;
    e.quantity = mc_quantity_name(q, k);
    e.n = n;
    e.samples = samples;
    e.seed = seed;
    e.workers = workers;
    e.worker_samples = quotas;
    e.worker_successes = hits;
    e.successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    e.degenerate = samples == 0;
    if (!e.degenerate) {
        e.point = static_cast<double>(e.successes) / static_cast<double>(samples);
        e.std_error = std::sqrt(e.point * (1.0 - e.point) / static_cast<double>(samples));
    }
    return e;
}

}  // namespace kappa
