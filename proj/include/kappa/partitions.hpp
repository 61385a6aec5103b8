#pragma once

// Integer partitions as cycle types: enumeration in reverse-lexicographic
// order plus the per-type quantities every probability here is built from
// (centralizer order z, permutation parity, split test).

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "kappa/rational.hpp"

namespace kappa {

// z = prod_d d^{m_d} * m_d!  for a non-increasing parts list.
inline BigInt centralizer_order(std::span<const std::uint32_t> parts) {
    BigInt z = 1;
    std::size_t i = 0;
    while (i < parts.size()) {
        std::uint32_t d = parts[i];
        unsigned long m = 0;
        while (i < parts.size() && parts[i] == d) {
            ++m;
            ++i;
            z *= d;
            z *= m;  // accumulates m_d! one factor at a time
        }
    }
    return z;
}

// Parity of any permutation with this cycle type: even iff n - #parts is even.
inline bool is_even_type(std::span<const std::uint32_t> parts) {
    std::uint64_t n = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
    return (n - parts.size()) % 2 == 0;
}

// Split classes of A_n: all parts odd and pairwise distinct.
inline bool is_split_type(std::span<const std::uint32_t> parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] % 2 == 0) return false;
        if (i > 0 && parts[i] == parts[i - 1]) return false;
    }
    return true;
}

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] > parts_[i - 1] || parts_[i] == 0)
                throw std::invalid_argument("Partition: parts must be positive and non-increasing");
    }

    std::uint64_t n() const { return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0}); }
    std::size_t size() const { return parts_.size(); }
    const std::vector<std::uint32_t>& parts() const { return parts_; }

    BigInt centralizer_order() const { return kappa::centralizer_order(parts_); }
    bool is_even() const { return is_even_type(parts_); }
    bool is_split() const { return is_split_type(parts_); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += '+';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

private:
    std::vector<std::uint32_t> parts_;
};

// Visits every partition of n with all parts <= max_part, in reverse-
// lexicographic order, each exactly once. n = 0 yields the empty partition.
// The span passed to fn is only valid during the call.
template <typename Fn>
void for_each_partition_bounded(std::uint32_t n, std::uint32_t max_part, Fn&& fn) {
    if (n == 0) {
        fn(std::span<const std::uint32_t>{});
        return;
    }
    if (max_part == 0) return;
    std::vector<std::uint32_t> a;
    a.reserve(n);
    // first partition: as many max_part as fit, remainder last
    for (std::uint32_t left = n; left > 0;) {
        std::uint32_t p = std::min(left, max_part);
        a.push_back(p);
        left -= p;
    }
    for (;;) {
        fn(std::span<const std::uint32_t>(a));
        // find last part > 1
        std::size_t j = a.size();
        while (j > 0 && a[j - 1] == 1) --j;
        if (j == 0) return;
        std::uint32_t ones = static_cast<std::uint32_t>(a.size() - j);
        std::uint32_t x = a[j - 1] - 1;
        std::uint32_t m = a[j - 1] + ones;  // amount to repartition into parts <= x
        a.resize(j - 1);
        while (m > x) {
            a.push_back(x);
            m -= x;
        }
        if (m > 0) a.push_back(m);
    }
}

template <typename Fn>
void for_each_partition(std::uint32_t n, Fn&& fn) {
    for_each_partition_bounded(n, n == 0 ? 0 : n, std::forward<Fn>(fn));
}

}  // namespace kappa
