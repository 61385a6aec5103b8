#pragma once

// Truncated formal power series over exact rationals. A series carries a fixed
// truncation order N and exactly N+1 coefficients; terms of degree > N are
// discarded explicitly by every operation, never grown silently.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kappa/rational.hpp"

namespace kappa {

class PowerSeries {
public:
    explicit PowerSeries(std::size_t order) : coeffs_(order + 1) {}

    static PowerSeries one(std::size_t order) {
        PowerSeries s(order);
        s.coeffs_[0] = 1;
        return s;
    }

    static PowerSeries monomial(std::size_t degree, Rational weight, std::size_t order) {
        PowerSeries s(order);
        if (degree <= order) s.coeffs_[degree] = std::move(weight);
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    const Rational& coeff(std::size_t n) const {
        if (n >= coeffs_.size())
            throw std::out_of_range("PowerSeries::coeff: index exceeds truncation order");
        return coeffs_[n];
    }

    void set_coeff(std::size_t n, Rational c) {
        if (n >= coeffs_.size())
            throw std::out_of_range("PowerSeries::set_coeff: index exceeds truncation order");
        coeffs_[n] = std::move(c);
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    // In-place multiplication by (1 + w*x^d). O(N) and the workhorse of the
    // sparse products below.
    PowerSeries& multiply_binomial(std::size_t degree, const Rational& weight) {
        if (degree == 0) throw std::invalid_argument("multiply_binomial: degree must be positive");
        if (degree > order() || weight.is_zero()) return *this;
        for (std::size_t i = order() - degree + 1; i-- > 0;) {
            if (!coeffs_[i].is_zero()) coeffs_[i + degree] += coeffs_[i] * weight;
        }
        return *this;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b, "operator+");
        PowerSeries out(a.order());
        for (std::size_t i = 0; i <= a.order(); ++i) out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return out;
    }

    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b, "operator-");
        PowerSeries out(a.order());
        for (std::size_t i = 0; i <= a.order(); ++i) out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return out;
    }

    // Cauchy product truncated at the shared order. Iterates over the nonzero
    // coefficients of the sparser operand, so dense*sparse costs O(N * nnz).
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        check_orders(a, b, "operator*");
        const PowerSeries& outer = a.nonzero_count() <= b.nonzero_count() ? a : b;
        const PowerSeries& inner = &outer == &a ? b : a;
        PowerSeries out(a.order());
        for (std::size_t j = 0; j <= outer.order(); ++j) {
            const Rational& w = outer.coeffs_[j];
            if (w.is_zero()) continue;
            for (std::size_t i = 0; i + j <= inner.order(); ++i) {
                if (!inner.coeffs_[i].is_zero()) out.coeffs_[i + j] += inner.coeffs_[i] * w;
            }
        }
        return out;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    static void check_orders(const PowerSeries& a, const PowerSeries& b, const char* op) {
        if (a.order() != b.order())
            throw std::invalid_argument(std::string("PowerSeries::") + op + ": mismatched truncation orders");
    }

    std::size_t nonzero_count() const {
        std::size_t c = 0;
        for (const auto& v : coeffs_)
            if (!v.is_zero()) ++c;
        return c;
    }

    std::vector<Rational> coeffs_;
};

struct SparseFactor {
    std::size_t degree = 0;
    Rational weight;
};

// Exact truncated product of (1 + w*x^d) over the given factors. Factors with
// degree > order cannot touch any kept coefficient and are skipped up front.
inline PowerSeries sparse_product(const std::vector<SparseFactor>& factors, std::size_t order) {
    PowerSeries acc = PowerSeries::one(order);
    for (const auto& f : factors) {
        if (f.degree == 0) throw std::invalid_argument("sparse_product: factor degrees must be positive");
        if (f.degree > order) continue;
        acc.multiply_binomial(f.degree, f.weight);
    }
    return acc;
}

// exp(f) for a series with zero constant term, via the coefficient recurrence
// of g' = f'*g:  n*g_n = sum_{j=1..n} j*f_j*g_{n-j}.
inline PowerSeries exp(const PowerSeries& f) {
    if (!f.coeff(0).is_zero())
        throw std::invalid_argument("exp: series must have zero constant term");
    const std::size_t n = f.order();
    PowerSeries g = PowerSeries::one(n);
    std::vector<std::pair<std::size_t, Rational>> support;  // (j, j*f_j)
    for (std::size_t j = 1; j <= n; ++j) {
        if (!f.coeff(j).is_zero()) support.emplace_back(j, Rational(static_cast<long>(j)) * f.coeff(j));
    }
    for (std::size_t m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (const auto& [j, jfj] : support) {
            if (j > m) break;
            if (!g.coeff(m - j).is_zero()) acc += jfj * g.coeff(m - j);
        }
        g.set_coeff(m, acc / Rational(static_cast<long>(m)));
    }
    return g;
}

}  // namespace kappa
