#pragma once

// Exact rational arithmetic (GMP-backed). Every value is kept canonical:
// lowest terms, positive denominator. No operation in this type rounds.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kappa {

using BigInt = mpz_class;

// Rounding direction for decimal rendering. `down`/`up` are toward -inf/+inf,
// so for positive values `up` always yields an upper bound on the true value.
enum class Rounding { nearest, down, up };

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, lets literals mix in
    Rational(const BigInt& n) : v_(n) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational from_mpq(mpq_class v) {
        v.canonicalize();
        Rational r;
        r.v_ = std::move(v);
        return r;
    }

    const BigInt num() const { return v_.get_num(); }
    const BigInt den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return from_mpq(mpq_class(-v_)); }

    friend Rational operator+(const Rational& a, const Rational& b) { return from_mpq(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return from_mpq(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return from_mpq(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return from_mpq(a.v_ / b.v_);
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den(), num());
    }

    Rational squared() const { return *this * *this; }

    double to_double() const { return v_.get_d(); }

    // "p/q", or just "p" when integral.
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    // Fixed-point rendering with `places` digits after the point.
    std::string decimal(std::size_t places, Rounding mode = Rounding::nearest) const {
        bool neg = sign() < 0;
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
        BigInt n = num() * scale;
        if (neg) n = -n;
        BigInt q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), den().get_mpz_t());
        bool bump = false;
        if (r != 0) {
            switch (mode) {
                case Rounding::nearest: bump = 2 * r >= den(); break;
                case Rounding::down: bump = neg; break;
                case Rounding::up: bump = !neg; break;
            }
        }
        if (bump) q += 1;
        std::string digits = q.get_str();
        if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
        std::string out = digits.substr(0, digits.size() - places);
        if (places > 0) out += "." + digits.substr(digits.size() - places);
        if (neg && q != 0) out.insert(0, 1, '-');
        return out;
    }

    // Accepts "p/q", plain integers, and decimal literals such as "0.19076"
    // or "-1.5"; all parsed exactly. Returns nullopt on malformed input.
    static std::optional<Rational> parse(std::string_view s) {
        auto trim = [](std::string_view t) {
            while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
            while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
            return t;
        };
        s = trim(s);
        if (s.empty()) return std::nullopt;

        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            auto n = parse_integer(trim(s.substr(0, slash)));
            auto d = parse_integer(trim(s.substr(slash + 1)));
            if (!n || !d || sgn(*d) == 0) return std::nullopt;
            return Rational(*n, *d);
        }

        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string_view int_part = s.substr(0, dot);
            std::string_view frac_part = s.substr(dot + 1);
            bool neg = !int_part.empty() && int_part.front() == '-';
            if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
            if (frac_part.empty() || frac_part.find_first_not_of("0123456789") != std::string_view::npos)
                return std::nullopt;
            if (!int_part.empty() && int_part.find_first_not_of("0123456789") != std::string_view::npos)
                return std::nullopt;
            BigInt whole = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part), 10);
            BigInt frac(std::string(frac_part), 10);
            BigInt scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(frac_part.size()));
            Rational r = Rational(whole) + Rational(frac, scale);
            return neg ? -r : r;
        }

        auto n = parse_integer(s);
        if (!n) return std::nullopt;
        return Rational(*n);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static std::optional<BigInt> parse_integer(std::string_view s) {
        if (s.empty()) return std::nullopt;
        std::string_view body = s;
        if (body.front() == '-' || body.front() == '+') body.remove_prefix(1);
        if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos)
            return std::nullopt;
        BigInt v(std::string(s.front() == '+' ? s.substr(1) : s), 10);
        return v;
    }

    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace kappa
