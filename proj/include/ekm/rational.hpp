#ifndef EKM_RATIONAL_HPP
#define EKM_RATIONAL_HPP

/* Exact rational scalars, backed by GMP.
 *
 * Invariants (enforced on every construction path): denominator > 0 and
 * gcd(|num|, den) = 1, so equality is representation equality and
 * to_string() is canonical.
 */

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "ekm/errors.hpp"

namespace ekm {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}   // implicit: integers embed in the rationals
    Rational(int n) : q_(static_cast<long>(n)) {}
    Rational(long n, long d) : q_(n, d) { require_nonzero_den(); q_.canonicalize(); }
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) { require_nonzero_den(); q_.canonicalize(); }
    explicit Rational(const mpq_class& q) : q_(q) { require_nonzero_den(); q_.canonicalize(); }

    // Exact dyadic conversion; every finite double is a rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw OutOfRange("from_double: not finite");
        mpq_class q;
        mpq_set_d(q.get_mpq_t(), x);
        return Rational(q);
    }

    // Accepts "p/q", "p", optional leading sign, arbitrary precision.
    static std::optional<Rational> parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    double to_double() const { return q_.get_d(); }

    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw OutOfRange("rational division by zero");
        return wrap(a.q_ / b.q_);
    }
    Rational operator-() const { return wrap(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b)  { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b)  { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    static Rational wrap(const mpq_class& q) {
        Rational r;
        r.q_ = q; // gmp arithmetic keeps mpq_class canonical
        return r;
    }
    void require_nonzero_den() {
        if (q_.get_den() == 0) throw OutOfRange("rational with zero denominator");
    }

    mpq_class q_;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(mpz_class(std::string(text)));
        }
        const auto ns = text.substr(0, slash);
        const auto ds = text.substr(slash + 1);
        if (!is_int(ns) || !is_int(ds)) return std::nullopt;
        mpz_class d{std::string(ds)};
        if (d == 0) return std::nullopt;
        return Rational(mpz_class(std::string(ns)), d);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

inline Rational abs(const Rational& r) { return r.abs(); }

inline Rational pow(const Rational& base, unsigned e) {
    Rational out(1), b = base;
    for (; e; e >>= 1) {
        if (e & 1) out *= b;
        b *= b;
    }
    return out;
}

inline Rational factorial_rational(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational pow2_rational(unsigned n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    return Rational(p);
}

} // namespace ekm

#endif
