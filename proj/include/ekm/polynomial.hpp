#ifndef EKM_POLYNOMIAL_HPP
#define EKM_POLYNOMIAL_HPP

/* Dense univariate polynomials over the rationals.
 *
 * Coefficients are stored ascending; the representation is canonical
 * (no trailing zeros), so operator== is coefficient-list equality.
 * The zero polynomial has degree -1.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ekm/errors.hpp"
#include "ekm/rational.hpp"

namespace ekm {

class RatPoly {
public:
    RatPoly() = default;
    RatPoly(std::initializer_list<Rational> ascending) : c_(ascending) { normalize(); }
    explicit RatPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { normalize(); }
    explicit RatPoly(const Rational& constant) : c_{constant} { normalize(); }

    static RatPoly zero() { return RatPoly(); }
    static RatPoly one() { return RatPoly{Rational(1)}; }
    // a + b z
    static RatPoly linear(const Rational& a, const Rational& b) { return RatPoly{a, b}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& operator[](std::size_t i) const {
        static const Rational kZero(0);
        return i < c_.size() ? c_[i] : kZero;
    }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& leading() const {
        if (c_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
        return c_.back();
    }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
        return RatPoly(std::move(out));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
        return RatPoly(std::move(out));
    }
    RatPoly operator-() const {
        std::vector<Rational> out(c_);
        for (auto& v : out) v = -v;
        return RatPoly(std::move(out));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(out));
    }
    friend RatPoly operator*(const Rational& s, const RatPoly& p) {
        if (s.is_zero()) return RatPoly();
        std::vector<Rational> out(p.c_);
        for (auto& v : out) v *= s;
        return RatPoly(std::move(out));
    }
    friend RatPoly operator*(const RatPoly& p, const Rational& s) { return s * p; }

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

    RatPoly derivative() const {
        if (c_.size() <= 1) return RatPoly();
        std::vector<Rational> out(c_.size() - 1, Rational(0));
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = Rational(long(i)) * c_[i];
        return RatPoly(std::move(out));
    }

    // Antiderivative with zero constant term.
    RatPoly antiderivative() const {
        if (is_zero()) return RatPoly();
        std::vector<Rational> out(c_.size() + 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / Rational(long(i + 1));
        return RatPoly(std::move(out));
    }

    // p(a + b z)
    RatPoly compose_linear(const Rational& a, const Rational& b) const {
        RatPoly acc;
        const RatPoly arg = RatPoly::linear(a, b);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + RatPoly(*it);
        return acc;
    }

    // z^k * p
    RatPoly shift_up(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<Rational> out(c_.size() + k, Rational(0));
        std::copy(c_.begin(), c_.end(), out.begin() + static_cast<long>(k));
        return RatPoly(std::move(out));
    }

    std::string to_string(const std::string& var = "z") const;

    friend std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.to_string(); }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += c.sign() > 0 ? " + " : " - ";
        else if (c.sign() < 0) out += "-";
        const Rational a = c.abs();
        const bool unit = (a == Rational(1)) && i > 0;
        if (!unit) out += a.to_string();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// Quotient and remainder of a by b, exact over the rationals.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw ZeroPolynomial("polynomial division by zero");
    RatPoly rem = a;
    if (rem.degree() < b.degree()) return {RatPoly(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - b.degree() + 1), Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
        const Rational factor = rem.leading() / b.leading();
        q[shift] = factor;
        rem = rem - (factor * b).shift_up(shift);
    }
    return {RatPoly(std::move(q)), rem};
}

inline RatPoly div_exact(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DivisionNotExact("polynomial division left a remainder");
    return q;
}

// Monic gcd (1 for coprime inputs, monic multiple of the common part otherwise).
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    if (a.is_zero() && b.is_zero()) throw ZeroGcd("gcd of two zero polynomials");
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return (Rational(1) / a.leading()) * a;
}

inline RatPoly poly_pow(const RatPoly& base, unsigned e) {
    RatPoly out = RatPoly::one(), b = base;
    for (; e; e >>= 1) {
        if (e & 1) out = out * b;
        b = b * b;
    }
    return out;
}

inline Rational definite_integral(const RatPoly& p, const Rational& lo, const Rational& hi) {
    const RatPoly anti = p.antiderivative();
    return anti(hi) - anti(lo);
}

} // namespace ekm

#endif
