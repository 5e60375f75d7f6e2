#ifndef EKM_ROOTS_HPP
#define EKM_ROOTS_HPP

/* Exact real root counting and isolation on intervals.
 *
 * Counting runs a Sturm sequence on the square-free part, so multiple
 * roots and roots at interval endpoints are handled exactly. Parity of
 * the multiplicity is read off Yun's square-free decomposition. A point
 * interval (lo == hi) marks a root found exactly (necessarily rational).
 */

#include <utility>
#include <vector>

#include "ekm/errors.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"

namespace ekm {

enum class Parity { Even, Odd };

struct RootInterval {
    Rational lo;
    Rational hi;
    Parity multiplicity_parity = Parity::Odd;
};

struct RootWitness {
    std::vector<RootInterval> intervals; // pairwise disjoint, one distinct root each
    int count = 0;                       // number of distinct roots in the query interval
};

// Positive-constant rescaling keeps Sturm sign sequences valid while
// holding coefficient growth down.
inline RatPoly primitive_scale(const RatPoly& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& c : p.coefficients()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    for (const auto& c : p.coefficients()) {
        mpz_class scaled = c.num() * (den_lcm / c.den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    return Rational(den_lcm, num_gcd) * p;
}

inline std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq;
    seq.push_back(primitive_scale(p));
    if (p.degree() <= 0) return seq;
    seq.push_back(primitive_scale(p.derivative()));
    while (seq.back().degree() > 0) {
        auto [q, r] = divmod(seq[seq.size() - 2], seq.back());
        (void)q;
        if (r.is_zero()) break;
        seq.push_back(primitive_scale(-r));
    }
    return seq;
}

inline int sign_variations(const std::vector<RatPoly>& seq, const Rational& x) {
    int vars = 0, prev = 0;
    for (const auto& p : seq) {
        const int s = p(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

// Distinct roots of square-free q in the half-open interval (lo, hi].
inline int sturm_count(const std::vector<RatPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

inline RatPoly square_free_part(const RatPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("square-free part of zero polynomial");
    if (p.degree() == 0) return RatPoly::one();
    const RatPoly g = poly_gcd(p, p.derivative());
    RatPoly sf = div_exact(p, g);
    return (Rational(1) / sf.leading()) * sf;
}

// Yun: p = const * prod f_i^i with the f_i square-free and pairwise coprime.
// Returns (f_i, i) for the nonconstant f_i.
inline std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("square-free decomposition of zero polynomial");
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() == 0) return out;
    RatPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) {
        out.emplace_back((Rational(1) / p.leading()) * p, 1);
        return out;
    }
    RatPoly w = div_exact(p, g);
    RatPoly y = div_exact(p.derivative(), g);
    RatPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        RatPoly gi = poly_gcd(w, z.is_zero() ? w : z);
        if (z.is_zero()) gi = (Rational(1) / w.leading()) * w;
        if (gi.degree() > 0) out.emplace_back(gi, i);
        w = div_exact(w, gi);
        if (w.degree() == 0) break;
        y = div_exact(z, gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace detail {

inline Parity parity_of_root(const std::vector<std::pair<RatPoly, int>>& decomp,
                             const Rational& lo, const Rational& hi) {
    for (const auto& [f, mult] : decomp) {
        if (lo == hi) {
            if (f(lo).is_zero()) return mult % 2 == 0 ? Parity::Even : Parity::Odd;
        } else if (f(lo).sign() * f(hi).sign() < 0) {
            return mult % 2 == 0 ? Parity::Even : Parity::Odd;
        }
    }
    // Unreachable for intervals isolating a genuine root.
    throw InternalMismatch("root interval matches no square-free factor");
}

// Isolate the roots of square-free q in the open interval (lo, hi);
// both endpoints must be non-roots of q.
inline void isolate(const RatPoly& q, const std::vector<RatPoly>& seq,
                    const Rational& lo, const Rational& hi,
                    std::vector<std::pair<Rational, Rational>>& out) {
    const int n = sturm_count(seq, lo, hi);
    if (n == 0) return;
    if (n == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    const Rational mid = (lo + hi) / Rational(2);
    if (q(mid).is_zero()) {
        out.emplace_back(mid, mid);
        // Shrink to a punctured neighbourhood of mid free of the other roots.
        Rational radius = (hi - lo) / Rational(4);
        while (sturm_count(seq, mid - radius, mid + radius) > 1 ||
               q(mid - radius).is_zero() || q(mid + radius).is_zero())
            radius /= Rational(2);
        isolate(q, seq, lo, mid - radius, out);
        isolate(q, seq, mid + radius, hi, out);
        return;
    }
    isolate(q, seq, lo, mid, out);
    isolate(q, seq, mid, hi, out);
}

} // namespace detail

// Shrink an isolating interval of square-free q below the requested width.
inline RootInterval refine_root(const RatPoly& q, RootInterval iv, const Rational& width) {
    if (iv.lo == iv.hi) return iv;
    int slo = q(iv.lo).sign();
    if (slo == 0) throw InternalMismatch("refine_root: endpoint is a root");
    while (iv.hi - iv.lo > width) {
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        const int sm = q(mid).sign();
        if (sm == 0) {
            iv.lo = iv.hi = mid;
            return iv;
        }
        if (sm == slo) iv.lo = mid; else iv.hi = mid;
    }
    return iv;
}

// Exact count (and isolation) of the distinct real roots of p in (lo, hi).
inline RootWitness count_roots_open(const RatPoly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw ZeroPolynomial("root counting on the zero polynomial");
    RootWitness w;
    if (!(lo < hi) || p.degree() == 0) return w;

    RatPoly q = square_free_part(p);
    // Deflate roots sitting exactly at the query endpoints.
    for (const Rational& end : {lo, hi})
        while (!q.is_zero() && q.degree() > 0 && q(end).is_zero())
            q = div_exact(q, RatPoly::linear(-end, Rational(1)));
    if (q.degree() <= 0) return w;

    const auto seq = sturm_sequence(q);
    std::vector<std::pair<Rational, Rational>> raw;
    detail::isolate(q, seq, lo, hi, raw);

    const auto decomp = square_free_decomposition(p);
    for (auto& [a, b] : raw) {
        RootInterval iv{a, b, Parity::Odd};
        // Pull strictly inside (lo, hi): the query endpoints may be roots of p
        // that were deflated out of q, and the parity scan below needs the
        // original polynomial nonzero at both interval ends.
        if (!(iv.lo == iv.hi)) {
            while (!(lo < iv.lo) || !(iv.hi < hi)) {
                const Rational mid = (iv.lo + iv.hi) / Rational(2);
                if (q(mid).is_zero()) { iv.lo = iv.hi = mid; break; }
                if (q(iv.lo).sign() * q(mid).sign() < 0) iv.hi = mid; else iv.lo = mid;
            }
        }
        iv.multiplicity_parity = detail::parity_of_root(decomp, iv.lo, iv.hi);
        w.intervals.push_back(iv);
    }
    std::sort(w.intervals.begin(), w.intervals.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    // Neighbouring bisection cells may share an endpoint; pull the right
    // interval strictly off it so the witness intervals are pairwise disjoint.
    for (std::size_t i = 1; i < w.intervals.size(); ++i) {
        RootInterval& cur = w.intervals[i];
        const RootInterval& prev = w.intervals[i - 1];
        while (!(cur.lo == cur.hi) && !(prev.hi < cur.lo)) {
            const Rational mid = (cur.lo + cur.hi) / Rational(2);
            if (q(mid).is_zero()) { cur.lo = cur.hi = mid; break; }
            if (q(cur.lo).sign() * q(mid).sign() < 0) cur.hi = mid; else cur.lo = mid;
        }
    }
    w.count = static_cast<int>(w.intervals.size());
    return w;
}

// Cauchy bound: all real roots of p lie in (-B, B).
inline Rational root_bound(const RatPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        const Rational a = (p[static_cast<std::size_t>(i)] / p.leading()).abs();
        if (a > m) m = a;
    }
    return m + Rational(1);
}

// Candidate rational roots (rational root theorem) lying inside [lo, hi].
inline std::vector<Rational> rational_roots_in(const RatPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<Rational> out;
    if (p.is_zero() || p.degree() == 0) return out;
    const RatPoly zp = primitive_scale(p);
    std::size_t low = 0;
    while (zp[low].is_zero()) ++low;
    if (low > 0 && Rational(0) >= lo && Rational(0) <= hi) out.push_back(Rational(0));
    mpz_class a0 = zp[low].num();
    mpz_class an = zp.leading().num();
    a0 = ::abs(a0);
    an = ::abs(an);
    std::vector<mpz_class> ps, qs;
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d;
        for (mpz_class i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                if (i * i != n) d.push_back(n / i);
            }
        return d;
    };
    for (const auto& pn : divisors(a0))
        for (const auto& qn : divisors(an))
            for (int s : {1, -1}) {
                const Rational cand(s * pn, qn);
                if (cand < lo || cand > hi) continue;
                if (p(cand).is_zero() &&
                    std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ekm

#endif
