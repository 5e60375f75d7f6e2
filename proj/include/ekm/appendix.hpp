#ifndef EKM_APPENDIX_HPP
#define EKM_APPENDIX_HPP

/* Closed-form end-factor moments
 *     I(m,n,k) = int_{-1}^{1} (1+t)^m (1-t)^n t^k dt,   k <= 2,
 * the contraction identities between them, the small-x linearization of
 * (A, B), and the integer scan showing the order-2 plane-bundle relations
 *     (eta -+ 1)(beta +- 1) = q^{+-} (3 eta^2 - 2 beta eta - 1)
 * have no solution with |eta| > 1, |beta| < 1 and nonzero integers q^{+-}.
 */

#include <utility>
#include <vector>

#include "ekm/errors.hpp"
#include "ekm/extremal.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/roots.hpp"
#include "ekm/setup.hpp"

namespace ekm {

// I(m,n,k) by closed form, asserted against exact integration.
inline Rational beta_moment_integral(int m, int n, int k) {
    if (m < 0 || n < 0 || k < 0 || k > 2) throw OutOfRange("beta_moment_integral: need m,n >= 0, 0 <= k <= 2");
    const unsigned um = static_cast<unsigned>(m), un = static_cast<unsigned>(n);
    const Rational scale = pow2_rational(um + un + 1) * factorial_rational(um) * factorial_rational(un);
    Rational closed;
    if (k == 0) {
        closed = scale / factorial_rational(um + un + 1);
    } else if (k == 1) {
        closed = scale * Rational(m - n) / factorial_rational(um + un + 2);
    } else {
        const long mn = static_cast<long>(m), nn = static_cast<long>(n);
        closed = scale * Rational(mn * mn + nn * nn + mn + nn - 2 * mn * nn + 2) /
                 factorial_rational(um + un + 3);
    }
    RatPoly p = poly_pow(RatPoly::linear(Rational(1), Rational(1)), um) *
                poly_pow(RatPoly::linear(Rational(1), Rational(-1)), un);
    for (int i = 0; i < k; ++i) p = p * RatPoly{Rational(0), Rational(1)};
    if (closed != definite_integral(p, Rational(-1), Rational(1)))
        throw InternalMismatch("closed form disagrees with exact integration");
    return closed;
}

struct IdentityReport {
    bool k0 = false;     // m^2 I(m-1,n,0) + n^2 I(m,n-1,0) = (1/2) I(m,n,0)(m+n+1)(m+n)
    bool k1 = false;     // ... = (1/2) I(m,n,1)(m+n-1)(m+n+2)
    bool k2 = false;     // ... = (1/2) I(m,n,2)(m+n+3)(m+n) - I(m,n,1)(m-n)
    bool ratio = false;  // I(m,n,1)(m+n+2) = I(m,n,0)(m-n)
    int max_mn = 0;

    bool all() const { return k0 && k1 && k2 && ratio; }
};

inline IdentityReport identity_suite(int max_mn = 10) {
    IdentityReport rep;
    rep.max_mn = max_mn;
    rep.k0 = rep.k1 = rep.k2 = rep.ratio = true;
    const auto I = [](int m, int n, int k) { return beta_moment_integral(m, n, k); };
    for (int m = 0; m <= max_mn; ++m)
        for (int n = 0; n <= max_mn; ++n) {
            const Rational m2(static_cast<long>(m) * m), n2(static_cast<long>(n) * n);
            const Rational lhs0 = (m > 0 ? m2 * I(m - 1, n, 0) : Rational(0)) +
                                  (n > 0 ? n2 * I(m, n - 1, 0) : Rational(0));
            if (lhs0 != Rational(1, 2) * I(m, n, 0) * Rational(m + n + 1) * Rational(m + n))
                rep.k0 = false;
            const Rational lhs1 = (m > 0 ? m2 * I(m - 1, n, 1) : Rational(0)) +
                                  (n > 0 ? n2 * I(m, n - 1, 1) : Rational(0));
            if (lhs1 != Rational(1, 2) * I(m, n, 1) * Rational(m + n - 1) * Rational(m + n + 2))
                rep.k1 = false;
            const Rational lhs2 = (m > 0 ? m2 * I(m - 1, n, 2) : Rational(0)) +
                                  (n > 0 ? n2 * I(m, n - 1, 2) : Rational(0));
            if (lhs2 != Rational(1, 2) * I(m, n, 2) * Rational(m + n + 3) * Rational(m + n) -
                            I(m, n, 1) * Rational(m - n))
                rep.k2 = false;
            if (I(m, n, 1) * Rational(m + n + 2) != I(m, n, 0) * Rational(m - n))
                rep.ratio = false;
        }
    return rep;
}

/* ---- small-x linearization of (A, B) ---- */

struct AsymptoticAB {
    Rational A_lin;   // -2 (2+d0+dinf) sum d_a x_a
    Rational B_const; // -(1+d0+dinf)(2+d0+dinf)
    Rational B_lin;   // -2 sum d_a s_a x_a + 2 (d0-dinf) sum d_a x_a
};

inline AsymptoticAB asymptotic_AB(const AdmissibleSetup& setup) {
    Rational sum_dx(0), sum_dsx(0);
    for (const auto& f : setup.factors) {
        sum_dx += Rational(f.dim) * f.x;
        sum_dsx += Rational(f.dim) * f.s * f.x;
    }
    AsymptoticAB a;
    a.A_lin = Rational(-2) * Rational(2 + setup.d0 + setup.dinf) * sum_dx;
    a.B_const = -Rational(1 + setup.d0 + setup.dinf) * Rational(2 + setup.d0 + setup.dinf);
    a.B_lin = Rational(-2) * sum_dsx + Rational(2) * Rational(setup.d0 - setup.dinf) * sum_dx;
    return a;
}

// setup with every x_a scaled by eps (s_a fixed).
inline AdmissibleSetup scale_class(const AdmissibleSetup& setup, const Rational& eps) {
    AdmissibleSetup out = setup;
    for (auto& f : out.factors) {
        f.x = f.x * eps;
        f.integrality.reset();
    }
    return out;
}

/* ---- order-2 integer scan ---- */

struct Order2Hit {
    long qplus = 0, qminus = 0;
    RootInterval eta;   // isolating interval for eta, |eta| > 1
    Rational beta;      // rational function of eta at the interval midpoint
};

struct Order2Scan {
    int range = 0;
    std::vector<Order2Hit> hits;
    bool region_infeasible = false; // integer-region characterization check
    long pairs_scanned = 0;
    long eta_candidates = 0; // elimination roots with |eta| > 1 (pre beta test)
};

namespace detail {

// beta = N(eta)/D(eta) for each relation; admissibility needs |beta| < 1.
struct Order2Relation {
    RatPoly N, D;
};

inline Order2Relation order2_relation_plus(long q) {
    // (eta-1)(beta+1) = q (3 eta^2 - 2 beta eta - 1)
    // beta (eta - 1 + 2 q eta) = 3 q eta^2 - q - eta + 1
    return {RatPoly{Rational(1 - q), Rational(-1), Rational(3 * q)},
            RatPoly{Rational(-1), Rational(1 + 2 * q)}};
}

inline Order2Relation order2_relation_minus(long q) {
    // (eta+1)(beta-1) = q (3 eta^2 - 2 beta eta - 1)
    // beta (eta + 1 + 2 q eta) = 3 q eta^2 - q + eta + 1
    return {RatPoly{Rational(1 - q), Rational(1), Rational(3 * q)},
            RatPoly{Rational(1), Rational(1 + 2 * q)}};
}

// Sign of poly at the root of sqfree isolated by iv, refining on demand.
inline int sign_at_root(const RatPoly& poly, const RatPoly& sqfree, RootInterval iv) {
    if (iv.lo == iv.hi) return poly(iv.lo).sign();
    const RatPoly g = poly_gcd(poly, sqfree);
    if (g.degree() > 0) {
        // poly might vanish at the root exactly.
        const RootWitness shared = count_roots_open(g, iv.lo, iv.hi);
        if (shared.count > 0) return 0;
    }
    while (true) {
        const int slo = poly(iv.lo).sign(), shi = poly(iv.hi).sign();
        if (slo == shi && slo != 0) return slo;
        iv = refine_root(sqfree, iv, (iv.hi - iv.lo) / Rational(4));
        if (iv.lo == iv.hi) return poly(iv.lo).sign();
    }
}

} // namespace detail

inline Order2Scan order2_scan(int range) {
    if (range < 1) throw OutOfRange("order2_scan: range must be >= 1");
    Order2Scan scan;
    scan.range = range;

    // Integer-region infeasibility: q+ > 0, q- < 0, 2 q+ - q- < 1 forces
    // 2 q+ < 1 + q- <= 0, impossible for q+ >= 1 (and symmetrically with
    // plus and minus swapped).
    scan.region_infeasible = true;
    for (long qp = -range; qp <= range; ++qp)
        for (long qm = -range; qm <= range; ++qm) {
            if (qp == 0 || qm == 0) continue;
            if (qp > 0 && qm < 0 && 2 * qp - qm < 1) scan.region_infeasible = false;
            if (qm > 0 && qp < 0 && 2 * qm - qp < 1) scan.region_infeasible = false;
        }

    for (long qp = -range; qp <= range; ++qp) {
        if (qp == 0) continue;
        for (long qm = -range; qm <= range; ++qm) {
            if (qm == 0) continue;
            ++scan.pairs_scanned;
            const auto rp = detail::order2_relation_plus(qp);
            const auto rm = detail::order2_relation_minus(qm);
            const RatPoly elim = rp.N * rm.D - rm.N * rp.D;
            if (elim.is_zero()) {
                // Both relations reduce to beta = eta (only at q+ = q- = 1),
                // incompatible with |eta| > 1 and |beta| < 1.
                continue;
            }
            const Rational bound = root_bound(elim) + Rational(1);
            for (const auto& side : {std::pair<Rational, Rational>{Rational(1), bound},
                                     std::pair<Rational, Rational>{-bound, Rational(-1)}}) {
                const RootWitness w = count_roots_open(elim, side.first, side.second);
                if (w.count == 0) continue;
                scan.eta_candidates += w.count;
                const RatPoly sf = square_free_part(elim);
                for (const auto& iv : w.intervals) {
                    // Reject when |beta| >= 1: sign test of D^2 - N^2 at eta.
                    const RatPoly margin = rp.D * rp.D - rp.N * rp.N;
                    const int s = detail::sign_at_root(margin, sf, iv);
                    // Also reject poles of beta (D vanishing at eta).
                    const int ds = detail::sign_at_root(rp.D, sf, iv);
                    if (s <= 0 || ds == 0) continue;
                    Order2Hit hit;
                    hit.qplus = qp;
                    hit.qminus = qm;
                    hit.eta = iv;
                    const Rational mid = (iv.lo + iv.hi) / Rational(2);
                    hit.beta = rp.N(mid) / rp.D(mid);
                    scan.hits.push_back(hit);
                }
            }
        }
    }
    return scan;
}

} // namespace ekm

#endif
