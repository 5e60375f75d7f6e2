#ifndef EKM_CLASSIFY_HPP
#define EKM_CLASSIFY_HPP

/* Existence of extremal / CSC metrics in an admissible class.
 *
 * The test: write F(z) = (1+z)^(d0+1) (1-z)^(dinf+1) Q(z) (the division is
 * exact for every valid setup) and certify the sign of Q on (-1,1) by exact
 * root isolation. Q(+-1) = prod_a (1 +- x_a)^dim_a > 0 automatically, so
 *   - no interior root            -> extremal exists, CSC iff A = 0,
 *   - only even-parity roots      -> none (boundary case, F >= 0 with a
 *                                    repeated interior root),
 *   - some odd-parity root        -> none (sign change).
 *
 * The low-dimensional closed forms live here too (curve and Hodge-4 bases,
 * the CSC locus over a product of two curves) together with the
 * destabilizing three-curve family whose repeated root is irrational.
 */

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ekm/errors.hpp"
#include "ekm/extremal.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/roots.hpp"
#include "ekm/setup.hpp"

namespace ekm {

enum class VerdictKind {
    ExtremalCSC,
    ExtremalNonCSC,
    NoExtremalDoubleRoot,
    NoExtremalSignChange,
};

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::ExtremalCSC:          return "ExtremalCSC";
        case VerdictKind::ExtremalNonCSC:       return "ExtremalNonCSC";
        case VerdictKind::NoExtremalDoubleRoot: return "NoExtremalDoubleRoot";
        case VerdictKind::NoExtremalSignChange: return "NoExtremalSignChange";
    }
    return "?";
}

inline bool extremal_exists(VerdictKind k) {
    return k == VerdictKind::ExtremalCSC || k == VerdictKind::ExtremalNonCSC;
}

struct Verdict {
    VerdictKind kind;
    ExtremalSolution solution;
    RatPoly quotient;    // Q with F = (1+z)^(d0+1) (1-z)^(dinf+1) Q
    RootWitness witness; // distinct roots of Q in (-1,1)
};

inline Verdict classify(const AdmissibleSetup& setup) {
    Verdict v{VerdictKind::ExtremalNonCSC, extremal_polynomial(setup), RatPoly(), RootWitness{}};

    RatPoly deflator = poly_pow(RatPoly::linear(Rational(1), Rational(1)),
                                static_cast<unsigned>(setup.d0 + 1)) *
                       poly_pow(RatPoly::linear(Rational(1), Rational(-1)),
                                static_cast<unsigned>(setup.dinf + 1));
    try {
        v.quotient = div_exact(v.solution.F, deflator);
    } catch (const DivisionNotExact&) {
        throw DeflationFailed("extremal polynomial not divisible by its end-factor profile");
    }
    if (v.quotient(Rational(1)).sign() <= 0 || v.quotient(Rational(-1)).sign() <= 0)
        throw DeflationFailed("deflated quotient not positive at the endpoints");

    v.witness = count_roots_open(v.quotient, Rational(-1), Rational(1));
    if (v.witness.count == 0) {
        v.kind = v.solution.A.is_zero() ? VerdictKind::ExtremalCSC : VerdictKind::ExtremalNonCSC;
        return v;
    }
    for (const auto& iv : v.witness.intervals)
        if (iv.multiplicity_parity == Parity::Odd) {
            v.kind = VerdictKind::NoExtremalSignChange;
            return v;
        }
    v.kind = VerdictKind::NoExtremalDoubleRoot;
    return v;
}

/* ---- projective bundles over a Riemann surface (base dimension 1) ---- */

// c(s,x) for F = (1+z)^(d0+1) (1-z)^(dinf+1) ((1+xz) + c (1-z^2)).
// The formula extends continuously to x = +-1 (used for the boundary values).
inline Rational ruled_surface_c(int d0, int dinf, const Rational& s, const Rational& x) {
    const Rational e0 = Rational(d0) * (Rational(1) + x);
    const Rational einf = Rational(dinf) * (Rational(1) - x);
    const Rational num = Rational(-2) * x * x * (Rational(2) + e0 + einf - s * x);
    const Rational den = (Rational(2) + e0 + einf) * (Rational(4) + e0 + einf) +
                         Rational(4 + d0 + dinf) * (Rational(1) - x * x);
    return num / den;
}

// Exact flip threshold in x (for s outside [-d0(d0+1), dinf(dinf+1)]): the
// smallest |x| past which the class stops carrying an extremal metric.
// Isolated as a root of the numerator of 4c^2 + 4c + x^2 (the interior
// minimum of Q = (1+xz) + c(1-z^2) touching zero); roots whose minimum
// sits outside (-1,1) are discarded by re-classifying on both sides.
// There is no closed form to assert.
inline std::optional<RootInterval> ruled_surface_threshold(int d0, int dinf, const Rational& s,
                                                           bool positive_x = true,
                                                           const Rational& width = Rational(1, 1000000)) {
    // c(s,x) = N(x) / D(x) as polynomials in x.
    const RatPoly x{Rational(0), Rational(1)};
    const RatPoly one = RatPoly::one();
    const RatPoly e0 = Rational(d0) * (one + x);
    const RatPoly einf = Rational(dinf) * (one - x);
    const RatPoly N = Rational(-2) * x * x * (Rational(2) * one + e0 + einf - s * x);
    const RatPoly D = (Rational(2) * one + e0 + einf) * (Rational(4) * one + e0 + einf) +
                      Rational(4 + d0 + dinf) * (one - x * x);
    // 4 N^2 + 4 N D + x^2 D^2 = 0  <=>  min of Q vanishes.
    const RatPoly crit = Rational(4) * N * N + Rational(4) * N * D + x * x * D * D;
    const RootWitness w = count_roots_open(crit, positive_x ? Rational(0) : Rational(-1),
                                           positive_x ? Rational(1) : Rational(0));
    const auto exists_at = [&](const Rational& xs) {
        AdmissibleSetup setup;
        setup.d0 = d0;
        setup.dinf = dinf;
        setup.factors = {{1, xs, s, std::nullopt}};
        return extremal_exists(classify(setup).kind);
    };
    // Walk outward from x = 0; the threshold is the first root with an
    // extremal class on the near side and none on the far side.
    std::vector<RootInterval> ordered = w.intervals;
    if (!positive_x) std::reverse(ordered.begin(), ordered.end());
    for (const auto& iv : ordered) {
        const RootInterval tight = refine_root(square_free_part(crit), iv, width);
        Rational near = tight.lo - (tight.lo == tight.hi ? width : Rational(0));
        Rational far = tight.hi + (tight.lo == tight.hi ? width : Rational(0));
        if (!positive_x) std::swap(near, far);
        if (near.is_zero() || near.abs() >= Rational(1) || far.is_zero() || far.abs() >= Rational(1))
            continue;
        if (exists_at(near) && !exists_at(far)) return tight;
    }
    return std::nullopt;
}

/* ---- projective bundles over a Hodge 4-manifold (base dimension 2) ---- */

struct Hodge4Coefficients {
    Rational c, e; // F = (1+z)^(d0+1) (1-z)^(dinf+1) ((1+xz)^2 + (cz+e)(1-z^2))
    Rational n, d; // closed forms with c = n/d, d > 0 for |x| < 1
};

inline Hodge4Coefficients hodge4_coefficients(int d0, int dinf, const Rational& s, const Rational& x) {
    const RatPoly ends = poly_pow(RatPoly::linear(Rational(1), Rational(1)),
                                  static_cast<unsigned>(d0 + 1)) *
                         poly_pow(RatPoly::linear(Rational(1), Rational(-1)),
                                  static_cast<unsigned>(dinf + 1));
    const RatPoly lin = RatPoly::linear(Rational(1), x);
    const RatPoly onemz2 = RatPoly{Rational(1), Rational(0), Rational(-1)};
    const RatPoly base = ends * lin * lin;
    const RatPoly fc = ends * RatPoly{Rational(0), Rational(1)} * onemz2;
    const RatPoly fe = ends * onemz2;

    // Two linear conditions on (c,e):
    //   F''(-1/x) = 0
    //   (F''(z)/(1+xz)) at z = -1/x  =  4 s x (1-1/x)^d0 (1+1/x)^dinf
    const Rational pole = Rational(-1) / x;
    const auto second = [&](const RatPoly& p) {
        auto [q, r] = divmod(p.derivative().derivative(), lin);
        (void)r; // remainder is the first condition's business
        return q(pole);
    };
    const Rational a11 = fc.derivative().derivative()(pole);
    const Rational a12 = fe.derivative().derivative()(pole);
    const Rational b1 = -base.derivative().derivative()(pole);
    const Rational a21 = second(fc);
    const Rational a22 = second(fe);
    const Rational rhs = Rational(4) * s * x *
                         pow(Rational(1) - Rational(1) / x, static_cast<unsigned>(d0)) *
                         pow(Rational(1) + Rational(1) / x, static_cast<unsigned>(dinf)) -
                         second(base);
    const Rational det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw SingularSystem("degenerate (c,e) system");
    Hodge4Coefficients out;
    out.c = (b1 * a22 - a12 * rhs) / det;
    out.e = (a11 * rhs - b1 * a21) / det;

    // Closed forms.
    const Rational u = Rational(d0) * (Rational(1) + x);
    const Rational v = Rational(dinf) * (Rational(1) - x);
    const Rational uv = u + v;
    out.d = Rational(dinf + 1) * Rational(dinf + 2) * Rational(dinf + 2) * Rational(dinf + 3) *
                pow(Rational(1) - x, 4) +
            Rational(4) * Rational(d0 + 2) * Rational(dinf + 1) * Rational(dinf + 2) * Rational(dinf + 3) *
                pow(Rational(1) - x, 3) * (Rational(1) + x) +
            Rational(6) * Rational(d0 + 2) * Rational(dinf + 2) *
                (Rational(4 + d0 + dinf) + Rational(d0 + 1) * Rational(dinf + 1)) *
                pow(Rational(1) - x, 2) * pow(Rational(1) + x, 2) +
            Rational(4) * Rational(d0 + 1) * Rational(d0 + 2) * Rational(d0 + 3) * Rational(dinf + 2) *
                (Rational(1) - x) * pow(Rational(1) + x, 3) +
            Rational(d0 + 1) * Rational(d0 + 2) * Rational(d0 + 2) * Rational(d0 + 3) *
                pow(Rational(1) + x, 4);
    out.n = Rational(-4) * x * x * x *
            (Rational(4) * (Rational(6) - Rational(3) * s * x + s * x * x * x) +
             Rational(d0) * (Rational(1) + x) *
                 ((Rational(5) - x) * (Rational(1) + x) + (Rational(7) - x) * (Rational(3) - s * x)) +
             Rational(dinf) * (Rational(1) - x) *
                 ((Rational(5) + x) * (Rational(1) - x) + (Rational(7) + x) * (Rational(3) - s * x)) +
             (Rational(9) - s * x) * uv * uv + uv * uv * uv);
    if (out.c != out.n / out.d)
        throw InternalMismatch("hodge4: solved c disagrees with the closed form n/d");
    return out;
}

/* ---- CSC locus over a product of two Riemann surfaces ---- */

// Exact residuals of the two CSC relations and the eliminated hypersurface.
// Scal = 6 s for a solution.
struct CscResiduals {
    Rational r1, r2, h;
};

inline CscResiduals csc_system_residuals(const Rational& x1, const Rational& x2, const Rational& s,
                                         const Rational& s1, const Rational& s2) {
    CscResiduals r;
    r.r1 = x1 * (s1 * (x1 - x2) - Rational(2) + (Rational(1) - s) * x1 * x2) +
           Rational(3) * (s - Rational(1)) * x2;
    r.r2 = x2 * (s2 * (x2 - x1) - Rational(2) + (Rational(1) - s) * x1 * x2) +
           Rational(3) * (s - Rational(1)) * x1;
    r.h = x1 * (Rational(6) + s1 * x1 * (x2 * x2 - Rational(3))) +
          x2 * (Rational(6) + s2 * x2 * (x1 * x1 - Rational(3)));
    return r;
}

// s solving the first CSC relation for given (x1, x2).
inline Rational csc_scalar_from_relation(const Rational& x1, const Rational& x2, const Rational& s1) {
    const Rational den = x2 * (Rational(3) - x1 * x1);
    if (den.is_zero()) throw OutOfRange("csc scalar: degenerate (x1, x2)");
    return (Rational(2) * x1 + Rational(3) * x2 - x1 * x1 * x2 - s1 * x1 * (x1 - x2)) / den;
}

struct CscLocusPoint {
    Rational x1;
    Rational x2;   // exact root, or refined midpoint of an isolating interval
    Rational s;    // Scal = 6 s
    bool exact;    // x2 is an exact rational root of the hypersurface
    Rational r1, r2;
    bool confirmed_csc = false; // classify() returned ExtremalCSC (exact points, s >= 0)
};

inline std::vector<CscLocusPoint> csc_locus_scan(const Rational& s1, const Rational& s2, int steps) {
    if (steps < 2) throw OutOfRange("csc_locus_scan: need at least 2 grid steps");
    std::vector<CscLocusPoint> out;
    const Rational one(1);
    for (int i = 1; i < steps; ++i) {
        const Rational x1(i, steps);
        // Hypersurface as a polynomial in x2:
        //   (s1 x1^2 + s2 (x1^2 - 3)) x2^2 + 6 x2 + (6 x1 - 3 s1 x1^2) = 0
        const RatPoly h{Rational(6) * x1 - Rational(3) * s1 * x1 * x1, Rational(6),
                        s1 * x1 * x1 + s2 * (x1 * x1 - Rational(3))};
        if (h.is_zero()) continue;

        std::vector<std::pair<Rational, bool>> roots; // (value-or-midpoint, exact)
        if (h.degree() == 1) {
            roots.emplace_back(-h[0] / h[1], true);
        } else if (h.degree() == 2) {
            const Rational disc = h[1] * h[1] - Rational(4) * h[2] * h[0];
            if (disc.sign() < 0) continue;
            mpz_class sn, sd;
            const bool num_sq = mpz_perfect_square_p(disc.num().get_mpz_t()) != 0;
            const bool den_sq = mpz_perfect_square_p(disc.den().get_mpz_t()) != 0;
            if (num_sq && den_sq) {
                mpz_sqrt(sn.get_mpz_t(), disc.num().get_mpz_t());
                mpz_sqrt(sd.get_mpz_t(), disc.den().get_mpz_t());
                const Rational root(sn, sd);
                roots.emplace_back((-h[1] + root) / (Rational(2) * h[2]), true);
                if (!root.is_zero())
                    roots.emplace_back((-h[1] - root) / (Rational(2) * h[2]), true);
            } else {
                const RootWitness w = count_roots_open(h, -one, one);
                for (const auto& iv : w.intervals) {
                    const auto r = refine_root(square_free_part(h), iv, Rational(1, 4) / Rational(steps));
                    roots.emplace_back((r.lo + r.hi) / Rational(2), false);
                }
            }
        }

        for (const auto& [x2, exact] : roots) {
            if (x2.is_zero() || !(x2.abs() < one) || x2 == x1) continue;
            CscLocusPoint pt;
            pt.x1 = x1;
            pt.x2 = x2;
            pt.exact = exact;
            pt.s = csc_scalar_from_relation(x1, x2, s1);
            const CscResiduals res = csc_system_residuals(x1, x2, pt.s, s1, s2);
            pt.r1 = res.r1;
            pt.r2 = res.r2;
            if (exact && !res.r2.is_zero()) continue; // spurious elimination root
            if (exact && pt.s.sign() >= 0) {
                AdmissibleSetup setup;
                setup.factors = {{1, x1, s1, std::nullopt}, {1, x2, s2, std::nullopt}};
                const Verdict v = classify(setup);
                if (v.kind != VerdictKind::ExtremalCSC)
                    throw TheoremViolated("CSC locus point with s >= 0 did not classify as ExtremalCSC");
                pt.confirmed_csc = true;
            }
            out.push_back(pt);
        }
    }
    return out;
}

/* ---- zero scalar curvature over a product of two Riemann surfaces ---- */

struct ScalarFlatPoint {
    Rational x1, x2;
    Rational r1, r2; // residuals of the two CSC relations at s = 0
};

// Intersection of x2 = f1(x1) with x1 = f2(x2) in (0,1) x (-1,0), located by
// exact-sign bisection to the given tolerance. This is the one operation in
// the library with a numeric (non-certified) answer.
inline ScalarFlatPoint zero_scalar_intersection(const Rational& s1, const Rational& s2,
                                                const Rational& tol) {
    if (!(s1 <= Rational(0)) || !(Rational(0) < s2))
        throw NoIntersectionFound("zero_scalar_intersection requires s1 <= 0 < s2");
    if (tol.sign() <= 0) throw OutOfRange("tolerance must be positive");

    const auto f = [](const Rational& v, const Rational& s) {
        // v (2 - s v) / (v^2 - s v - 3); denominator negative near v = 0.
        return v * (Rational(2) - s * v) / (v * v - s * v - Rational(3));
    };
    // phi(x1) = f2(f1(x1)) - x1, with +1 as a sentinel sign once x2 = f1(x1)
    // leaves (-1, 0) or crosses f2's pole (where f2 -> +infinity).
    const auto denom2 = [&](const Rational& x2) { return x2 * x2 - s2 * x2 - Rational(3); };
    const auto phi_sign = [&](const Rational& x1) -> int {
        const Rational d1 = x1 * x1 - s1 * x1 - Rational(3);
        if (d1.sign() >= 0) return +1;
        const Rational x2 = f(x1, s1);
        if (!(x2 < Rational(0)) || !(Rational(-1) < x2)) return +1;
        if (denom2(x2).sign() >= 0) return +1;
        return (f(x2, s2) - x1).sign();
    };

    // Bracket the sign change; phi < 0 for small x1 > 0.
    const int grid = 64;
    Rational lo(0), hi(0);
    bool bracketed = false;
    for (int i = 1; i <= grid; ++i) {
        const Rational x1(i, grid + 1);
        const int s = phi_sign(x1);
        if (s < 0) lo = x1;
        if (s < 0) continue;
        if (lo.is_zero()) continue; // still positive before any negative seen
        hi = x1;
        bracketed = true;
        break;
    }
    if (!bracketed) throw NoIntersectionFound("no sign change of the intersection function");

    while (hi - lo > tol) {
        const Rational mid = (lo + hi) / Rational(2);
        if (phi_sign(mid) < 0) lo = mid; else hi = mid;
    }
    ScalarFlatPoint p;
    p.x1 = (lo + hi) / Rational(2);
    p.x2 = f(p.x1, s1);
    const CscResiduals res = csc_system_residuals(p.x1, p.x2, Rational(0), s1, s2);
    p.r1 = res.r1;
    p.r2 = res.r2;
    return p;
}

/* ---- degree obstruction for sums of line bundles over a curve ---- */

// True iff CSC is excluded: genus >= 2 with a degree gap exceeding genus-1,
// or genus <= 1 with unequal degrees.
inline bool rscase_obstruction(int genus, const std::vector<long>& degrees) {
    if (degrees.empty()) throw OutOfRange("rscase_obstruction: need at least one degree");
    long lo = degrees.front(), hi = degrees.front();
    for (long d : degrees) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (genus <= 1) return hi != lo;
    return hi - lo > genus - 1;
}

/* ---- the destabilizing three-curve family ---- */

struct Counterexample {
    AdmissibleSetup setup;
    Rational x3;
    Rational mu;      // F = mu (1-z^2) (z^2 + r z - 1)^2
    RatPoly F;
    RootWitness certificate; // the repeated root of F in (0,1)
    bool region_valid = false; // s_a x_a < 0 for all a
};

// The three-curve family data, with the validity region reported rather
// than enforced. The target profile is reproduced through the moment
// construction as a hard cross-check.
inline Counterexample counterexample_family(const Rational& x1, const Rational& x2, const Rational& r) {
    if (!(Rational(0) < x2) || !(x2 < x1) || !(x1 < Rational(1)))
        throw ConstraintViolated("need 1 > x1 > x2 > 0");
    if (!(r > Rational(8, 5)))
        throw ConstraintViolated("need r > 8/5");

    Counterexample out;
    out.x3 = -(x1 + x2) / (Rational(1) + x1 * x2);
    const Rational xs[3] = {x1, x2, out.x3};

    const RatPoly quad = RatPoly{Rational(-1), r, Rational(1)};
    const RatPoly shape = RatPoly{Rational(1), Rational(0), Rational(-1)} * quad * quad;

    RatPoly pc = RatPoly::one();
    for (const auto& x : xs) pc = pc * RatPoly::linear(Rational(1), x);
    // F'(-1) = 2 p_c(-1) fixes the overall scale; F'(1) = -2 p_c(1) then
    // holds because x3 satisfies x1 x2 x3 + x1 + x2 + x3 = 0.
    out.mu = Rational(2) * pc(Rational(-1)) / shape.derivative()(Rational(-1));
    out.F = out.mu * shape;
    if (out.mu.sign() <= 0 || out.F.derivative()(Rational(1)) != Rational(-2) * pc(Rational(1)))
        throw InternalMismatch("counterexample: boundary condition at z = 1 failed");

    // Normalized curvatures from F''(-1/x_a) = 2 s_a x_a prod_{b!=a} (1 - x_b/x_a),
    // the product running over the other two curve factors.
    const RatPoly fpp = out.F.derivative().derivative();
    out.setup.d0 = out.setup.dinf = 0;
    out.region_valid = true;
    for (int a = 0; a < 3; ++a) {
        Rational prod(1);
        for (int b = 0; b < 3; ++b) {
            if (b == a) continue;
            prod *= Rational(1) - xs[b] / xs[a];
        }
        const Rational s = fpp(Rational(-1) / xs[a]) / (Rational(2) * xs[a] * prod);
        if ((s * xs[a]).sign() >= 0) out.region_valid = false;
        out.setup.factors.push_back({1, xs[a], s, std::nullopt});
    }

    const ExtremalSolution sol = extremal_polynomial(out.setup);
    if (sol.F != out.F)
        throw InternalMismatch("counterexample: extremal polynomial does not reproduce the target");

    out.certificate = count_roots_open(div_exact(out.F, RatPoly{Rational(1), Rational(0), Rational(-1)}),
                                       Rational(0), Rational(1));
    return out;
}

inline Counterexample counterexample_setup(const Rational& x1, const Rational& x2, const Rational& r) {
    Counterexample out = counterexample_family(x1, x2, r);
    if (!out.region_valid) {
        std::string detail = "family parameters outside the validity region:";
        for (const auto& f : out.setup.factors)
            detail += " s*x = " + (f.s * f.x).to_string();
        throw ConstraintViolated(detail);
    }
    return out;
}

/* ---- theorem guard used as a property check ---- */

// Nonnegative CSC base => every admissible class carries an extremal metric.
inline void nonneg_base_fastpath(const AdmissibleSetup& setup) {
    if (!nonnegative_base(setup)) throw OutOfRange("fastpath precondition: s_a x_a >= 0");
    if (!extremal_exists(classify(setup).kind))
        throw TheoremViolated("nonnegative base did not classify as extremal");
}

} // namespace ekm

#endif
