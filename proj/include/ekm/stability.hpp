#ifndef EKM_STABILITY_HPP
#define EKM_STABILITY_HPP

/* Futaki and modified Futaki invariants of the deformation to the normal
 * cone of the infinity section, at polarization parameter c = z + 1 with
 * z in [-1,1] (the Seshadri constant is 2).
 *
 * Everything reduces to moments of p_c and the partial cone integrals
 *     J_r(z) = int_{-1}^{z} p_c(t) t^r (z - t) dt,
 * and obeys the exact identity  alpha0^2 Fbeta(alpha) = -(alpha0/4) F(z):
 * relative slope stability is positivity of the extremal polynomial.
 *
 * Intermediate quantities are normalized with the same suppressed positive
 * volume factor as the Futaki invariant itself; only signs, vanishing and
 * the final identity are contractual.
 */

#include <utility>
#include <vector>

#include "ekm/classify.hpp"
#include "ekm/errors.hpp"
#include "ekm/extremal.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/roots.hpp"
#include "ekm/setup.hpp"

namespace ekm {

struct StabilityReport {
    Rational z;            // c - 1, in [-1, 1]
    Rational futaki_alpha; // F(alpha)
    Rational futaki_beta;  // F(beta)
    Rational ip_ab;        // <alpha, beta>
    Rational ip_bb;        // <beta, beta>
    Rational modified;     // F_beta(alpha) = F(alpha) - <a,b>/<b,b> F(beta)
};

// All five report quantities as polynomials in z (exact, reusable for both
// pointwise reports and the coefficientwise identity check).
struct StabilityPolynomials {
    ExtremalSolution solution;
    RatPoly j0, j1;       // J_0, J_1
    RatPoly jab;          // int (At+B) p_c (z-t) dt
    RatPoly futaki_alpha; // alpha0^2 F(alpha) as a polynomial in z
    Rational futaki_beta;
    RatPoly ip_ab;
    Rational ip_bb;
    RatPoly modified_scaled; // alpha0^2 F_beta(alpha)
};

inline StabilityPolynomials stability_polynomials(const AdmissibleSetup& setup) {
    StabilityPolynomials out;
    out.solution = extremal_polynomial(setup);
    const Moments& m = out.solution.moments;
    const RatPoly pc = momentum_weight(setup);
    const RatPoly t{Rational(0), Rational(1)};

    out.j0 = cone_integral(pc);
    out.j1 = cone_integral(pc * t);
    out.jab = cone_integral(RatPoly{out.solution.B, out.solution.A} * pc);

    out.ip_bb = (m.alpha2 * m.alpha0 - m.alpha1 * m.alpha1) / m.alpha0;
    out.ip_ab = -out.j1 + (m.alpha1 / m.alpha0) * out.j0;
    out.futaki_beta = (m.beta1 * m.alpha0 - m.beta0 * m.alpha1) / (Rational(2) * m.alpha0 * m.alpha0);

    const Rational quarter(1, 4), half(1, 2);
    out.futaki_alpha = (-quarter * m.alpha0) * out.solution.F +
                       (quarter * m.alpha0) * out.jab + (half * m.beta0) * out.j0;
    out.modified_scaled = out.futaki_alpha -
                          (m.alpha0 * m.alpha0 * out.futaki_beta / out.ip_bb) * out.ip_ab;
    return out;
}

inline StabilityReport stability_report(const AdmissibleSetup& setup, const Rational& z) {
    if (z < Rational(-1) || z > Rational(1))
        throw OutOfRange("stability parameter must satisfy -1 <= z <= 1");
    const StabilityPolynomials p = stability_polynomials(setup);
    const Rational a0 = p.solution.moments.alpha0;

    StabilityReport r;
    r.z = z;
    r.futaki_alpha = p.futaki_alpha(z) / (a0 * a0);
    r.futaki_beta = p.futaki_beta;
    r.ip_ab = p.ip_ab(z);
    r.ip_bb = p.ip_bb;
    r.modified = r.futaki_alpha - (r.ip_ab / r.ip_bb) * r.futaki_beta;
    if (r.modified != -p.solution.F(z) / (Rational(4) * a0))
        throw InternalMismatch("modified Futaki invariant identity violated");
    return r;
}

/* ---- relative slope verdict ---- */

enum class SlopeKind { Stable, UnstableWithWitness, Boundary };

inline const char* to_string(SlopeKind k) {
    switch (k) {
        case SlopeKind::Stable:              return "stable";
        case SlopeKind::UnstableWithWitness: return "unstable-with-witness";
        case SlopeKind::Boundary:            return "boundary";
    }
    return "?";
}

struct SlopeVerdict {
    SlopeKind kind;
    Verdict classification;
    // Boundary only: the isolated repeated root is certified irrational
    // (no rational root of the square-free quotient falls in its interval).
    bool double_root_irrational = false;
    // The refinement of the stability notion at the Seshadri endpoint
    // (rational endpoint + contracted product configuration) is reported,
    // never adjudicated; verdicts concern the open parameter interval.
    bool seshadri_endpoint_unadjudicated = true;
};

inline SlopeVerdict relative_slope_verdict(const AdmissibleSetup& setup) {
    SlopeVerdict v{SlopeKind::Stable, classify(setup), false, true};
    switch (v.classification.kind) {
        case VerdictKind::ExtremalCSC:
        case VerdictKind::ExtremalNonCSC:
            v.kind = SlopeKind::Stable;
            break;
        case VerdictKind::NoExtremalSignChange:
            v.kind = SlopeKind::UnstableWithWitness;
            break;
        case VerdictKind::NoExtremalDoubleRoot: {
            v.kind = SlopeKind::Boundary;
            v.double_root_irrational = true;
            const RatPoly sf = square_free_part(v.classification.quotient);
            for (const auto& iv : v.classification.witness.intervals) {
                if (iv.lo == iv.hi) { v.double_root_irrational = false; break; }
                if (!rational_roots_in(sf, iv.lo, iv.hi).empty()) {
                    v.double_root_irrational = false;
                    break;
                }
            }
            break;
        }
    }
    return v;
}

/* ---- the trapezium-rule device behind the weight expansions ---- */

// max_k |k * (sum_{i=eps}^{bk} f(i/k) - k int_0^b f - (f(b) + (-1)^eps f(0))/2)|
// over 1 <= k <= kmax with b k integral; bounded iff the O(1/k) law holds.
inline Rational trapezium_check(const RatPoly& f, const Rational& b, int eps, int kmax) {
    if (eps != 0 && eps != 1) throw OutOfRange("eps must be 0 or 1");
    if (kmax < 1) throw OutOfRange("kmax must be positive");
    const Rational integral = definite_integral(f, Rational(0), b);
    Rational worst(0);
    bool any = false;
    for (int k = 1; k <= kmax; ++k) {
        const Rational bk = b * Rational(k);
        if (!bk.is_integer() || bk.sign() <= 0) continue;
        any = true;
        const long n = mpz_get_si(bk.num().get_mpz_t());
        Rational sum(0);
        for (long i = eps; i <= n; ++i) sum += f(Rational(i, k));
        const Rational deviation = sum - Rational(k) * integral -
                                   (f(b) + Rational(eps == 0 ? 1 : -1) * f(Rational(0))) / Rational(2);
        const Rational scaled = (Rational(k) * deviation).abs();
        if (scaled > worst) worst = scaled;
    }
    if (!any) throw OutOfRange("no k <= kmax makes b*k a positive integer");
    return worst;
}

} // namespace ekm

#endif
