#ifndef EKM_EXTREMAL_HPP
#define EKM_EXTREMAL_HPP

/* The extremal polynomial F(z) of an admissible class and everything
 * attached to it: moments of the momentum weight, the affine coefficients
 * (A, B) of the projected scalar curvature Scal + A z + B, the Futaki
 * invariant, and the scalar-curvature / momentum profiles.
 *
 * F is the unique polynomial with
 *     F''(z) = (A z + B + sum_a 2 dim_a s_a x_a / (1 + x_a z)) p_c(z),
 *     F(-1) = F(1) = 0,
 * which then satisfies F'(+-1) = -+ 2 p_c(+-1). The right-hand side is a
 * polynomial: (1 + x_a z) divides p_c whenever dim_a >= 1.
 */

#include <utility>
#include <vector>

#include "ekm/errors.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/setup.hpp"

namespace ekm {

struct Moments {
    Rational alpha0, alpha1, alpha2; // alpha_r = int_{-1}^{1} p_c(t) t^r dt
    Rational beta0, beta1;           // beta_r = p_c(1) + (-1)^r p_c(-1) + curvature term
};

namespace detail {

// sum_a dim_a s_a x_a p_c(z) / (1 + x_a z), expanded exactly.
inline RatPoly curvature_sum(const AdmissibleSetup& setup, const RatPoly& pc) {
    RatPoly total;
    for (const auto& f : hat_factors(setup)) {
        if (f.dim == 0) continue;
        const RatPoly quotient = div_exact(pc, RatPoly::linear(Rational(1), f.x));
        total = total + (Rational(f.dim) * f.s * f.x) * quotient;
    }
    return total;
}

} // namespace detail

inline Moments moments(const AdmissibleSetup& setup) {
    const RatPoly pc = momentum_weight(setup);
    const RatPoly t{Rational(0), Rational(1)};
    Moments m;
    m.alpha0 = definite_integral(pc, Rational(-1), Rational(1));
    m.alpha1 = definite_integral(pc * t, Rational(-1), Rational(1));
    m.alpha2 = definite_integral(pc * t * t, Rational(-1), Rational(1));
    const RatPoly curv = detail::curvature_sum(setup, pc);
    m.beta0 = pc(Rational(1)) + pc(Rational(-1)) + definite_integral(curv, Rational(-1), Rational(1));
    m.beta1 = pc(Rational(1)) - pc(Rational(-1)) + definite_integral(curv * t, Rational(-1), Rational(1));
    // Strict Cauchy-Schwarz: p_c > 0 on (-1,1) and 1, t are independent.
    if (m.alpha0.sign() <= 0 || (m.alpha0 * m.alpha2 - m.alpha1 * m.alpha1).sign() <= 0)
        throw InternalMismatch("moment inequalities violated; setup is not admissible");
    return m;
}

// Unique solution of A alpha1 + B alpha0 = -2 beta0, A alpha2 + B alpha1 = -2 beta1.
inline std::pair<Rational, Rational> solve_affine_coefficients(const Moments& m) {
    const Rational det = m.alpha0 * m.alpha2 - m.alpha1 * m.alpha1;
    if (det.is_zero()) throw SingularSystem("moment matrix is singular");
    const Rational A = (Rational(-2) * m.beta1 * m.alpha0 + Rational(2) * m.beta0 * m.alpha1) / det;
    const Rational B = (Rational(-2) * m.beta0 * m.alpha2 + Rational(2) * m.beta1 * m.alpha1) / det;
    return {A, B};
}

inline Rational futaki_invariant(const Moments& m) {
    return Rational(2) * (m.alpha0 * m.beta1 - m.alpha1 * m.beta0) / (m.alpha0 * m.alpha0);
}

struct ExtremalSolution {
    Moments moments;
    Rational A; // coefficient of z in the affine part of the projected Scal
    Rational B; // constant coefficient
    RatPoly F;  // extremal polynomial, degree <= m+2
    Rational futaki;
};

// int_{-1}^{z} g(t) (z - t) dt as a polynomial in z.
inline RatPoly cone_integral(const RatPoly& g) {
    const RatPoly g1 = g.antiderivative();
    const RatPoly g2 = (g * RatPoly{Rational(0), Rational(1)}).antiderivative();
    const Rational g1m = g1(Rational(-1));
    const Rational g2m = g2(Rational(-1));
    return RatPoly{Rational(0), Rational(1)} * g1 - g2 - RatPoly{Rational(0), g1m} + RatPoly{g2m};
}

inline ExtremalSolution extremal_polynomial(const AdmissibleSetup& setup) {
    ExtremalSolution sol;
    sol.moments = moments(setup);
    std::tie(sol.A, sol.B) = solve_affine_coefficients(sol.moments);
    sol.futaki = futaki_invariant(sol.moments);

    const RatPoly pc = momentum_weight(setup);
    const RatPoly rhs = RatPoly{sol.B, sol.A} * pc +
                        Rational(2) * detail::curvature_sum(setup, pc);

    // Double antiderivative pinned by F(-1) = F(1) = 0.
    const RatPoly h = rhs.antiderivative().antiderivative();
    const Rational c1 = (h(Rational(-1)) - h(Rational(1))) / Rational(2);
    const Rational c0 = -(h(Rational(1)) + h(Rational(-1))) / Rational(2);
    sol.F = h + RatPoly{c0, c1};

    // Independent reconstruction through the initial value problem at z = -1.
    const RatPoly ivp = RatPoly{Rational(2), Rational(2)} * pc(Rational(-1)) + cone_integral(rhs);
    if (ivp != sol.F)
        throw InternalMismatch("extremal polynomial: IVP and two-point constructions disagree");

    // Boundary conditions F(+-1) = 0, F'(+-1) = -+ 2 p_c(+-1).
    const RatPoly fp = sol.F.derivative();
    if (!sol.F(Rational(1)).is_zero() || !sol.F(Rational(-1)).is_zero() ||
        fp(Rational(1)) != Rational(-2) * pc(Rational(1)) ||
        fp(Rational(-1)) != Rational(2) * pc(Rational(-1)))
        throw InternalMismatch("extremal polynomial: boundary conditions violated");

    // Degree bound and the leading-coefficient tie to A.
    const int m = setup.complex_dimension();
    if (sol.F.degree() > m + 2)
        throw InternalMismatch("extremal polynomial: degree exceeds m+2");
    if (sol.A.is_zero() != (sol.F.degree() <= m + 1) || sol.A.is_zero() != sol.futaki.is_zero())
        throw InternalMismatch("extremal polynomial: A / degree / Futaki linkage violated");

    return sol;
}

/* Scalar curvature of the metric with profile F:
 *     Scal(z) = sum_a 2 dim_a s_a x_a / (1 + x_a z) - F''(z) / p_c(z),
 * evaluated exactly at rational points. For F the extremal polynomial this
 * is the affine function -(A z + B).
 */
class ScalarCurvatureProfile {
public:
    ScalarCurvatureProfile(const AdmissibleSetup& setup, RatPoly f)
        : factors_(hat_factors(setup)), pc_(momentum_weight(setup)), fpp_(f.derivative().derivative()) {}

    Rational operator()(const Rational& z) const {
        const Rational pcz = pc_(z);
        if (pcz.is_zero()) throw PoleAtQuery("momentum weight vanishes at query point");
        Rational sum(0);
        for (const auto& f : factors_) {
            if (f.dim == 0) continue;
            const Rational den = Rational(1) + f.x * z;
            if (den.is_zero()) throw PoleAtQuery("curvature term pole at query point");
            sum += Rational(2 * f.dim) * f.s * f.x / den;
        }
        return sum - fpp_(z) / pcz;
    }

private:
    std::vector<HatFactor> factors_;
    RatPoly pc_;
    RatPoly fpp_;
};

inline ScalarCurvatureProfile scalar_curvature_profile(const AdmissibleSetup& setup, const RatPoly& f) {
    return ScalarCurvatureProfile(setup, f);
}

/* Momentum profile Theta = F / p_c, stored with the common (1 +- z) factors
 * cancelled so endpoint values and derivatives come from exact evaluation,
 * never from numeric limits.
 */
class MomentumProfile {
public:
    MomentumProfile(const ExtremalSolution& sol, const AdmissibleSetup& setup)
        : num_(sol.F), den_(momentum_weight(setup)) {
        const RatPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = div_exact(num_, g);
            den_ = div_exact(den_, g);
        }
    }

    Rational operator()(const Rational& z) const {
        const Rational d = den_(z);
        if (d.is_zero()) throw PoleAtQuery("momentum profile pole at query point");
        return num_(z) / d;
    }

    // Theta'(z) by the quotient rule on the reduced fraction.
    Rational derivative_at(const Rational& z) const {
        const Rational d = den_(z);
        if (d.is_zero()) throw PoleAtQuery("momentum profile pole at query point");
        return (num_.derivative()(z) * d - num_(z) * den_.derivative()(z)) / (d * d);
    }

    const RatPoly& numerator() const { return num_; }
    const RatPoly& denominator() const { return den_; }

private:
    RatPoly num_;
    RatPoly den_;
};

inline MomentumProfile momentum_profile(const ExtremalSolution& sol, const AdmissibleSetup& setup) {
    return MomentumProfile(sol, setup);
}

} // namespace ekm

#endif
