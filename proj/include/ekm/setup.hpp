#ifndef EKM_SETUP_HPP
#define EKM_SETUP_HPP

/* Numeric shadow of an admissible bundle plus admissible Kaehler class:
 * end fibre dimensions d0, dinf and one (dim, x, s) triple per base factor.
 * Classes are handled up to scale, so the x_a determine everything.
 *
 * The end factors are derived, never user-supplied: x = +-1 and s = +-(d+1),
 * the normalization in which the end fibre Fubini-Study metrics have scalar
 * curvature 2 d (d+1). Sums over the full index set always include them;
 * with d = 0 their terms vanish, keeping one code path.
 */

#include <optional>
#include <string>
#include <vector>

#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/roots.hpp"

namespace ekm {

struct IntegralityDatum {
    Rational p;  // anticanonical pairing coefficient
    long q = 1;  // primitive-class multiple, nonzero, same sign as x
};

struct FactorDatum {
    int dim = 1;  // complex dimension of the base factor
    Rational x;   // class parameter, 0 < |x| < 1
    Rational s;   // normalized scalar curvature (metric has Scal = sign(x) 2 dim s)
    std::optional<IntegralityDatum> integrality;
};

struct AdmissibleSetup {
    int d0 = 0;
    int dinf = 0;
    std::vector<FactorDatum> factors;

    int complex_dimension() const {
        int m = 1 + d0 + dinf;
        for (const auto& f : factors) m += f.dim;
        return m;
    }
};

// One entry of the full index set: the two derived end factors followed by
// the base factors.
struct HatFactor {
    int dim;
    Rational x;
    Rational s;
};

inline std::vector<HatFactor> hat_factors(const AdmissibleSetup& setup) {
    std::vector<HatFactor> out;
    out.reserve(setup.factors.size() + 2);
    out.push_back({setup.d0, Rational(1), Rational(setup.d0 + 1)});
    out.push_back({setup.dinf, Rational(-1), Rational(-(setup.dinf + 1))});
    for (const auto& f : setup.factors) out.push_back({f.dim, f.x, f.s});
    return out;
}

// p_c(z) = (1+z)^d0 (1-z)^dinf prod_a (1 + x_a z)^dim_a; positive on (-1,1).
inline RatPoly momentum_weight(const AdmissibleSetup& setup) {
    RatPoly p = RatPoly::one();
    for (const auto& f : hat_factors(setup))
        if (f.dim > 0)
            p = p * poly_pow(RatPoly::linear(Rational(1), f.x), static_cast<unsigned>(f.dim));
    return p;
}

inline std::vector<std::string> validate(const AdmissibleSetup& setup) {
    std::vector<std::string> violations;
    if (setup.d0 < 0) violations.push_back("d0 must be nonnegative");
    if (setup.dinf < 0) violations.push_back("dinf must be nonnegative");
    int idx = 0;
    for (const auto& f : setup.factors) {
        const std::string tag = "factor " + std::to_string(idx++) + ": ";
        if (f.dim < 1) violations.push_back(tag + "dimension must be positive");
        if (f.x.is_zero() || !(f.x.abs() < Rational(1)))
            violations.push_back(tag + "class parameter out of range (need 0 < |x| < 1)");
        if (f.integrality) {
            const auto& I = *f.integrality;
            if (I.q == 0)
                violations.push_back(tag + "integrality q must be a nonzero integer");
            else {
                if (Rational(I.q).sign() != f.x.sign())
                    violations.push_back(tag + "sign(q) must equal sign(x)");
                if (f.s != I.p / Rational(I.q))
                    violations.push_back(tag + "s must equal p/q");
            }
            if (I.p > Rational(f.dim + 1))
                violations.push_back(tag + "Fujita bound p <= dim+1 violated");
        }
    }
    return violations;
}

inline bool is_valid(const AdmissibleSetup& setup) { return validate(setup).empty(); }

// True iff every base factor metric has nonnegative scalar curvature.
inline bool nonnegative_base(const AdmissibleSetup& setup) {
    for (const auto& f : setup.factors)
        if ((f.s * f.x).sign() < 0) return false;
    return true;
}

} // namespace ekm

#endif
