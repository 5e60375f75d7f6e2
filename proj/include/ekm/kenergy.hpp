#ifndef EKM_KENERGY_HPP
#define EKM_KENERGY_HPP

/* Discretized reduced K-energy
 *     E(u) = int_{-1}^{1} ( F(z) u''(z) - p_c(z) log u''(z) ) dz
 * over symplectic potentials, sampled as U_i = u''(z_i) > 0 on a
 * Gauss-Legendre grid. The integrand is strictly convex in each U_i with
 * pointwise minimizer U* = p_c / F; when F is somewhere nonpositive the
 * functional is unbounded below along bump perturbations.
 *
 * Floating point is permitted here and only here. F and p_c are evaluated
 * exactly at the (dyadic) node values and rounded once.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ekm/classify.hpp"
#include "ekm/errors.hpp"
#include "ekm/extremal.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/setup.hpp"

namespace ekm {

struct Quadrature {
    std::vector<double> nodes;   // interior, ascending
    std::vector<double> weights; // positive, sum 2
};

// Gauss-Legendre nodes/weights on (-1,1): Newton on P_n from the Chebyshev
// initial guess; the roots and weights converge to machine precision.
inline Quadrature gauss_legendre(int n) {
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[static_cast<std::size_t>(i)] = -x;
        q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[static_cast<std::size_t>(i)] = w;
        q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return q;
}

struct PotentialGrid {
    std::vector<double> nodes;
    std::vector<double> U; // u'' at the nodes, positive
    std::vector<double> weights;
    std::string quadrature = "gauss-legendre";
};

// Canonical potential u_c'' = 1/(1 - z^2).
inline PotentialGrid canonical_grid(int n) {
    if (n < 16) throw OutOfRange("potential grid needs at least 16 nodes");
    const Quadrature q = gauss_legendre(n);
    PotentialGrid g;
    g.nodes = q.nodes;
    g.weights = q.weights;
    g.U.reserve(q.nodes.size());
    for (double z : q.nodes) g.U.push_back(1.0 / (1.0 - z * z));
    return g;
}

struct EnergyValue {
    double value = 0.0;
    std::vector<double> gradient; // d/dU_i
};

namespace detail {

inline std::vector<double> eval_exact_at_nodes(const RatPoly& p, const std::vector<double>& nodes) {
    std::vector<double> out;
    out.reserve(nodes.size());
    for (double z : nodes) out.push_back(p(Rational::from_double(z)).to_double());
    return out;
}

} // namespace detail

inline EnergyValue energy(const AdmissibleSetup& setup, const PotentialGrid& grid) {
    const ExtremalSolution sol = extremal_polynomial(setup);
    const RatPoly pc = momentum_weight(setup);
    const auto f = detail::eval_exact_at_nodes(sol.F, grid.nodes);
    const auto p = detail::eval_exact_at_nodes(pc, grid.nodes);
    EnergyValue e;
    e.gradient.resize(grid.U.size());
    for (std::size_t i = 0; i < grid.U.size(); ++i) {
        const double u = grid.U[i];
        if (!(u > 0.0)) throw NonpositiveU("u'' must be positive at every node");
        e.value += grid.weights[i] * (f[i] * u - p[i] * std::log(u));
        e.gradient[i] = grid.weights[i] * (f[i] - p[i] / u);
    }
    return e;
}

/* Minimize the discrete energy. The integrand is separable and strictly
 * convex, so the minimizer is U*_i = p_c(z_i) / F(z_i); a safeguarded
 * Newton descent from the canonical grid must converge to the same point,
 * and the discrepancy is returned for the caller to assert on.
 */
struct MinimizeResult {
    PotentialGrid minimizer;    // U*
    PotentialGrid descent;      // the descent iterate
    double discrepancy = 0.0;   // sup-norm between the two
    int iterations = 0;
};

inline MinimizeResult minimize(const AdmissibleSetup& setup, const PotentialGrid& grid) {
    const ExtremalSolution sol = extremal_polynomial(setup);
    const RatPoly pc = momentum_weight(setup);
    const auto f = detail::eval_exact_at_nodes(sol.F, grid.nodes);
    const auto p = detail::eval_exact_at_nodes(pc, grid.nodes);

    MinimizeResult res;
    res.minimizer = grid;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (!(f[i] > 0.0))
            throw NotBoundedBelow("extremal polynomial nonpositive at a node");
        res.minimizer.U[i] = p[i] / f[i];
    }

    // Descent: per-node objective w (f u - p log u), strictly convex with
    // positive Hessian p/u^2. The Newton step u <- 2u - u^2 f/p contracts
    // on (0, 2u*); a positivity safeguard (halve u) recovers from starts
    // beyond that basin.
    res.descent = grid;
    auto& u = res.descent.U;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!(u[i] > 0.0)) throw NonpositiveU("descent start must be positive");
    for (int iter = 0; iter < 200; ++iter) {
        double step_max = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double grad = f[i] - p[i] / u[i];
            const double hess = p[i] / (u[i] * u[i]);
            const double next = u[i] - grad / hess;
            const double moved = next > 0.0 ? next : 0.5 * u[i];
            step_max = std::max(step_max, std::abs(moved - u[i]) / std::max(1.0, u[i]));
            u[i] = moved;
        }
        res.iterations = iter + 1;
        if (step_max == 0.0) break;
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        sup = std::max(sup, std::abs(u[i] - res.minimizer.U[i]));
    res.discrepancy = sup;
    return res;
}

/* ---- unboundedness along bump directions ---- */

// Polynomial bump ((w^2 - (z - z0)^2)_+)^2, normalized to unit mass
// (integral 16 w^5 / 15 before normalization); support inside (-1,1).
struct Bump {
    Rational center;
    Rational width;
    RatPoly poly; // the normalized polynomial on the support

    Rational operator()(const Rational& z) const {
        if ((z - center).abs() >= width) return Rational(0);
        return poly(z);
    }
};

inline Bump make_bump(const Rational& center, const Rational& width) {
    if (width.sign() <= 0) throw OutOfRange("bump width must be positive");
    if (!(center.abs() + width < Rational(1)))
        throw OutOfRange("bump support must lie inside (-1,1)");
    Bump b{center, width, RatPoly()};
    const RatPoly shifted = RatPoly::linear(-center, Rational(1)); // z - z0
    const RatPoly core = RatPoly{width * width} - shifted * shifted;
    const Rational mass = Rational(16, 15) * pow(width, 5);
    b.poly = (Rational(1) / mass) * core * core;
    return b;
}

struct DestabilizeResult {
    std::vector<double> energies; // E(u_k), k = 1..kmax
    double canonical_energy = 0.0;
    Rational slope_exact;         // int F f, computed exactly
};

// Energies along u_k'' = u_c'' + k f. If int F f < 0 the sequence drops
// below any bound (linearly in k); if positive it grows.
inline DestabilizeResult destabilize(const AdmissibleSetup& setup, const Rational& bump_center,
                                     const Rational& bump_width, int kmax, int n_nodes = 128) {
    if (kmax < 1) throw OutOfRange("kmax must be positive");
    const Bump bump = make_bump(bump_center, bump_width);
    const ExtremalSolution sol = extremal_polynomial(setup);

    DestabilizeResult out;
    out.slope_exact = definite_integral(sol.F * bump.poly, bump_center - bump_width,
                                        bump_center + bump_width);

    PotentialGrid grid = canonical_grid(n_nodes);
    out.canonical_energy = energy(setup, grid).value;
    std::vector<double> fvals;
    fvals.reserve(grid.nodes.size());
    for (double z : grid.nodes) fvals.push_back(bump(Rational::from_double(z)).to_double());
    for (int k = 1; k <= kmax; ++k) {
        PotentialGrid gk = grid;
        for (std::size_t i = 0; i < gk.U.size(); ++i) gk.U[i] += k * fvals[i];
        out.energies.push_back(energy(setup, gk).value);
    }
    // The log term is nonnegative, so E(u_k) <= E(u_c) + k int F f: a
    // negative slope drags the sequence below any bound, a positive one
    // wins over the log term for large k.
    const double slope = out.slope_exact.to_double();
    if (out.slope_exact.sign() < 0) {
        for (std::size_t k = 0; k < out.energies.size(); ++k) {
            if (k > 0 && !(out.energies[k] < out.energies[k - 1]))
                throw TheoremViolated("destabilize: energies not strictly decreasing");
            if (!(out.energies[k] <= out.canonical_energy - (double(k) + 1.0) * std::abs(slope) / 2.0))
                throw TheoremViolated("destabilize: energies did not decrease linearly");
        }
    } else if (out.slope_exact.sign() > 0 && kmax > 1) {
        // The log term is at most (int_supp p_c) log(1 + k f_max/u_c''),
        // so growth is guaranteed once the linear term dominates that.
        const RatPoly pc = momentum_weight(setup);
        const double psupp = definite_integral(pc, bump_center - bump_width,
                                               bump_center + bump_width).to_double();
        if ((kmax - 1) * slope > psupp * std::log(1.0 + double(kmax)) * 4.0 &&
            !(out.energies.back() > out.energies.front()))
            throw TheoremViolated("destabilize: energies did not grow");
    }
    return out;
}

} // namespace ekm

#endif
