#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fraclab/bubble.hpp"
#include "fraclab/greens.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

/// Per-epsilon diagnostics of the blow-up continuation.
struct ContinuationRecord {
    double eps = 0.0;          ///< coefficient of u^q in the equation u solves
    double eps_schedule = 0.0; ///< manifold parameter that produced the solve
    double sup_norm = 0.0;
    double gamma_eps = 0.0;    ///< sup_norm^(-2/(N-2s))
    double mass_crit = 0.0;    ///< int u^(2*)
    double blowup_product = 0.0; ///< eps * sup_norm^(q-p+2)
    double pohozaev_lhs = 0.0;
    double pohozaev_rhs = 0.0;
    double profile_error = 0.0; ///< sup over the window of |z_eps - Z|
    bool trusted = true;       ///< gamma_eps >= 4h
};

/// z(x) = gamma^((N-2s)/2) u(gamma x + center), sampled on a fixed window
/// grid by linear interpolation; ||z||_inf = 1 at x = 0 by construction.
inline Field rescale_profile(const Field& u, const Exponents& e, double center,
                             double window_halfwidth = 2.0, int window_cells = 64) {
    const auto& dom = *u.domain;
    if (dom.dim() != 1) throw std::invalid_argument("rescale_profile: 1D fields only");
    int imax = 0;
    const double sup = u.values.maxCoeff(&imax);
    if (!(sup > 0.0)) throw std::domain_error("rescale_profile: field must be positive");
    const int edge = dom.cells_per_halfwidth() - 1;
    if (std::abs(dom.lattice(imax)[0]) >= edge - 1)
        throw NumericalError("rescale_profile: maximum sits on the boundary layer");
    const double gamma = std::pow(sup, -2.0 / (e.n - 2.0 * e.s));
    auto window = DiscreteDomain::make_interval(window_halfwidth,
                                                window_halfwidth / window_cells);
    Field z(window);
    const double amp = std::pow(gamma, 0.5 * (e.n - 2.0 * e.s));
    for (int i = 0; i < window->size(); ++i)
        z.values[i] = amp * interpolate1d(u, gamma * window->node(i)[0] + center);
    return z;
}

/// Sup distance between the rescaled profile and the limit bubble Z over the
/// window grid.
inline double profile_distance(const Field& z, const Exponents& e) {
    const BubbleProfile zb = BubbleProfile::limit_profile(e);
    double worst = 0.0;
    for (int i = 0; i < z.size(); ++i)
        worst = std::max(worst,
                         std::abs(z.values[i] - eval_bubble(zb, z.domain->node(i))));
    return worst;
}

namespace detail {

/// Least-squares fit u = alpha d^s + beta d^(s+1) over the nodes in a
/// boundary band at fixed physical distance, d in [L/32, L/8] (widened when
/// the grid is coarse so at least 6 nodes participate). Returns the
/// boundary quotient alpha. side = +1 fits at x = +L, side = -1 at x = -L.
///
/// The band sits outside the scheme's numerical boundary layer, whose nodal
/// values are self-similar in h; a fit through the nodes nearest the wall
/// would carry an h-independent bias.
inline double ds_quotient_fit(const Field& u, double s, int side) {
    const auto& dom = *u.domain;
    const double bound = dom.param();
    const double h = dom.spacing();
    const double dlo = std::max(bound / 32.0, 8.0 * h);
    const double dhi = std::max(bound / 8.0, dlo + 6.0 * h);
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    int used = 0;
    const int m = dom.cells_per_halfwidth();
    for (int j = m - 1; j >= 1; --j) {  // from the wall inward
        const int idx = dom.lattice_index(side * j);
        if (idx < 0) continue;
        const double d = bound - std::abs(dom.node(idx)[0]);
        if (d < dlo) continue;
        if (d > dhi) break;
        const double val = u.values[idx];
        if (val <= prev)
            throw NumericalError("ds_quotient_fit: near-boundary samples not monotone");
        prev = val;
        const double f1 = std::pow(d, s), f2 = std::pow(d, s + 1.0);
        a11 += f1 * f1;
        a12 += f1 * f2;
        a22 += f2 * f2;
        b1 += f1 * val;
        b2 += f2 * val;
        ++used;
    }
    if (used < 4) throw NumericalError("ds_quotient_fit: too few nodes in the fit band");
    const double det = a11 * a22 - a12 * a12;
    if (det == 0.0) throw NumericalError("ds_quotient_fit: singular normal equations");
    return (b1 * a22 - b2 * a12) / det;
}

} // namespace detail

struct PohozaevSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Both sides of the Pohozaev identity for f(u) = u^p - eps u^q on a domain
/// star-shaped about the origin:
///   lhs = (2s-N) int u f(u) + 2N int F(u),
///   rhs = Gamma(1+s)^2 int_{dOmega} (u/d^s)^2 <x, nu> dS,
/// the boundary quotient obtained from the d^s least-squares fit.
inline PohozaevSides pohozaev_check(const Field& u, const Exponents& e, double eps) {
    const auto& dom = *u.domain;
    if (dom.dim() != 1)
        throw std::invalid_argument("pohozaev_check: desk-scale harness is 1D");
    PohozaevSides out;
    const double uf = u.integrate_pointwise([&](double v) {
        return v * (std::pow(v, e.p) - eps * std::pow(v, e.q));
    });
    const double primitive = u.integrate_pointwise([&](double v) {
        return std::pow(v, e.p + 1.0) / (e.p + 1.0) -
               eps * std::pow(v, e.q + 1.0) / (e.q + 1.0);
    });
    out.lhs = (2.0 * e.s - e.n) * uf + 2.0 * e.n * primitive;

    const double qr = detail::ds_quotient_fit(u, e.s, +1);
    const double ql = detail::ds_quotient_fit(u, e.s, -1);
    const double g1s = gamma_fn(1.0 + e.s);
    out.rhs = g1s * g1s * dom.param() * (qr * qr + ql * ql);
    return out;
}

/// Sup over the annulus Omega \ B_r(x0) of the normalized distance between
/// the rescaled boundary profile ||u|| u / d^s and gamma0 G(., x0) / d^s.
inline double boundary_profile_check(const Field& u, const Exponents& e, double x0,
                                     const GreenKernelBall& k, double annulus_r) {
    const auto& dom = *u.domain;
    if (dom.dim() != 1)
        throw std::invalid_argument("boundary_profile_check: 1D fields only");
    const double sup = u.values.maxCoeff();
    const double gamma0 = paper_constants(e).gamma0;
    double worst = 0.0, scale = 0.0;
    bool any = false;
    for (int i = 0; i < dom.size(); ++i) {
        const double x = dom.node(i)[0];
        if (std::abs(x - x0) < annulus_r) continue;
        any = true;
        const double ds = std::pow(dom.boundary_distance(dom.node(i)), e.s);
        const double xv[1] = {x}, x0v[1] = {x0};
        const double target = gamma0 *
                              green_ball(k, std::span<const double>(xv, 1),
                                         std::span<const double>(x0v, 1)) /
                              ds;
        worst = std::max(worst, std::abs(sup * u.values[i] / ds - target));
        scale = std::max(scale, std::abs(target));
    }
    if (!any) throw std::invalid_argument("boundary_profile_check: empty annulus");
    return worst / scale;
}

struct BlowupConfig {
    Exponents e;               ///< critical exponents
    double halfwidth = 1.0;    ///< Omega = (-L, L)
    double h = 1.0 / 512;
    double eps0 = 0.5;
    double ratio = 0.7;
    int steps = 12;            ///< schedule eps_k = eps0 * ratio^k, k = 0..steps
    double tol = 1e-8;
    int max_iter = 50000;
    double window_halfwidth = 2.0;
    int window_cells = 64;
    double annulus_r = 0.25;
};

struct BlowupStudy {
    std::vector<ContinuationRecord> records;
    int last_trusted = -1;
    bool aborted_unresolved = false; ///< stopped at gamma < 4h
    bool solver_failure = false;
    std::string message;
};

/// Warm-started continuation along a geometric epsilon schedule. Each solve
/// seeds from the previous minimizer (the manifold projection absorbs the
/// scale change between consecutive dilated grids). The run stops once the
/// concentration width falls under four cells.
inline BlowupStudy blowup_study(const BlowupConfig& cfg) {
    if (!cfg.e.is_critical())
        throw std::domain_error("blowup_study: critical exponents required");
    if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0))
        throw std::domain_error("blowup_study: ratio must lie in (0,1)");
    BlowupStudy study;
    DomainPtr base = DiscreteDomain::make_interval(cfg.halfwidth, cfg.h);
    std::optional<Eigen::VectorXd> warm;
    for (int kstep = 0; kstep <= cfg.steps; ++kstep) {
        const double eps_k = cfg.eps0 * std::pow(cfg.ratio, kstep);
        ManifoldProblem prob = ManifoldProblem::make(cfg.e, eps_k, base);
        Field init = warm ? Field(prob.scaled_domain, *warm) : bubble_initial_guess(prob);
        SolveResult res;
        try {
            res = minimize_manifold(prob, init, cfg.tol, cfg.max_iter);
        } catch (const SolveFailure& failure) {
            study.solver_failure = true;
            study.message = failure.what();
            return study;
        }
        transform_solutions(res, prob);
        warm = res.w.values;

        ContinuationRecord rec;
        rec.eps_schedule = eps_k;
        rec.eps = res.eps_effective;
        rec.sup_norm = res.u.values.maxCoeff();
        rec.gamma_eps = std::pow(rec.sup_norm, -2.0 / (cfg.e.n - 2.0 * cfg.e.s));
        rec.mass_crit = res.u.integrate_pointwise(
            [&](double v) { return std::pow(v, cfg.e.two_star()); });
        rec.blowup_product = rec.eps * std::pow(rec.sup_norm, cfg.e.q - cfg.e.p + 2.0);
        const PohozaevSides poho = pohozaev_check(res.u, cfg.e, rec.eps);
        rec.pohozaev_lhs = poho.lhs;
        rec.pohozaev_rhs = poho.rhs;
        const Field z = rescale_profile(res.u, cfg.e, 0.0, cfg.window_halfwidth,
                                        cfg.window_cells);
        rec.profile_error = profile_distance(z, cfg.e);
        rec.trusted = rec.gamma_eps >= 4.0 * cfg.h;

        study.records.push_back(rec);
        if (!rec.trusted) {
            study.aborted_unresolved = true;
            study.message = "aborted: gamma below four cells at step " +
                            std::to_string(kstep);
            break;
        }
        study.last_trusted = static_cast<int>(study.records.size()) - 1;
    }
    return study;
}

} // namespace fraclab
