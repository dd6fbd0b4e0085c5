#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclab/bubble.hpp"
#include "fraclab/fracop.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

/// Constrained minimization instance: minimize
///   F_hat(w) = (1/2)||w||_X0^2 + (1/(q+1)) int w^(q+1)
/// over the manifold int w^(p+1) = 1 on the dilated domain
/// Omega_eps = eps^(-(p-1)/(2s(q-p))) Omega.
///
/// The operator is assembled once on the base domain; the dilated-grid
/// operator is the exact scalar multiple delta^(2s) A_base (every weight of
/// the scheme is (-2s)-homogeneous in the joint grid/domain dilation), so
/// both grids share one matrix.
struct ManifoldProblem {
    DomainPtr base_domain;    ///< Omega with spacing h
    DomainPtr scaled_domain;  ///< Omega_eps with spacing h * factor
    FracOperator base_op;     ///< assembled on base_domain
    Exponents e;
    double eps = 1.0;
    double scaled_factor = 1.0;  ///< eps^(-(p-1)/(2s(q-p)))
    double op_scale = 1.0;       ///< delta^(2s): A_scaled = op_scale * A_base

    static ManifoldProblem make(const Exponents& e, double eps, DomainPtr base) {
        e.validate();
        if (!(eps > 0.0)) throw std::domain_error("ManifoldProblem: eps > 0 required");
        ManifoldProblem prob;
        prob.e = e;
        prob.eps = eps;
        prob.base_domain = base;
        prob.scaled_factor =
            std::pow(eps, -(e.p - 1.0) / (2.0 * e.s * (e.q - e.p)));
        prob.scaled_domain = DiscreteDomain::make(base->kind(), base->dim(),
                                                  base->param() * prob.scaled_factor,
                                                  base->spacing() * prob.scaled_factor);
        prob.base_op = FracOperator::assemble(base, e.s);
        prob.op_scale = std::pow(prob.scaled_factor, -2.0 * e.s);
        return prob;
    }

    /// (-Delta)^s_h on the scaled grid applied to nodal values.
    Eigen::VectorXd apply_scaled(const Eigen::VectorXd& w) const {
        Field f(base_domain, w);
        return op_scale * base_op.apply(f).values;
    }
};

struct SolveResult {
    Field w;          ///< manifold minimizer on the scaled domain
    double lambda = 0.0;   ///< Lagrange multiplier (least-squares estimate)
    double s_eps = 0.0;    ///< F_hat(w) at the minimizer
    int iterations = 0;
    double residual = 0.0; ///< sup norm of (-Delta)^s w + w^q - lambda w^p
    Field v;          ///< solution of (-Delta)^s v = lambda v^p - eps v^q on Omega
    Field u;          ///< solution of (-Delta)^s u = u^p - eps_eff u^q on Omega
    double eps_effective = 0.0; ///< eps * lambda^(-(q-1)/(p-1))
    double v_residual = 0.0;
    double u_residual = 0.0;
};

/// Diagnostic failure of the manifold descent; carries the last iterate.
class SolveFailure : public NumericalError {
public:
    SolveFailure(const std::string& what, SolveResult last)
        : NumericalError(what), last_iterate(std::move(last)) {}
    SolveResult last_iterate;
};

namespace detail {

inline void clip_and_project(Eigen::VectorXd& w, double p, double cell) {
    w = w.cwiseMax(0.0);
    double mass = 0.0;
    for (int i = 0; i < w.size(); ++i) mass += std::pow(w[i], p + 1.0);
    mass *= cell;
    if (!(mass > 0.0)) throw std::domain_error("manifold projection: zero constraint integral");
    w /= std::pow(mass, 1.0 / (p + 1.0));
}

} // namespace detail

/// Projected gradient descent on F_hat over the constraint manifold with
/// monotone backtracking. Clipping enforces the nonnegativity the energy
/// already prefers (F_hat is even in w), and every accepted step is followed
/// by re-projection onto int w^(p+1) = 1.
inline SolveResult minimize_manifold(const ManifoldProblem& prob, const Field& init,
                                     double tol, int max_iter,
                                     std::vector<double>* energy_trace = nullptr) {
    if (!(tol > 0.0)) throw std::domain_error("minimize_manifold: tol > 0 required");
    const Exponents& e = prob.e;
    const double cell = prob.scaled_domain->cell_measure();
    const int n = prob.scaled_domain->size();
    if (init.size() != n) throw std::invalid_argument("minimize_manifold: init size mismatch");

    Eigen::VectorXd w = init.values;
    detail::clip_and_project(w, e.p, cell);

    const auto fhat = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& ax) {
        double mq = 0.0;
        for (int i = 0; i < n; ++i) mq += std::pow(x[i], e.q + 1.0);
        return 0.5 * ax.dot(x) * cell + mq * cell / (e.q + 1.0);
    };

    Eigen::VectorXd aw = prob.apply_scaled(w);
    double energy = fhat(w, aw);
    // The diagonal bounds the spectrum (Gershgorin with nonpositive
    // off-diagonal rows), so this base step is always stable.
    const double step_base = 0.5 / (prob.op_scale * prob.base_op.diagonal_value());
    double step = step_base;
    double lambda = 0.0, res_norm = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (energy_trace) energy_trace->push_back(energy);
        Eigen::VectorXd wp(n), grad(n);
        for (int i = 0; i < n; ++i) {
            wp[i] = std::pow(w[i], e.p);
            grad[i] = aw[i] + std::pow(w[i], e.q);
        }
        lambda = grad.dot(wp) / wp.squaredNorm();
        const Eigen::VectorXd resid = grad - lambda * wp;
        res_norm = resid.lpNorm<Eigen::Infinity>();
        if (res_norm <= tol) break;

        bool accepted = false;
        const double base_decrease = step_base * resid.squaredNorm() * cell;
        if (base_decrease <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(energy)) {
            // Energy differences are below rounding; the Armijo test would
            // be noise. Take the stable base step and let the residual
            // criterion terminate.
            Eigen::VectorXd trial = w - step_base * resid;
            detail::clip_and_project(trial, e.p, cell);
            aw = prob.apply_scaled(trial);
            w = std::move(trial);
            energy = fhat(w, aw);
            continue;
        }
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd trial = w - step * resid;
            detail::clip_and_project(trial, e.p, cell);
            Eigen::VectorXd atrial = prob.apply_scaled(trial);
            const double trial_energy = fhat(trial, atrial);
            const double predicted = step * resid.squaredNorm() * cell;
            if (trial_energy <= energy - 1e-4 * predicted +
                                    4.0 * std::numeric_limits<double>::epsilon() *
                                        std::abs(energy)) {
                w = std::move(trial);
                aw = std::move(atrial);
                energy = trial_energy;
                accepted = true;
                if (bt == 0) step = std::min(step * 1.3, 64.0 * step_base);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            SolveResult last;
            last.w = Field(prob.scaled_domain, w);
            last.lambda = lambda;
            last.s_eps = energy;
            last.iterations = it;
            last.residual = res_norm;
            throw SolveFailure("minimize_manifold: line search stagnated at residual " +
                                   format_g17(res_norm),
                               std::move(last));
        }
    }

    SolveResult out;
    out.w = Field(prob.scaled_domain, std::move(w));
    out.lambda = lambda;
    out.s_eps = energy;
    out.iterations = it;
    out.residual = res_norm;
    if (it >= max_iter && res_norm > tol)
        throw SolveFailure("minimize_manifold: no convergence in " +
                               std::to_string(max_iter) + " iterations",
                           out);
    return out;
}

/// Transforms the manifold minimizer to the solutions on the base domain:
///   v(x) = eps^(-1/(q-p)) w(x / delta)  solves  (-Delta)^s v = lambda v^p - eps v^q,
///   u = lambda^(1/(p-1)) v              solves  (-Delta)^s u = u^p - eps_eff u^q,
/// with eps_eff = eps * lambda^(-(q-1)/(p-1)). Both lattice representations
/// share node indices, so the transform is pure nodal algebra.
inline void transform_solutions(SolveResult& res, const ManifoldProblem& prob) {
    const Exponents& e = prob.e;
    const double amp_v = std::pow(prob.eps, -1.0 / (e.q - e.p));
    res.v = Field(prob.base_domain, amp_v * res.w.values);
    const double amp_u = std::pow(res.lambda, 1.0 / (e.p - 1.0));
    res.u = Field(prob.base_domain, amp_u * res.v.values);
    res.eps_effective = prob.eps * std::pow(res.lambda, -(e.q - 1.0) / (e.p - 1.0));

    Eigen::VectorXd av = prob.base_op.apply(res.v).values;
    Eigen::VectorXd au = prob.base_op.apply(res.u).values;
    double rv = 0.0, ru = 0.0;
    for (int i = 0; i < res.v.size(); ++i) {
        const double fv = res.lambda * std::pow(res.v.values[i], e.p) -
                          prob.eps * std::pow(res.v.values[i], e.q);
        const double fu = std::pow(res.u.values[i], e.p) -
                          res.eps_effective * std::pow(res.u.values[i], e.q);
        rv = std::max(rv, std::abs(av[i] - fv));
        ru = std::max(ru, std::abs(au[i] - fu));
    }
    res.v_residual = rv;
    res.u_residual = ru;
}

/// Bubble-profile initial guess on the scaled domain: the normalized limit
/// profile Z has sup 1 and the right concentration shape; projection puts it
/// on the manifold.
inline Field bubble_initial_guess(const ManifoldProblem& prob) {
    const BubbleProfile z = BubbleProfile::limit_profile(prob.e);
    return Field::sample(prob.scaled_domain,
                         [&](std::span<const double> x) { return eval_bubble(z, x); });
}

/// First Dirichlet eigenpair of the assembled operator by inverse iteration.
/// The eigenfield is normalized positive; the M-matrix structure makes the
/// inverse positivity-improving, so the iteration converges to a positive
/// ground state.
inline std::pair<double, Field> first_eigenpair(const FracOperator& op) {
    const Eigen::MatrixXd a = op.to_dense();
    const int n = static_cast<int>(a.rows());
    Eigen::LDLT<Eigen::MatrixXd> fact(a);
    if (fact.info() != Eigen::Success)
        throw NumericalError("first_eigenpair: factorization failed");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
    for (int it = 0; it < 1000; ++it) {
        x = fact.solve(x).normalized();
        const Eigen::VectorXd ax = a * x;
        const double lambda = x.dot(ax);
        if (it > 2 &&
            (ax - lambda * x).lpNorm<Eigen::Infinity>() <= 1e-12 * std::abs(lambda)) {
            if (x.sum() < 0.0) x = -x;
            return {lambda, Field(op.domain(), x)};
        }
    }
    throw NumericalError("first_eigenpair: inverse iteration stagnated");
}

/// Spectrum of the linearized operator (-Delta)^s - p Z^(p-1) near zero on a
/// large box. The kernel of the continuum operator is spanned by the N+1
/// modes psi_1..psi_{N+1}; the discrete spectrum shows the same count of
/// near-zero eigenvalues once the box and grid resolve the modes.
struct KernelSpectrum {
    int near_zero_count = 0;            ///< eigenvalues with |lambda| < zero_gap
    std::vector<double> spectrum_slice; ///< eigenvalues closest to zero, by |.|
    Eigen::MatrixXd near_modes;         ///< eigenvectors of the near-zero group
    double boundary_mass = 0.0;         ///< squared relative boundary amplitude
};

inline KernelSpectrum linearized_kernel(const Exponents& e, double box_halfwidth,
                                        double h, double zero_gap, int slice_size = 8) {
    if (!e.is_critical())
        throw std::domain_error("linearized_kernel: requires critical exponents");
    DomainPtr dom = e.n == 1 ? DiscreteDomain::make_interval(box_halfwidth, h)
                             : DiscreteDomain::make_box(e.n, box_halfwidth, h);
    const FracOperator op = FracOperator::assemble(dom, e.s);
    const BubbleProfile z = BubbleProfile::limit_profile(e);
    Eigen::MatrixXd l = op.to_dense();
    for (int i = 0; i < dom->size(); ++i)
        l(i, i) -= e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
    if (eig.info() != Eigen::Success) throw NumericalError("linearized_kernel: eigensolver failed");
    const Eigen::VectorXd& vals = eig.eigenvalues();
    std::vector<int> order(static_cast<std::size_t>(vals.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(vals[a]) < std::abs(vals[b]);
    });

    KernelSpectrum out;
    const int m = std::min<int>(slice_size, static_cast<int>(vals.size()));
    out.spectrum_slice.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.spectrum_slice.push_back(vals[order[static_cast<std::size_t>(i)]]);
    for (double lam : out.spectrum_slice)
        if (std::abs(lam) < zero_gap) ++out.near_zero_count;

    out.near_modes.resize(dom->size(), std::max(out.near_zero_count, 1));
    for (int i = 0; i < std::max(out.near_zero_count, 1); ++i)
        out.near_modes.col(i) = eig.eigenvectors().col(order[static_cast<std::size_t>(i)]);

    // Boundary-mass diagnostic: squared amplitude of the candidate modes on
    // the outermost lattice ring relative to their sup.
    double mass = 0.0;
    const int mm = dom->cells_per_halfwidth();
    for (int c = 0; c < out.near_modes.cols(); ++c) {
        const double sup = out.near_modes.col(c).cwiseAbs().maxCoeff();
        double edge = 0.0;
        for (int i = 0; i < dom->size(); ++i) {
            const auto l0 = dom->lattice(i);
            bool outer = false;
            for (int d = 0; d < dom->dim(); ++d)
                outer = outer || std::abs(l0[d]) >= mm - 1;
            if (outer) edge = std::max(edge, std::abs(out.near_modes(i, c)));
        }
        mass = std::max(mass, (edge / sup) * (edge / sup));
    }
    out.boundary_mass = mass;
    if (mass > 1e-3)
        throw NumericalError("linearized_kernel: candidate modes carry boundary mass " +
                             format_g17(mass) + "; box or resolution insufficient");
    return out;
}

} // namespace fraclab
