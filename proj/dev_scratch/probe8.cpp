// Dev-only: residual stall diagnosis at h=1/2048.
#include <cstdio>
#include "fraclab/solver.hpp"

using namespace fraclab;

int main(int argc, char** argv) {
    const double invh = argc > 1 ? std::atof(argv[1]) : 2048;
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / invh);
    ManifoldProblem prob = ManifoldProblem::make(e, 0.5, base);
    const int n = prob.scaled_domain->size();
    const double cell = prob.scaled_domain->cell_measure();
    Eigen::VectorXd w = bubble_initial_guess(prob).values;
    detail::clip_and_project(w, e.p, cell);
    Eigen::VectorXd aw = prob.apply_scaled(w);
    double step = 0.5 / (prob.op_scale * prob.base_op.diagonal_value());
    auto fhat = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& ax) {
        double mq = 0;
        for (int i = 0; i < n; ++i) mq += std::pow(x[i], e.q + 1.0);
        return 0.5 * ax.dot(x) * cell + mq * cell / (e.q + 1.0);
    };
    double energy = fhat(w, aw);
    for (int it = 0; it <= 30000; ++it) {
        Eigen::VectorXd wp(n), grad(n);
        for (int i = 0; i < n; ++i) {
            wp[i] = std::pow(w[i], e.p);
            grad[i] = aw[i] + std::pow(w[i], e.q);
        }
        const double lambda = grad.dot(wp) / wp.squaredNorm();
        Eigen::VectorXd resid = grad - lambda * wp;
        if (it % 2000 == 0) {
            int argmax = 0;
            resid.cwiseAbs().maxCoeff(&argmax);
            std::printf("it=%6d res_inf=%.3e res_l2=%.3e at node %d/%d (x=%.4f) step=%.3g energy=%.12g\n",
                        it, resid.lpNorm<Eigen::Infinity>(), resid.norm(), argmax, n,
                        prob.scaled_domain->node(argmax)[0], step, energy);
        }
        bool ok = false;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd trial = w - step * resid;
            detail::clip_and_project(trial, e.p, cell);
            Eigen::VectorXd atrial = prob.apply_scaled(trial);
            const double te = fhat(trial, atrial);
            if (te <= energy - 1e-4 * step * resid.squaredNorm() * cell + 1e-15 * std::abs(energy)) {
                w = std::move(trial); aw = std::move(atrial); energy = te; ok = true;
                if (bt == 0) step *= 1.3;
                break;
            }
            step *= 0.5;
        }
        if (!ok) { std::printf("stall at it=%d\n", it); break; }
    }
    return 0;
}
