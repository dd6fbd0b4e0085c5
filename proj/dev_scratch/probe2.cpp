// Dev-only: solver, kernel spectrum, greens constants measurements.
#include <cstdio>
#include <chrono>
#include "fraclab/asymptotics.hpp"
#include "fraclab/greens.hpp"
#include "fraclab/solver.hpp"

using namespace fraclab;
using clk = std::chrono::steady_clock;
double secs(clk::time_point a, clk::time_point b) { return std::chrono::duration<double>(b - a).count(); }

int main() {
    // scaling identity check
    {
        auto d1 = DiscreteDomain::make_interval(1.0, 1.0 / 32);
        auto d2 = DiscreteDomain::make_interval(2.0, 2.0 / 32);
        auto a1 = FracOperator::assemble(d1, 0.25).matrix();
        auto a2 = FracOperator::assemble(d2, 0.25).matrix();
        double worst = ((a2 * std::pow(2.0, 2 * 0.25)) - a1).cwiseAbs().maxCoeff() / a1(0, 0);
        std::printf("scaling identity rel err = %.3g\n", worst);
    }
    // solver at criterion-7 parameters
    {
        auto t0 = clk::now();
        Exponents e = Exponents::make(1, 0.25, 3.0, 5.0);
        auto base = DiscreteDomain::make_interval(1.0, 1.0 / 128);
        ManifoldProblem prob = ManifoldProblem::make(e, 0.3, base);
        SolveResult res = minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 50000);
        transform_solutions(res, prob);
        auto t1 = clk::now();
        const double ident = res.w.integrate_pointwise([&](double v){ return std::pow(v, e.q + 1.0); });
        const double lam_id = prob.op_scale * prob.base_op.gagliardo_energy(Field(prob.base_domain, res.w.values)) *
                              std::pow(prob.scaled_factor, e.n) + ident;
        std::printf("solve: iters=%d res=%.3g lambda=%.10g s_eps=%.10g lam_identity=%.10g reldiff=%.3g  wmin=%.3g [%.2fs]\n",
                    res.iterations, res.residual, res.lambda, res.s_eps, lam_id,
                    std::abs(res.lambda - lam_id) / res.lambda, res.w.values.minCoeff(), secs(t0, t1));
        std::printf("  bounds: 2S=%.6g < lambda=%.6g < (q+1)S=%.6g ; vres=%.3g ures=%.3g epsEff=%.6g\n",
                    2 * res.s_eps, res.lambda, 6 * res.s_eps, res.v_residual, res.u_residual, res.eps_effective);
        const double vmass = res.v.integrate_pointwise([&](double v){ return std::pow(v, e.p + 1.0); });
        std::printf("  v constraint=%.12g (critical: expect 1)\n", vmass);
    }
    // kernel spectrum at criterion-10 parameters (timed)
    {
        auto t0 = clk::now();
        Exponents e = Exponents::critical(1, 0.25, 5.0);
        KernelSpectrum ks = linearized_kernel(e, 24.0, 1.0 / 32, 0.02);
        auto t1 = clk::now();
        std::printf("kernel: count=%d boundary_mass=%.3g slice:", ks.near_zero_count, ks.boundary_mass);
        for (double v : ks.spectrum_slice) std::printf(" %.5g", v);
        std::printf(" [%.1fs]\n", secs(t0, t1));
        // cosines vs sampled psi
        auto dom = DiscreteDomain::make_interval(24.0, 1.0 / 32);
        for (int m = 1; m <= 2; ++m) {
            KernelMode mode = KernelMode::make(e, m);
            Eigen::VectorXd psi(dom->size());
            for (int i = 0; i < dom->size(); ++i) psi[i] = eval_kernel_mode(mode, dom->node(i));
            psi.normalize();
            double best = 0.0;
            for (int c = 0; c < ks.near_modes.cols(); ++c)
                best = std::max(best, std::abs(psi.dot(ks.near_modes.col(c).normalized())));
            std::printf("  mode %d best |cos| = %.5f\n", m, best);
        }
    }
    // greens: lemma 3.5 empirical constants
    for (auto [n, s] : {std::pair{1, 0.25}, {2, 0.5}}) {
        GreenKernelBall k = GreenKernelBall::make(n, s, 1.0);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        double c1 = 0.0, c2 = 0.0;
        int done = 0;
        while (done < 10000) {
            double x[2] = {uni(rng), n > 1 ? uni(rng) : 0.0};
            double y[2] = {uni(rng), n > 1 ? uni(rng) : 0.0};
            double xx = x[0]*x[0] + x[1]*x[1], yy = y[0]*y[0] + y[1]*y[1];
            if (xx >= 1 || yy >= 1) continue;
            double d2 = (x[0]-y[0])*(x[0]-y[0]) + (x[1]-y[1])*(x[1]-y[1]);
            if (d2 < 1e-20) continue;
            ++done;
            std::span<const double> xs(x, (size_t)n), ys(y, (size_t)n);
            double g = green_ball(k, xs, ys);
            double dist = std::sqrt(d2);
            double dx = 1.0 - std::sqrt(xx);
            c1 = std::max(c1, g * std::pow(dist, n - 2.0 * s));
            c2 = std::max(c2, g * std::pow(dist, n - s) / std::pow(dx, s));
        }
        std::printf("lemma3.5 N=%d s=%g: C1=%.6g (a_ns=%.6g)  C2=%.6g (kappa 2^s/s=%.6g)\n",
                    n, s, c1, k.a_ns, c2, k.kappa * std::pow(2.0, s) / s);
    }
    // boundary quotient closed form vs Richardson extrapolation (1D, s=0.25, x0=0)
    {
        GreenKernelBall k = GreenKernelBall::make(1, 0.25, 1.0);
        const double x0[1] = {0.0};
        const double xh[1] = {1.0};
        double closed = green_boundary_quotient(k, xh, x0);
        // samples at d = 2^-j
        double vals[6];
        for (int j = 0; j < 6; ++j) {
            double d = std::pow(2.0, -(j + 6));
            double x[1] = {1.0 - d};
            vals[j] = green_ball(k, x, x0) / std::pow(d, 0.25);
        }
        // Richardson with first-order model f = f0 + c d
        double r1[5], r2[4];
        for (int j = 0; j < 5; ++j) r1[j] = 2 * vals[j + 1] - vals[j];
        for (int j = 0; j < 4; ++j) r2[j] = (4 * r1[j + 1] - r1[j]) / 3;
        std::printf("quotient closed=%.10g raw=%.10g rich1=%.10g rich2=%.10g\n",
                    closed, vals[5], r1[4], r2[3]);
        std::printf("R const 1D closed=%.10g formula=%.10g\n",
                    boundary_r_constant(k, std::span<const double>(x0, 1)),
                    std::pow(2.0, 1 - 2 * 0.25) / (std::pow(gamma_fn(1.25), 2) * std::pow(gamma_fn(0.25), 2)));
    }
    return 0;
}
