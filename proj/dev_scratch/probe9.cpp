// Dev-only: Appendix-A S_rho ladders, bubble Rayleigh refinement.
#include <cstdio>
#include "fraclab/solver.hpp"

using namespace fraclab;

int main() {
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    // Sobolev constant: closed form and discrete bubble Rayleigh ladder
    const double s_closed = std::pow(z_moment(e, e.two_star()), 2.0 * e.s / e.n);
    std::printf("S closed form = %.8g\n", s_closed);
    double s_est = 0.0;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        auto dom = DiscreteDomain::make_interval(16.0, h);
        auto op = FracOperator::assemble(dom, e.s);
        BubbleProfile ub = BubbleProfile::standard(e);
        Field u = Field::sample(dom, [&](std::span<const double> x) { return eval_bubble(ub, x); });
        s_est = energy_S(op, u, e);
        std::printf("  bubble Rayleigh h=1/%g : %.8g (rel to closed %.3g)\n", 1 / h, s_est,
                    s_est / s_closed - 1);
    }
    // critical S_rho ladder
    std::printf("critical S_rho (target S/2 = %.8g, est/2 = %.8g):\n", s_closed / 2, s_est / 2);
    double prev = 0.0;
    for (double rho : {1.0, 2.0, 4.0, 8.0}) {
        auto base = DiscreteDomain::make_interval(rho, 1.0 / 64);
        ManifoldProblem prob = ManifoldProblem::make(e, 1.0, base);  // eps=1: factor 1
        SolveResult res = minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 100000);
        std::printf("  rho=%-3g S_rho=%.8g gap_to_prev=%.5g iters=%d\n", rho, res.s_eps,
                    prev ? prev - res.s_eps : 0.0, res.iterations);
        prev = res.s_eps;
    }
    std::printf("  final vs S_est/2: %.4g%%\n", 100 * (prev / (s_est / 2) - 1));

    // supercritical ladder (p=5, q=7)
    Exponents esup = Exponents::make(1, 0.25, 5.0, 7.0);
    std::printf("supercritical S_rho (p=5,q=7):\n");
    prev = 0.0;
    SolveResult keep;
    DomainPtr keepdom;
    for (double rho : {2.0, 4.0, 8.0}) {
        auto base = DiscreteDomain::make_interval(rho, 1.0 / 64);
        ManifoldProblem prob = ManifoldProblem::make(esup, 1.0, base);
        SolveResult res = minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 100000);
        std::printf("  rho=%-3g S_rho=%.8g gap=%.5g iters=%d sup=%.4g\n", rho, res.s_eps,
                    prev ? prev - res.s_eps : 0.0, res.iterations, res.w.values.maxCoeff());
        prev = res.s_eps;
        keep = res;
        keepdom = prob.scaled_domain;
    }
    // F of the rho=8 minimizer truncated onto the rho=4 box
    {
        auto dom4 = DiscreteDomain::make_interval(4.0, 1.0 / 64);
        auto op4 = FracOperator::assemble(dom4, esup.s);
        Field trunc(dom4);
        for (int i = 0; i < dom4->size(); ++i) {
            const int src = keepdom->lattice_index(dom4->lattice(i)[0]);
            trunc.values[i] = keep.w.values[src];
        }
        const double f_trunc = energy_F(op4, trunc, esup);
        std::printf("  F(truncated minimizer on rho=4) = %.8g vs S_8 = %.8g (above: %d)\n",
                    f_trunc, keep.s_eps, f_trunc > keep.s_eps);
    }
    return 0;
}
