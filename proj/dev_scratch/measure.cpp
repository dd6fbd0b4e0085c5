// Dev-only measurement harness; not part of the deliverable build.
#include <cstdio>
#include <chrono>

#include "fraclab/bubble.hpp"
#include "fraclab/fracop.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/special.hpp"

using namespace fraclab;

int main() {
    // --- special sanity
    std::printf("gamma(0.5)=%.17g vs sqrt(pi)=%.17g\n", gamma_fn(0.5), std::sqrt(M_PI));
    std::printf("gamma(5)=%.17g\n", gamma_fn(5.0));
    std::printf("beta(0.5,0.5)=%.17g vs pi=%.17g\n", beta_fn(0.5, 0.5), M_PI);

    Exponents e = Exponents::critical(1, 0.25, 5.0);
    PaperConstants k = paper_constants(e);
    std::printf("c_ns=%.17g mu=%.17g gamma0=%.17g omega=%.17g a_ns=%.17g\n",
                k.c_ns, k.mu_ns, k.gamma0, k.omega_n, k.a_ns);
    std::printf("blowup per R=%.17g assembled(R=1)=%.17g\n", k.blowup_limit_per_r,
                blowup_limit_assembled(e, 1.0));

    // --- identity nov39
    for (auto [n, s] : {std::pair{1, 0.25}, {2, 0.5}, {3, 0.75}, {1, 0.4}}) {
        Exponents ee = Exponents::critical(n, s, (n + 2.0 * s) / (n - 2.0 * s) + 2.0);
        auto id = identity_nov39(ee);
        std::printf("nov39 N=%d s=%g lhs=%.12g rhs=%.12g diff=%.3g\n", n, s, id.lhs,
                    id.rhs, std::abs(id.lhs - id.rhs));
    }

    // --- Gaussian Fourier oracle, 1D apply
    {
        auto dom = DiscreteDomain::make_interval(16.0, 1.0 / 64.0);
        auto op = FracOperator::assemble(dom, 0.25);
        Field g = Field::sample(dom, [](std::span<const double> x) {
            return std::exp(-x[0] * x[0]);
        });
        Field ag = op.apply(g);
        const int i0 = dom->lattice_index(0);
        const double exact = std::pow(2.0, 0.5) * gamma_fn(0.75) / std::sqrt(M_PI);
        std::printf("gaussian apply @0: %.10g vs %.10g rel=%.3g\n", ag.values[i0], exact,
                    std::abs(ag.values[i0] - exact) / exact);
    }

    // --- bubble residual, three refinements, with and without tail correction
    {
        Exponents ec = Exponents::critical(1, 0.25, 5.0);
        BubbleProfile U = BubbleProfile::standard(ec);
        const double supRhs = std::pow(paper_constants(ec).c_ns, ec.two_star() - 1.0);
        for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            auto t0 = std::chrono::steady_clock::now();
            auto dom = DiscreteDomain::make_interval(16.0, h);
            auto op = FracOperator::assemble(dom, 0.25);
            Field u = Field::sample(dom, [&](std::span<const double> x) {
                return eval_bubble(U, x);
            });
            Field au = op.apply(u);
            const double cns = op.normalization();
            double raw = 0.0, corrected = 0.0;
            for (int i = 0; i < dom->size(); ++i) {
                const double x = dom->node(i)[0];
                if (std::abs(x) > 4.0) continue;
                const double target = std::pow(eval_bubble(U, dom->node(i)),
                                               ec.two_star() - 1.0);
                const double r = au.values[i] - target;
                raw = std::max(raw, std::abs(r));
                // exterior mass of the true bubble beyond the box
                auto tail = [&](double y) {
                    double xv[1] = {y};
                    return eval_bubble(U, std::span<const double>(xv, 1)) *
                           (std::pow(std::abs(x - y), -1.0 - 2 * 0.25) +
                            std::pow(std::abs(x + y), -1.0 - 2 * 0.25));
                };
                const double corr = cns * integrate_tail(tail, 16.0, 1e-10);
                corrected = std::max(corrected, std::abs(r - corr));
            }
            auto t1 = std::chrono::steady_clock::now();
            std::printf("bubble residual h=1/%g raw=%.5g (%.3g%%) corrected=%.5g (%.3g%%) [%.1fs]\n",
                        1.0 / h, raw, 100 * raw / supRhs, corrected,
                        100 * corrected / supRhs,
                        std::chrono::duration<double>(t1 - t0).count());
        }
    }

    // --- torsion: solve A u = 1 on (-1,1)
    for (double s : {0.25, 0.4}) {
        auto dom = DiscreteDomain::make_interval(1.0, 1.0 / 256.0);
        auto op = FracOperator::assemble(dom, s);
        Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dom->size());
        Eigen::VectorXd u = Eigen::LDLT<Eigen::MatrixXd>(op.matrix()).solve(rhs);
        const double coef = gamma_fn(0.5) /
                            (std::pow(2.0, 2.0 * s) * gamma_fn(1.0 + s) * gamma_fn(0.5 + s));
        double worst = 0.0;
        for (int i = 0; i < dom->size(); ++i) {
            const double x = dom->node(i)[0];
            if (std::abs(x) > 0.8) continue;
            const double exact = coef * std::pow(1.0 - x * x, s);
            worst = std::max(worst, std::abs(u[i] - exact) / exact);
        }
        std::printf("torsion s=%g rel Linf (inner 80%%) = %.4g\n", s, worst);
    }
    return 0;
}
