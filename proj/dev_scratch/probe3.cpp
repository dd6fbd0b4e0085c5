// Dev-only: kernel mode eigenvalue diagnostics.
#include <cstdio>
#include <chrono>
#include "fraclab/solver.hpp"

using namespace fraclab;

static void rayleigh_probe(double halfw, double h) {
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    auto dom = DiscreteDomain::make_interval(halfw, h);
    auto op = FracOperator::assemble(dom, 0.25);
    const BubbleProfile z = BubbleProfile::limit_profile(e);
    for (int m = 1; m <= 2; ++m) {
        KernelMode mode = KernelMode::make(e, m);
        Field psi = Field::sample(dom, [&](std::span<const double> x) {
            return eval_kernel_mode(mode, x);
        });
        Field apsi = op.apply(psi);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < dom->size(); ++i) {
            const double pot = e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);
            num += (apsi.values[i] - pot * psi.values[i]) * psi.values[i];
            den += psi.values[i] * psi.values[i];
        }
        std::printf("  box=%g h=1/%g mode %d Rayleigh = %.6g\n", halfw, 1 / h, m, num / den);
    }
}

int main() {
    rayleigh_probe(24.0, 1.0 / 32);
    rayleigh_probe(24.0, 1.0 / 64);
    rayleigh_probe(48.0, 1.0 / 32);
    rayleigh_probe(96.0, 1.0 / 16);
    rayleigh_probe(192.0, 1.0 / 8);

    // free-space residual of the kernel identity for sampled psi2
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    auto dom = DiscreteDomain::make_interval(24.0, 1.0 / 32);
    auto op = FracOperator::assemble(dom, 0.25);
    const BubbleProfile z = BubbleProfile::limit_profile(e);
    for (int m = 1; m <= 2; ++m) {
        KernelMode mode = KernelMode::make(e, m);
        auto eval = [&](std::span<const double> x) { return eval_kernel_mode(mode, x); };
        Field psi = Field::sample(dom, eval);
        Field apsi = op.apply_with_exterior(psi, eval, 2.0 * 0.25 + (m == 1 ? 1.0 : 0.0));
        double worst = 0.0;
        for (int i = 0; i < dom->size(); ++i) {
            const double x = dom->node(i)[0];
            if (std::abs(x) > 4.0) continue;
            const double pot = e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);
            worst = std::max(worst, std::abs(apsi.values[i] - pot * psi.values[i]));
        }
        std::printf("free-space kernel residual mode %d (|x|<=4): %.4g\n", m, worst);
    }
    return 0;
}
