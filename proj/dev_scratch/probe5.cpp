// Dev-only: box-96 kernel spectrum + blow-up study dry run.
#include <cstdio>
#include <chrono>
#include "fraclab/asymptotics.hpp"

using namespace fraclab;
using clk = std::chrono::steady_clock;
static double secs(clk::time_point a, clk::time_point b) { return std::chrono::duration<double>(b - a).count(); }

int main(int argc, char** argv) {
    if (argc > 1 && std::string(argv[1]) == "kernel96") {
        Exponents e = Exponents::critical(1, 0.25, 5.0);
        auto t0 = clk::now();
        KernelSpectrum ks = linearized_kernel(e, 96.0, 1.0 / 16, 0.02);
        auto t1 = clk::now();
        std::printf("box96 h=1/16: count=%d slice:", ks.near_zero_count);
        for (double v : ks.spectrum_slice) std::printf(" %.5g", v);
        std::printf(" [%.0fs]\n", secs(t0, t1));
        return 0;
    }
    // blow-up: coarse run to check machinery, then timing estimate at target h
    BlowupConfig cfg;
    cfg.e = Exponents::critical(1, 0.25, 5.0);
    cfg.h = argc > 1 ? 1.0 / std::atof(argv[1]) : 1.0 / 256;
    cfg.steps = argc > 2 ? std::atoi(argv[2]) : 6;
    cfg.tol = 1e-8;
    auto t0 = clk::now();
    BlowupStudy st = blowup_study(cfg);
    auto t1 = clk::now();
    const double K = paper_constants(cfg.e).blowup_limit(
        boundary_r_constant(GreenKernelBall::make(1, 0.25, 1.0), std::span<const double>(std::array<double,1>{0.0}.data(), 1)));
    std::printf("K closed form = %.8g   [run %.1fs]\n", K, secs(t0, t1));
    std::printf("%-10s %-10s %-10s %-10s %-12s %-22s %-10s %s\n", "eps", "sup", "gamma", "mass",
                "product", "poho lhs/rhs", "mismatch", "profErr");
    for (const auto& r : st.records) {
        std::printf("%-10.5g %-10.6g %-10.5g %-10.6g %-12.8g %-11.5g/%-10.5g %-10.3g %.4g%s\n",
                    r.eps, r.sup_norm, r.gamma_eps, r.mass_crit, r.blowup_product,
                    r.pohozaev_lhs, r.pohozaev_rhs,
                    std::abs(r.pohozaev_lhs - r.pohozaev_rhs) / std::abs(r.pohozaev_rhs),
                    r.profile_error, r.trusted ? "" : "  UNTRUSTED");
    }
    std::printf("last_trusted=%d aborted=%d fail=%d %s\n", st.last_trusted,
                st.aborted_unresolved, st.solver_failure, st.message.c_str());
    return 0;
}
