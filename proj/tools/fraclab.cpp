// fraclab command-line front end.
//
// Subcommands: constants, bubble-check, greens, solve, continuation,
// kernel, pohozaev. All parameters are flat --key value pairs; --config FILE
// loads key=value defaults that flags override. Exit codes: 0 success,
// 1 numerical failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "fraclab/asymptotics.hpp"
#include "fraclab/bubble.hpp"
#include "fraclab/cli.hpp"
#include "fraclab/fracop.hpp"
#include "fraclab/greens.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/solver.hpp"
#include "fraclab/special.hpp"

namespace {

using namespace fraclab;

Exponents exponents_from(const RunConfig& cfg, bool require_q = true) {
    const int n = cfg.integer("n");
    const double s = cfg.num("s");
    Exponents probe;
    probe.n = n;
    probe.s = s;
    const double q = require_q ? cfg.num("q") : cfg.num("q", probe.critical_p() + 2.0);
    const double p = cfg.num("p", (n + 2.0 * s) / (n - 2.0 * s));
    try {
        return Exponents::make(n, s, p, q);
    } catch (const std::domain_error& err) {
        throw UsageError(err.what());
    }
}

std::string kv(const std::string& key, double value, bool csv) {
    return key + (csv ? "," : "=") + format_g17(value) + "\n";
}

int cmd_constants(const RunConfig& cfg) {
    const Exponents e = exponents_from(cfg);
    const PaperConstants k = paper_constants(e);
    const bool csv = cfg.str("format", "table") == "csv";
    std::ostringstream out;
    if (csv) out << "key,value\n";
    out << kv("n", e.n, csv) << kv("s", e.s, csv) << kv("p", e.p, csv)
        << kv("q", e.q, csv) << kv("twoStar", e.two_star(), csv);
    if (!e.is_critical()) out << kv("l", e.l_exponent(), csv);
    out << kv("omegaN", k.omega_n, csv) << kv("cNs", k.c_ns, csv)
        << kv("aNs", k.a_ns, csv) << kv("muNs", k.mu_ns, csv)
        << kv("gamma0", k.gamma0, csv) << kv("blowupLimitPerR", k.blowup_limit_per_r, csv);
    std::cout << out.str();
    ArtifactWriter w(cfg.str("outdir", ""));
    w.write(csv ? "constants.csv" : "constants.txt", out.str());
    w.finalize(cfg);
    return 0;
}

int cmd_bubble_check(const RunConfig& cfg) {
    const Exponents e = exponents_from(cfg, false);
    const PaperConstants k = paper_constants(e);
    bool all_ok = true;
    const auto report = [&](const std::string& name, double residual, double tol) {
        const bool ok = residual <= tol;
        all_ok = all_ok && ok;
        std::printf("%s %-28s residual=%.3e tol=%.1e\n", ok ? "ok  " : "FAIL",
                    name.c_str(), residual, tol);
    };

    const BubbleProfile u = BubbleProfile::standard(e);
    const BubbleProfile z = BubbleProfile::limit_profile(e);
    const double origin[3] = {0.0, 0.0, 0.0};
    std::span<const double> o(origin, static_cast<std::size_t>(e.n));
    report("bubble amplitude at origin", std::abs(eval_bubble(u, o) - k.c_ns), 1e-14);
    report("Z normalized at origin", std::abs(eval_bubble(z, o) - 1.0), 1e-14);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> span(-3.0, 3.0);
    auto bubble_eval = [&](std::span<const double> x) { return eval_bubble(u, x); };
    auto kelvin_u = kelvin_transform(bubble_eval, e);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        double x[3] = {0, 0, 0};
        double r2 = 0.0;
        for (int d = 0; d < e.n; ++d) {
            x[d] = span(rng);
            r2 += x[d] * x[d];
        }
        if (r2 < 1e-4) continue;
        std::span<const double> xs(x, static_cast<std::size_t>(e.n));
        worst = std::max(worst, std::abs(kelvin_u(xs) - eval_bubble(u, xs)) /
                                    eval_bubble(u, xs));
    }
    report("Kelvin invariance of U", worst, 1e-12);

    auto probe = [&](std::span<const double> x) {
        return 1.0 / (2.0 + sq_norm(x));
    };
    auto twice = kelvin_transform(kelvin_transform(probe, e), e);
    worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        double x[3] = {0, 0, 0};
        double r2 = 0.0;
        for (int d = 0; d < e.n; ++d) {
            x[d] = span(rng);
            r2 += x[d] * x[d];
        }
        if (r2 < 1e-4) continue;
        std::span<const double> xs(x, static_cast<std::size_t>(e.n));
        worst = std::max(worst, std::abs(twice(xs) - probe(xs)) / std::abs(probe(xs)));
    }
    report("Kelvin involution", worst, 1e-10);

    auto fundamental = [&](std::span<const double> x) {
        return std::pow(sq_norm(x), -0.5 * (e.n - 2.0 * e.s));
    };
    auto kelvin_f = kelvin_transform(fundamental, e);
    double xprobe[3] = {0.7, e.n > 1 ? -0.4 : 0.0, 0.0};
    report("Kelvin of |x|^(2s-N) is 1",
           std::abs(kelvin_f(std::span<const double>(xprobe,
                                                     static_cast<std::size_t>(e.n))) - 1.0),
           1e-12);

    const RadialIdentity id = identity_nov39(e);
    report("radial identity", std::abs(id.lhs - id.rhs), 1e-8);
    report("radial identity sign", id.rhs < 0.0 ? 0.0 : 1.0, 0.5);

    const double mass = z_moment(e, e.two_star());
    const double quad = sphere_measure(e.n) *
                        integrate_radial(
                            [&](double r) {
                                const double val =
                                    k.c_ns * std::pow(1.0 + r * r, -0.5 * (e.n - 2.0 * e.s));
                                return std::pow(r, e.n - 1.0) *
                                       std::pow(val, e.two_star());
                            },
                            1e-12, e.n);
    report("int U^(2*) closed form", std::abs(mass - quad) / mass, 1e-10);
    std::printf("# int U^(2*) = %s (differs from 1 in general)\n", format_g17(mass).c_str());
    return all_ok ? 0 : 1;
}

int cmd_greens(const RunConfig& cfg) {
    const int n = cfg.integer("n");
    const double s = cfg.num("s");
    const std::string domain = cfg.str("domain", "ball");
    if (domain != "ball" && domain != "interval")
        throw UsageError("greens: --domain must be ball or interval");
    if (n > 2) throw UsageError("greens: N <= 2 supported");
    const double radius = cfg.num("radius", 1.0);
    GreenKernelBall kernel;
    try {
        kernel = GreenKernelBall::make(n, s, radius);
    } catch (const std::domain_error& err) {
        throw UsageError(err.what());
    }
    double x0[2] = {0.0, 0.0};
    {
        std::istringstream x0s(cfg.str("x0", "0"));
        std::string cell;
        int d = 0;
        while (std::getline(x0s, cell, ',') && d < n) x0[d++] = std::stod(cell);
    }
    std::span<const double> x0v(x0, static_cast<std::size_t>(n));
    const int samples = cfg.integer("samples", 41);
    if (samples < 3) throw UsageError("greens: need at least 3 samples");

    const double rconst = boundary_r_constant(kernel, x0v);
    std::ostringstream out;
    out << "# domain=" << domain << " radius=" << format_g17(radius) << " n=" << n
        << " s=" << format_g17(s) << " x0=" << format_g17(x0[0]) << "\n";
    out << "# rConstant=" << format_g17(rconst) << "\n";
    out << "x,green,robin\n";
    for (int i = 0; i < samples; ++i) {
        const double x = -radius + (i + 1) * 2.0 * radius / (samples + 1);
        double xv[2] = {x, 0.0};
        std::span<const double> xs(xv, static_cast<std::size_t>(n));
        double g;
        try {
            g = green_ball(kernel, xs, x0v);
        } catch (const std::domain_error&) {
            g = std::numeric_limits<double>::quiet_NaN();  // x == x0 sample
        }
        out << format_g17(x) << "," << format_g17(g) << ","
            << format_g17(robin_function(kernel, xs)) << "\n";
    }
    std::cout << out.str();
    ArtifactWriter w(cfg.str("outdir", ""));
    w.write("greens.csv", out.str());
    w.finalize(cfg);
    return 0;
}

struct SolveSetup {
    Exponents e;
    double eps;
    DomainPtr base;
    double tol;
    int max_iter;
};

SolveSetup solve_setup(const RunConfig& cfg) {
    SolveSetup s;
    s.e = exponents_from(cfg);
    s.eps = cfg.num("eps");
    if (!(s.eps > 0.0)) throw UsageError("solve: --eps must be positive");
    const std::string domain = cfg.str("domain", "interval");
    const int dim = cfg.integer("dim", 1);
    const double param = cfg.num("param", 1.0);
    const double h = cfg.num("h", 1.0 / 128);
    try {
        s.base = DiscreteDomain::make(domain_kind_from(domain), dim, param, h);
    } catch (const std::exception& err) {
        throw UsageError(err.what());
    }
    if (s.e.n != dim) throw UsageError("solve: --dim must match --n");
    s.tol = cfg.num("tol", dim == 1 ? 1e-7 : 1e-5);
    s.max_iter = cfg.integer("maxiter", 50000);
    return s;
}

int cmd_solve(const RunConfig& cfg) {
    const SolveSetup setup = solve_setup(cfg);
    ManifoldProblem prob = ManifoldProblem::make(setup.e, setup.eps, setup.base);
    SolveResult res =
        minimize_manifold(prob, bubble_initial_guess(prob), setup.tol, setup.max_iter);
    transform_solutions(res, prob);

    const int restarts = cfg.integer("restarts", 0);
    double spread = 0.0;
    if (restarts > 0) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.integer("seed", 0)));
        std::uniform_real_distribution<double> noise(-0.1, 0.1);
        for (int r = 0; r < restarts; ++r) {
            Field init = bubble_initial_guess(prob);
            for (int i = 0; i < init.size(); ++i)
                init.values[i] *= 1.0 + noise(rng);
            const SolveResult alt =
                minimize_manifold(prob, init, setup.tol, setup.max_iter);
            spread = std::max(spread, std::abs(alt.s_eps - res.s_eps));
        }
    }

    std::ostringstream meta;
    meta << "lambda=" << format_g17(res.lambda) << "\n"
         << "sEps=" << format_g17(res.s_eps) << "\n"
         << "iterations=" << res.iterations << "\n"
         << "residual=" << format_g17(res.residual) << "\n"
         << "epsEffective=" << format_g17(res.eps_effective) << "\n"
         << "vResidual=" << format_g17(res.v_residual) << "\n"
         << "uResidual=" << format_g17(res.u_residual) << "\n"
         << "supU=" << format_g17(res.u.values.maxCoeff()) << "\n"
         << "minW=" << format_g17(res.w.values.minCoeff()) << "\n";
    if (restarts > 0) meta << "restartSpread=" << format_g17(spread) << "\n";
    std::cout << meta.str();

    ArtifactWriter w(cfg.str("outdir", ""));
    if (w.enabled()) {
        std::ostringstream ws, vs, us;
        write_field_csv(res.w, ws);
        write_field_csv(res.v, vs);
        write_field_csv(res.u, us);
        w.write("w.csv", ws.str());
        w.write("v.csv", vs.str());
        w.write("u.csv", us.str());
        w.write("solve_meta.txt", meta.str());
        w.finalize(cfg);
    }
    return 0;
}

int cmd_continuation(const RunConfig& cfg) {
    BlowupConfig bc;
    const int n = cfg.integer("n");
    const double s = cfg.num("s");
    const double q = cfg.num("q");
    try {
        bc.e = Exponents::critical(n, s, q);
    } catch (const std::domain_error& err) {
        throw UsageError(err.what());
    }
    if (cfg.has("p") &&
        std::abs(cfg.num("p") - bc.e.critical_p()) > 1e-12 * bc.e.critical_p())
        throw UsageError("continuation: blow-up study requires the critical p");
    bc.halfwidth = cfg.num("halfwidth", 1.0);
    bc.h = cfg.num("h", 1.0 / 512);
    bc.eps0 = cfg.num("eps0", 0.5);
    bc.ratio = cfg.num("ratio", 0.7);
    bc.steps = cfg.integer("steps", 12);
    bc.tol = cfg.num("tol", 1e-8);
    bc.max_iter = cfg.integer("maxiter", 50000);
    if (!(bc.ratio > 0.0 && bc.ratio < 1.0))
        throw UsageError("continuation: --ratio must lie in (0,1)");
    if (bc.steps < 0) throw UsageError("continuation: --steps must be >= 0");

    const BlowupStudy study = blowup_study(bc);
    std::ostringstream out;
    out << "# columns: eps,supNorm,gammaEps,massCrit,blowupProduct,pohozaevLhs,"
           "pohozaevRhs,profileError\n";
    for (const auto& r : study.records) {
        out << format_g17(r.eps) << "," << format_g17(r.sup_norm) << ","
            << format_g17(r.gamma_eps) << "," << format_g17(r.mass_crit) << ","
            << format_g17(r.blowup_product) << "," << format_g17(r.pohozaev_lhs) << ","
            << format_g17(r.pohozaev_rhs) << "," << format_g17(r.profile_error) << "\n";
    }
    std::ostringstream meta;
    meta << "records=" << study.records.size() << "\n"
         << "lastTrusted=" << study.last_trusted << "\n"
         << "abortedUnresolved=" << (study.aborted_unresolved ? 1 : 0) << "\n"
         << "solverFailure=" << (study.solver_failure ? 1 : 0) << "\n";
    if (!study.message.empty()) meta << "message=" << study.message << "\n";
    std::cout << out.str() << meta.str();

    ArtifactWriter w(cfg.str("outdir", ""));
    w.write("continuation.csv", out.str());
    w.write("continuation_meta.txt", meta.str());
    w.finalize(cfg);
    if (study.solver_failure) {
        std::cerr << "error: numerical: " << study.message << "\n";
        return 1;
    }
    return 0;
}

int cmd_kernel(const RunConfig& cfg) {
    const int n = cfg.integer("n");
    const double s = cfg.num("s");
    Exponents e;
    try {
        e = Exponents::critical(n, s, cfg.num("q", (n + 2.0 * s) / (n - 2.0 * s) + 2.0));
    } catch (const std::domain_error& err) {
        throw UsageError(err.what());
    }
    const double halfwidth = cfg.num("halfwidth", 24.0);
    const double h = cfg.num("h", 1.0 / 32);
    const double zero_gap = cfg.num("zerogap", 0.02);
    const KernelSpectrum spec = linearized_kernel(e, halfwidth, h, zero_gap);

    std::ostringstream out;
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spec.spectrum_slice.size(); ++i)
        out << i << "," << format_g17(spec.spectrum_slice[i]) << "\n";
    std::ostringstream meta;
    meta << "nearZeroCount=" << spec.near_zero_count << "\n"
         << "expected=" << (n + 1) << "\n"
         << "boundaryMass=" << format_g17(spec.boundary_mass) << "\n";
    std::cout << out.str() << meta.str();

    ArtifactWriter w(cfg.str("outdir", ""));
    w.write("spectrum.csv", out.str());
    w.write("kernel_meta.txt", meta.str());
    w.finalize(cfg);
    return 0;
}

int cmd_pohozaev(const RunConfig& cfg) {
    const SolveSetup setup = solve_setup(cfg);
    if (setup.base->dim() != 1) throw UsageError("pohozaev: 1D domains only");
    ManifoldProblem prob = ManifoldProblem::make(setup.e, setup.eps, setup.base);
    SolveResult res =
        minimize_manifold(prob, bubble_initial_guess(prob), setup.tol, setup.max_iter);
    transform_solutions(res, prob);
    const PohozaevSides sides = pohozaev_check(res.u, setup.e, res.eps_effective);
    std::ostringstream out;
    out << "lhs=" << format_g17(sides.lhs) << "\n"
        << "rhs=" << format_g17(sides.rhs) << "\n"
        << "relMismatch=" << format_g17(std::abs(sides.lhs - sides.rhs) /
                                        std::abs(sides.rhs))
        << "\n";
    std::cout << out.str();
    ArtifactWriter w(cfg.str("outdir", ""));
    w.write("pohozaev.txt", out.str());
    w.finalize(cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        const fraclab::RunConfig cfg = fraclab::RunConfig::from_args(argc, argv);
        if (cfg.command == "constants") return cmd_constants(cfg);
        if (cfg.command == "bubble-check") return cmd_bubble_check(cfg);
        if (cfg.command == "greens") return cmd_greens(cfg);
        if (cfg.command == "solve") return cmd_solve(cfg);
        if (cfg.command == "continuation") return cmd_continuation(cfg);
        if (cfg.command == "kernel") return cmd_kernel(cfg);
        if (cfg.command == "pohozaev") return cmd_pohozaev(cfg);
        throw fraclab::UsageError("unknown command: " + cfg.command +
                                  " (expected constants|bubble-check|greens|solve|"
                                  "continuation|kernel|pohozaev)");
    } catch (const fraclab::UsageError& err) {
        std::cerr << "error: usage: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: usage: " << err.what() << "\n";
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "error: usage: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: numerical: " << err.what() << "\n";
        return 1;
    }
}
