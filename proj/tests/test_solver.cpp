#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fraclab/solver.hpp"

using namespace fraclab;

TEST_CASE("manifold problem construction", "[solver]") {
    const Exponents e = Exponents::make(1, 0.25, 3.0, 5.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / 64);
    CHECK_THROWS_AS(ManifoldProblem::make(e, 0.0, base), std::domain_error);
    const ManifoldProblem prob = ManifoldProblem::make(e, 0.3, base);
    // factor = eps^(-(p-1)/(2s(q-p))) = eps^(-2)
    CHECK(prob.scaled_factor == Catch::Approx(std::pow(0.3, -2.0)).epsilon(1e-14));
    CHECK(prob.scaled_domain->size() == base->size());
    CHECK(prob.scaled_domain->param() ==
          Catch::Approx(prob.scaled_factor * base->param()).epsilon(1e-14));
    // the exact dilation identity behind op_scale
    const FracOperator direct = FracOperator::assemble(prob.scaled_domain, e.s);
    Field f(prob.base_domain, Eigen::VectorXd::Random(base->size()));
    const Eigen::VectorXd via_scale = prob.apply_scaled(f.values);
    Field fs(prob.scaled_domain, f.values);
    const Eigen::VectorXd via_direct = direct.apply(fs).values;
    for (int i = 0; i < base->size(); ++i)
        CHECK(via_scale[i] == Catch::Approx(via_direct[i]).margin(1e-12));
}

TEST_CASE("converged solve satisfies the variational contract", "[solver]") {
    std::vector<double> trace;
    const Exponents e = Exponents::make(1, 0.25, 3.0, 5.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / 128);
    ManifoldProblem prob = ManifoldProblem::make(e, 0.3, base);
    SolveResult res =
        minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 50000, &trace);
    transform_solutions(res, prob);

    SECTION("residual, positivity, constraint") {
        CHECK(res.residual <= 1e-9);
        CHECK(res.w.values.minCoeff() > 0.0);
        const double constraint = res.w.integrate_pointwise(
            [&](double v) { return std::pow(v, e.p + 1.0); });
        CHECK(constraint == Catch::Approx(1.0).epsilon(1e-12));
    }

    SECTION("multiplier identity lambda = ||w||^2 + int w^(q+1)") {
        const double cell = prob.scaled_domain->cell_measure();
        const double energy = prob.apply_scaled(res.w.values).dot(res.w.values) * cell;
        const double mass_q = res.w.integrate_pointwise(
            [&](double v) { return std::pow(v, e.q + 1.0); });
        CHECK(std::abs(res.lambda - (energy + mass_q)) <= 1e-8 * res.lambda);
    }

    SECTION("strict multiplier bounds 2S < lambda < (q+1)S") {
        CHECK(2.0 * res.s_eps < res.lambda);
        CHECK(res.lambda < (e.q + 1.0) * res.s_eps);
    }

    SECTION("energy is non-increasing across accepted steps") {
        for (std::size_t i = 1; i < trace.size(); ++i)
            CHECK(trace[i] <= trace[i - 1] + 1e-12 * std::abs(trace[i - 1]));
    }

    SECTION("symmetry inheritance on the symmetric domain") {
        const int n = res.w.size();
        for (int i = 0; i < n / 2; ++i)
            CHECK(std::abs(res.w.values[i] - res.w.values[n - 1 - i]) <= 1e-9);
    }

    SECTION("transforms solve their equations") {
        // critical mode keeps the constraint: int v^(p+1) = 1
        const double vmass = res.v.integrate_pointwise(
            [&](double v) { return std::pow(v, e.p + 1.0); });
        CHECK(vmass == Catch::Approx(1.0).epsilon(1e-8));
        CHECK(res.v_residual <= 10.0 * 1e-9 * prob.scaled_factor);
        CHECK(res.u_residual <= 10.0 * 1e-9 * prob.scaled_factor);
        CHECK(res.eps_effective ==
              Catch::Approx(0.3 * std::pow(res.lambda, -2.0)).epsilon(1e-12));
    }
}

TEST_CASE("supercritical transform mass exponent", "[solver]") {
    // int v^(p+1) = eps^((p(N-2s)-(N+2s))/(2s(q-p))) for p = 5, q = 7.
    const Exponents e = Exponents::make(1, 0.25, 5.0, 7.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / 64);
    const double eps = 0.4;
    ManifoldProblem prob = ManifoldProblem::make(e, eps, base);
    SolveResult res = minimize_manifold(prob, bubble_initial_guess(prob), 1e-8, 50000);
    transform_solutions(res, prob);
    const double vmass = res.v.integrate_pointwise(
        [&](double v) { return std::pow(v, e.p + 1.0); });
    const double expo = (e.p * (e.n - 2.0 * e.s) - (e.n + 2.0 * e.s)) /
                        (2.0 * e.s * (e.q - e.p));
    CHECK(vmass == Catch::Approx(std::pow(eps, expo)).epsilon(1e-10));
}

TEST_CASE("multi-start agreement as a uniqueness proxy", "[solver]") {
    const Exponents e = Exponents::make(1, 0.25, 3.0, 5.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / 64);
    ManifoldProblem prob = ManifoldProblem::make(e, 0.3, base);
    const SolveResult ref = minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 50000);
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    for (int t = 0; t < 5; ++t) {
        Field init = bubble_initial_guess(prob);
        for (int i = 0; i < init.size(); ++i) init.values[i] *= 1.0 + noise(rng);
        const SolveResult alt = minimize_manifold(prob, init, 1e-9, 50000);
        CHECK(std::abs(alt.s_eps - ref.s_eps) <= 1e-6 * ref.s_eps);
    }
}

TEST_CASE("solver failure carries the last iterate", "[solver]") {
    const Exponents e = Exponents::make(1, 0.25, 3.0, 5.0);
    auto base = DiscreteDomain::make_interval(1.0, 1.0 / 64);
    ManifoldProblem prob = ManifoldProblem::make(e, 0.3, base);
    try {
        minimize_manifold(prob, bubble_initial_guess(prob), 1e-12, 3);
        FAIL("expected SolveFailure");
    } catch (const SolveFailure& f) {
        CHECK(f.last_iterate.w.size() == base->size());
        CHECK(f.last_iterate.iterations == 3);
        CHECK(f.last_iterate.residual > 0.0);
    }
    Field zero(prob.scaled_domain);
    CHECK_THROWS_AS(minimize_manifold(prob, zero, 1e-8, 10), std::domain_error);
}

TEST_CASE("appendix trend: S_rho ladders", "[solver][slow]") {
    SECTION("critical mode decreases with shrinking gaps") {
        const Exponents e = Exponents::critical(1, 0.25, 5.0);
        double prev = 0.0, prev_gap = 0.0;
        int step = 0;
        for (double rho : {1.0, 2.0, 4.0, 8.0}) {
            auto base = DiscreteDomain::make_interval(rho, 1.0 / 64);
            ManifoldProblem prob = ManifoldProblem::make(e, 1.0, base);
            const SolveResult res =
                minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 100000);
            if (step > 0) {
                CHECK(res.s_eps < prev);
                const double gap = prev - res.s_eps;
                if (step > 1) CHECK(gap < prev_gap);
                prev_gap = gap;
            }
            prev = res.s_eps;
            ++step;
        }
        // lower bound S/2 from the quadratic-form Sobolev quotient
        CHECK(prev > 0.5 * std::pow(z_moment(e, e.two_star()), 2.0 * e.s / e.n));
    }

    SECTION("supercritical mode decreases toward the entire-space level") {
        const Exponents e = Exponents::make(1, 0.25, 5.0, 7.0);
        double vals[3];
        int idx = 0;
        for (double rho : {2.0, 4.0, 8.0}) {
            auto base = DiscreteDomain::make_interval(rho, 1.0 / 64);
            ManifoldProblem prob = ManifoldProblem::make(e, 1.0, base);
            vals[idx++] =
                minimize_manifold(prob, bubble_initial_guess(prob), 1e-9, 100000).s_eps;
        }
        CHECK(vals[1] < vals[0]);
        CHECK(vals[2] < vals[1]);
        CHECK(vals[1] - vals[2] < vals[0] - vals[1]);

        // F of the rho=8 minimizer truncated onto the rho=4 box approximates
        // the entire-space level from above.
        auto base8 = DiscreteDomain::make_interval(8.0, 1.0 / 64);
        ManifoldProblem prob8 = ManifoldProblem::make(e, 1.0, base8);
        const SolveResult res8 =
            minimize_manifold(prob8, bubble_initial_guess(prob8), 1e-9, 100000);
        auto dom4 = DiscreteDomain::make_interval(4.0, 1.0 / 64);
        const FracOperator op4 = FracOperator::assemble(dom4, e.s);
        Field trunc(dom4);
        for (int i = 0; i < dom4->size(); ++i) {
            const int src = prob8.scaled_domain->lattice_index(dom4->lattice(i)[0]);
            trunc.values[i] = res8.w.values[src];
        }
        const double f_trunc = energy_F(op4, trunc, e);
        CHECK(f_trunc >= res8.s_eps);
        CHECK(f_trunc <= 1.2 * res8.s_eps);
    }
}

TEST_CASE("first eigenpair", "[solver]") {
    auto dom2 = DiscreteDomain::make_interval(1.0, 1.0 / 64);
    auto dom4 = DiscreteDomain::make_interval(2.0, 1.0 / 64);
    const FracOperator op2 = FracOperator::assemble(dom2, 0.25);
    const FracOperator op4 = FracOperator::assemble(dom4, 0.25);
    const auto [l2, phi2] = first_eigenpair(op2);
    const auto [l4, phi4] = first_eigenpair(op4);
    CHECK(l2 > 0.0);
    CHECK(phi2.values.minCoeff() > 0.0);
    CHECK(l4 < l2);  // domain monotonicity
    // eigen residual
    const Field r = op2.apply(phi2);
    CHECK((r.values - l2 * phi2.values).lpNorm<Eigen::Infinity>() <= 1e-10 * l2);
}

TEST_CASE("linearized kernel at the bubble", "[solver][slow]") {
    const Exponents e = Exponents::critical(1, 0.25, 5.0);
    CHECK_THROWS_AS(linearized_kernel(Exponents::make(1, 0.25, 5.0, 7.0), 8.0, 0.125, 0.1),
                    std::domain_error);
    // insufficient box: candidate modes hit the wall
    CHECK_THROWS_AS(linearized_kernel(e, 1.0, 1.0 / 64, 0.1), NumericalError);

    const KernelSpectrum ks = linearized_kernel(e, 24.0, 1.0 / 16, 0.1);
    CHECK(ks.near_zero_count == e.n + 1);
    // clear gap separating the near-zero pair from the rest
    CHECK(std::abs(ks.spectrum_slice[2]) > 3.0 * std::abs(ks.spectrum_slice[1]));

    auto dom = DiscreteDomain::make_interval(24.0, 1.0 / 16);
    for (int m = 1; m <= 2; ++m) {
        const KernelMode mode = KernelMode::make(e, m);
        Eigen::VectorXd psi(dom->size());
        for (int i = 0; i < dom->size(); ++i)
            psi[i] = eval_kernel_mode(mode, dom->node(i));
        psi.normalize();
        double best = 0.0;
        for (int c = 0; c < ks.near_modes.cols(); ++c)
            best = std::max(best, std::abs(psi.dot(ks.near_modes.col(c).normalized())));
        CHECK(best >= 0.95);
    }

    // Morse direction: the Rayleigh quotient of Z itself is negative,
    // <LZ, Z> = (1-p) int Z^(2*) < 0.
    const BubbleProfile z = BubbleProfile::limit_profile(e);
    const FracOperator op = FracOperator::assemble(dom, e.s);
    Field zf = Field::sample(dom, [&](std::span<const double> x) { return eval_bubble(z, x); });
    const Field az = op.apply(zf);
    double quad = 0.0;
    for (int i = 0; i < dom->size(); ++i) {
        const double pot = e.p * std::pow(zf.values[i], e.p - 1.0);
        quad += (az.values[i] - pot * zf.values[i]) * zf.values[i];
    }
    CHECK(quad < 0.0);
}
