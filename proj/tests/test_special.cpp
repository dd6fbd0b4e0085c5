#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fraclab/quadrature.hpp"
#include "fraclab/special.hpp"

using namespace fraclab;

TEST_CASE("gamma function classical values", "[special]") {
    CHECK(gamma_fn(1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == Catch::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == Catch::Approx(24.0).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.3), std::domain_error);
}

TEST_CASE("gamma accuracy over (0, 50] against libm lgamma", "[special]") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uni(1e-3, 50.0);
    for (int t = 0; t < 2000; ++t) {
        const double x = uni(rng);
        const double ref = std::exp(std::lgamma(x));
        CHECK(std::abs(gamma_fn(x) - ref) <= 1e-13 * ref);
        CHECK(std::abs(std::exp(log_gamma(x)) - ref) <= 1e-13 * ref);
    }
}

TEST_CASE("beta function basics", "[special]") {
    CHECK(beta_fn(0.5, 0.5) == Catch::Approx(M_PI).epsilon(1e-14));
    CHECK(beta_fn(1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(beta_fn(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(beta_fn(1.0, -2.0), std::domain_error);
}

TEST_CASE("beta (N/2, s) pinned by the quadrature oracle", "[special]") {
    // B(a,b) = int_0^inf t^(a-1)(1+t)^(-a-b) dt, folded symmetrically onto
    // (0,1): B = int_0^1 [t^(a-1) + t^(b-1)] (1+t)^(-a-b) dt.
    const double a = 0.5, b = 0.25;  // N = 1, s = 0.25
    const auto body = [&](double t) { return std::pow(1.0 + t, -a - b); };
    const double oracle =
        integrate_power_endpoint(a, body, 1.0) + integrate_power_endpoint(b, body, 1.0);
    CHECK(oracle == Catch::Approx(5.2441151085842).epsilon(1e-12));
    CHECK(beta_fn(a, b) == Catch::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("beta matches the Gamma ratio on 1000 random pairs", "[special]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.1, 20.0);
    for (int t = 0; t < 1000; ++t) {
        const double a = uni(rng), b = uni(rng);
        const double via_gamma = gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
        const double bb = beta_fn(a, b);
        CHECK(std::abs(bb - via_gamma) <= 1e-12 * bb);
    }
}

TEST_CASE("Gamma(1+s)^2 equals s^2 Gamma(s)^2", "[special]") {
    for (double s = 0.05; s < 1.0; s += 0.05) {
        const double lhs = std::pow(gamma_fn(1.0 + s), 2.0);
        const double rhs = s * s * std::pow(gamma_fn(s), 2.0);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * rhs);
    }
}

TEST_CASE("exponent validation", "[special]") {
    CHECK_THROWS_AS(Exponents::make(1, 0.25, 3.0, 2.0), std::domain_error);  // q <= p
    CHECK_THROWS_AS(Exponents::make(1, 0.25, 2.0, 5.0), std::domain_error);  // p subcritical
    CHECK_THROWS_AS(Exponents::make(1, 1.25, 3.0, 5.0), std::domain_error);  // s out of range
    CHECK_THROWS_AS(Exponents::make(1, 0.75, 3.0, 5.0), std::domain_error);  // N < 2s

    const Exponents e = Exponents::critical(1, 0.25, 5.0);
    CHECK(e.p == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(e.two_star() == Catch::Approx(4.0).epsilon(1e-15));
    CHECK(e.is_critical());
    CHECK_THROWS_AS(e.l_exponent(), std::domain_error);

    const Exponents sup = Exponents::make(1, 0.25, 5.0, 7.0);
    CHECK_FALSE(sup.is_critical());
    CHECK(sup.l_exponent() == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("paper constants: closed forms and positivity", "[special]") {
    const Exponents e = Exponents::critical(1, 0.25, 5.0);
    const PaperConstants k = paper_constants(e);
    CHECK(k.omega_n == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(paper_constants(Exponents::critical(2, 0.5, 4.0)).omega_n ==
          Catch::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(sphere_measure(3) == Catch::Approx(4.0 * M_PI).epsilon(1e-14));

    const double c_direct = std::pow(2.0, 0.25) *
                            std::sqrt(gamma_fn(0.75) / gamma_fn(0.25));
    CHECK(k.c_ns == Catch::Approx(c_direct).epsilon(1e-14));
    CHECK(k.mu_ns == Catch::Approx(std::pow(k.c_ns, 8.0)).epsilon(1e-13));

    CHECK(k.c_ns > 0.0);
    CHECK(k.a_ns > 0.0);
    CHECK(k.mu_ns > 0.0);
    CHECK(k.gamma0 > 0.0);

    // gamma0 = (omega_N c^(2*)/2) Gamma(N/2) Gamma(s) / Gamma((N+2s)/2)
    const double g0 = 0.5 * k.omega_n * std::pow(k.c_ns, 4.0) * gamma_fn(0.5) *
                      gamma_fn(0.25) / gamma_fn(0.75);
    CHECK(k.gamma0 == Catch::Approx(g0).epsilon(1e-13));

    CHECK(k.blowup_limit(0.0) == 0.0);
}

TEST_CASE("gamma0 equals the radial quadrature of int Z^(2*-1)", "[special]") {
    for (const auto& e :
         {Exponents::critical(1, 0.25, 5.0), Exponents::critical(2, 0.5, 4.0)}) {
        const PaperConstants k = paper_constants(e);
        const double expo = 0.5 * (e.n - 2.0 * e.s) * (e.two_star() - 1.0);
        const double quad = sphere_measure(e.n) *
                            integrate_radial(
                                [&](double r) {
                                    return std::pow(r, e.n - 1.0) *
                                           std::pow(1.0 + r * r / k.mu_ns, -expo);
                                },
                                1e-12, 2.0 * e.s);
        CHECK(quad == Catch::Approx(k.gamma0).epsilon(1e-10));
    }
}

TEST_CASE("blow-up limit: theorem form agrees with the assembled form", "[special]") {
    // The last tuple sits below the critical q threshold; the two algebraic
    // forms still agree as formulas (shared negative denominator).
    const std::tuple<int, double, double> cases[] = {
        {1, 0.25, 5.0}, {1, 0.4, 9.0}, {2, 0.5, 4.0}, {3, 0.75, 2.5}};
    for (const auto& [n, s, q] : cases) {
        for (double r : {0.1, 1.0, 7.5}) {
            const double theorem = blowup_limit_theorem(n, s, q, r);
            const double assembled = blowup_limit_assembled(n, s, q, r);
            CHECK(std::abs(theorem - assembled) <= 1e-10 * std::abs(assembled));
        }
    }
    // The validated constants path refuses a non-positive denominator.
    Exponents bad;
    bad.n = 3;
    bad.s = 0.75;
    bad.p = 2.0;
    bad.q = 2.5;
    CHECK_THROWS_AS(paper_constants(bad), std::domain_error);
}

TEST_CASE("quadrature building blocks", "[special]") {
    CHECK(integrate([](double x) { return std::cos(x); }, 0.0, 1.0) ==
          Catch::Approx(std::sin(1.0)).epsilon(1e-13));
    // endpoint power singularity: int_0^1 t^(-3/4) dt = 4
    CHECK(integrate_power_endpoint(0.25, [](double) { return 1.0; }, 1.0) ==
          Catch::Approx(4.0).epsilon(1e-12));
    // radial improper integral with algebraic tail: int_0^inf r/(1+r^2)^2 = 1/2
    CHECK(integrate_radial([](double r) { return r / std::pow(1.0 + r * r, 2.0); },
                           1e-13, 2.0) == Catch::Approx(0.5).epsilon(1e-12));
    // tail helper: int_2^inf r^(-3/2) dr = sqrt(2)
    CHECK(integrate_tail([](double r) { return std::pow(r, -1.5); }, 2.0, 1e-13, 0.5) ==
          Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
