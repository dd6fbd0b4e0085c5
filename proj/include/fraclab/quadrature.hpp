#pragma once

#include <cmath>
#include <stdexcept>

#include "fraclab/support.hpp"

namespace fraclab {

namespace detail {

// Gauss(7)-Kronrod(15) nodes and weights on [-1, 1]. The embedded 7-point
// Gauss rule shares nodes 1, 3, 5, 7 and supplies the error estimate.
inline constexpr double kGK15Nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double kGK15Weights[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
inline constexpr double kG7Weights[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - hw * kGK15Nodes[i]);
        fv[14 - i] = f(mid + hw * kGK15Nodes[i]);
    }
    fv[7] = f(mid);
    double kronrod = kGK15Weights[7] * fv[7];
    for (int i = 0; i < 7; ++i) kronrod += kGK15Weights[i] * (fv[i] + fv[14 - i]);
    double gauss = kG7Weights[3] * fv[7];
    for (int i = 0; i < 3; ++i) gauss += kG7Weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    value = kronrod * hw;
    error = std::abs((kronrod - gauss) * hw);
}

// The tolerance is per panel (not split across children), so endpoint
// grading costs depth linearly rather than exponentially.
template <class F>
inline double gk15_adaptive(const F& f, double a, double b, double abstol, int depth) {
    double value, error;
    gk15_panel(f, a, b, value, error);
    if (error <= abstol || depth <= 0) {
        if (depth <= 0 && !(error <= 1e4 * abstol))
            throw NumericalError("quadrature: panel refinement exhausted");
        return value;
    }
    const double mid = 0.5 * (a + b);
    return gk15_adaptive(f, a, mid, abstol, depth - 1) +
           gk15_adaptive(f, mid, b, abstol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b]
/// to absolute tolerance abstol.
template <class F>
inline double integrate(const F& f, double a, double b, double abstol = 1e-12) {
    if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
    if (a == b) return 0.0;
    return detail::gk15_adaptive(f, a, b, abstol, 52);
}

/// Integral of t^(alpha-1) * g(t) over [0, b] with alpha > 0, where g is
/// smooth. An endpoint power substitution t = tau^m keeps the integrand
/// regular for small alpha.
template <class G>
inline double integrate_power_endpoint(double alpha, const G& g, double b,
                                       double abstol = 1e-12) {
    if (!(alpha > 0.0)) throw std::domain_error("integrate_power_endpoint: alpha <= 0");
    const int m = alpha >= 2.0 ? 1 : static_cast<int>(std::ceil(2.0 / alpha));
    const double bm = std::pow(b, 1.0 / m);
    const auto h = [&](double tau) {
        const double t = std::pow(tau, m);
        return static_cast<double>(m) * std::pow(tau, m * alpha - 1.0) * g(t);
    };
    return integrate(h, 0.0, bm, abstol);
}

/// Improper integral of f over [0, inf). The range is split at r = 1 and the
/// tail is mapped with t = 1/r. tail_alpha describes the algebraic decay
/// f(r) ~ r^(-1-tail_alpha); the mapped tail then has a t^(tail_alpha - 1)
/// endpoint factor which is peeled off with the power substitution.
template <class F>
inline double integrate_radial(const F& f, double abstol = 1e-12, double tail_alpha = 1.0) {
    const double head = integrate(f, 0.0, 1.0, abstol);
    const auto mapped = [&f](double t) { return f(1.0 / t) / (t * t); };
    if (tail_alpha == 1.0)
        return head + integrate(mapped, 0.0, 1.0, abstol);
    const auto regular = [&](double t) {
        return mapped(t) * std::pow(t, 1.0 - tail_alpha);
    };
    return head + integrate_power_endpoint(tail_alpha, regular, 1.0, abstol);
}

/// Integral of f over [a, inf) for integrands decaying like r^(-1-alpha),
/// via the same reciprocal map.
template <class F>
inline double integrate_tail(const F& f, double a, double abstol = 1e-12,
                             double tail_alpha = 1.0) {
    if (!(a > 0.0)) throw std::invalid_argument("integrate_tail: requires a > 0");
    const auto mapped = [&f, a](double t) { return f(a / t) * a / (t * t); };
    if (tail_alpha == 1.0) return integrate(mapped, 0.0, 1.0, abstol);
    const auto regular = [&](double t) {
        return mapped(t) * std::pow(t, 1.0 - tail_alpha);
    };
    return integrate_power_endpoint(tail_alpha, regular, 1.0, abstol);
}

} // namespace fraclab
