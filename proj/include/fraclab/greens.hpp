#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "fraclab/quadrature.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

/// Closed-form Green kernel of (-Delta)^s on the ball B_R (the interval for
/// N = 1), exterior-zero data:
///
///   G(x,y) = kappa |x-y|^(2s-N) int_0^(r0) t^(s-1) (1+t)^(-N/2) dt,
///   r0     = (R^2-|x|^2)(R^2-|y|^2) / (R^2 |x-y|^2),
///   kappa  = Gamma(N/2) / (2^(2s) pi^(N/2) Gamma(s)^2).
///
/// As r0 -> inf the incomplete integral tends to B(s, N/2-s) and
/// kappa B(s, N/2-s) = a_{N,s}, so G approaches the fundamental solution;
/// the regular part H = a_{N,s}|x-y|^(2s-N) - G is the complementary tail
/// integral and extends to the diagonal in closed form.
struct GreenKernelBall {
    int n = 1;
    double s = 0.25;
    double radius = 1.0;
    double kappa = 0.0;
    double a_ns = 0.0;

    static GreenKernelBall make(int n, double s, double radius) {
        if (!(radius > 0.0)) throw std::domain_error("GreenKernelBall: radius > 0");
        if (!(s > 0.0 && s < 1.0) || n < 1 || !(n > 2.0 * s))
            throw std::domain_error("GreenKernelBall: requires 0 < s < 1 and N > 2s");
        GreenKernelBall k;
        k.n = n;
        k.s = s;
        k.radius = radius;
        k.kappa = gamma_fn(0.5 * n) /
                  (std::pow(2.0, 2.0 * s) * std::pow(M_PI, 0.5 * n) * gamma_fn(s) * gamma_fn(s));
        k.a_ns = gamma_fn(0.5 * n - s) /
                 (std::pow(2.0, 2.0 * s) * std::pow(M_PI, 0.5 * n) * gamma_fn(s));
        return k;
    }

    /// Incomplete kernel integral int_0^(r0) t^(s-1)(1+t)^(-N/2) dt. For
    /// large r0 the complement of the tail avoids wide panels.
    double head_integral(double r0) const {
        if (r0 <= 0.0) return 0.0;
        if (r0 <= 1.0)
            return integrate_power_endpoint(
                s, [&](double t) { return std::pow(1.0 + t, -0.5 * n); }, r0);
        return beta_fn(s, 0.5 * n - s) - tail_integral(r0);
    }

    /// Tail int_(r0)^inf t^(s-1)(1+t)^(-N/2) dt; the integrand decays like
    /// t^(s-1-N/2).
    double tail_integral(double r0) const {
        if (r0 <= 0.0) return beta_fn(s, 0.5 * n - s);
        return integrate_tail(
            [&](double t) { return std::pow(t, s - 1.0) * std::pow(1.0 + t, -0.5 * n); },
            r0, 1e-12, 0.5 * n - s);
    }

    double r0_argument(std::span<const double> x, std::span<const double> y) const {
        const double r2 = radius * radius;
        double xx = 0.0, yy = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            xx += x[i] * x[i];
            yy += y[i] * y[i];
            d2 += (x[i] - y[i]) * (x[i] - y[i]);
        }
        if (!(xx < r2) || !(yy < r2))
            throw std::domain_error("green kernel: point outside the domain");
        if (d2 == 0.0) throw std::domain_error("green kernel: singular at x = y");
        return (r2 - xx) * (r2 - yy) / (r2 * d2);
    }
};

inline double green_ball(const GreenKernelBall& k, std::span<const double> x,
                         std::span<const double> y) {
    const double r0 = k.r0_argument(x, y);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return k.kappa * std::pow(d2, 0.5 * (2.0 * k.s - k.n)) * k.head_integral(r0);
}

/// Regular part H(x,y) = a_{N,s}|x-y|^(2s-N) - G(x,y), evaluated directly
/// as the complementary tail so no cancellation occurs near the diagonal.
inline double green_regular_part(const GreenKernelBall& k, std::span<const double> x,
                                 std::span<const double> y) {
    const double r0 = k.r0_argument(x, y);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return k.kappa * std::pow(d2, 0.5 * (2.0 * k.s - k.n)) * k.tail_integral(r0);
}

/// Robin function R(x) = H(x,x). The diagonal limit of the complementary
/// tail is closed form:
///   R(x) = kappa / (N/2 - s) * R^(2s-N) * (1 - |x|^2/R^2)^(2s-N).
inline double robin_function(const GreenKernelBall& k, std::span<const double> x) {
    double xx = 0.0;
    for (double c : x) xx += c * c;
    const double rel = 1.0 - xx / (k.radius * k.radius);
    if (!(rel > 0.0)) throw std::domain_error("robin_function: diverges on the boundary");
    return k.kappa / (0.5 * k.n - k.s) * std::pow(k.radius, 2.0 * k.s - k.n) *
           std::pow(rel, 2.0 * k.s - k.n);
}

/// Boundary limit of G(x, x0)/d^s(x) at the boundary point xhat:
///   (kappa 2^s / s) R^s (1 - |x0|^2/R^2)^s |xhat - x0|^(-N).
inline double green_boundary_quotient(const GreenKernelBall& k,
                                      std::span<const double> xhat,
                                      std::span<const double> x0) {
    double xx = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < xhat.size(); ++i) {
        xx += x0[i] * x0[i];
        d2 += (xhat[i] - x0[i]) * (xhat[i] - x0[i]);
    }
    const double rel = 1.0 - xx / (k.radius * k.radius);
    if (!(rel > 0.0)) throw std::domain_error("boundary quotient: x0 must be interior");
    return k.kappa * std::pow(2.0, k.s) / k.s * std::pow(k.radius, k.s) *
           std::pow(rel, k.s) * std::pow(d2, -0.5 * k.n);
}

/// Boundary constant of the blow-up limit,
///   R_{N,s,x0} = int_{dOmega} (G(x,x0)/d^s)^2 <x - x0, nu> dS.
/// For N = 1 the integral is the two-endpoint sum; for N = 2 it is a smooth
/// periodic integral over the circle.
inline double boundary_r_constant(const GreenKernelBall& k, std::span<const double> x0) {
    double xx = 0.0;
    for (double c : x0) xx += c * c;
    if (!(xx < k.radius * k.radius))
        throw std::domain_error("boundary_r_constant: x0 must be interior");
    if (k.n == 1) {
        const double right[1] = {k.radius};
        const double left[1] = {-k.radius};
        const double qr = green_boundary_quotient(k, right, x0);
        const double ql = green_boundary_quotient(k, left, x0);
        return qr * qr * (k.radius - x0[0]) + ql * ql * (k.radius + x0[0]);
    }
    if (k.n == 2) {
        return integrate(
            [&](double theta) {
                const double xhat[2] = {k.radius * std::cos(theta), k.radius * std::sin(theta)};
                const double q = green_boundary_quotient(k, xhat, x0);
                const double flux =
                    k.radius - (x0[0] * xhat[0] + x0[1] * xhat[1]) / k.radius;
                return q * q * flux * k.radius;
            },
            0.0, 2.0 * M_PI);
    }
    throw std::domain_error("boundary_r_constant: N <= 2 supported");
}

} // namespace fraclab
