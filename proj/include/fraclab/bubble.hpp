#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

#include "fraclab/quadrature.hpp"
#include "fraclab/special.hpp"

namespace fraclab {

inline double sq_norm(std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return r2;
}

/// Entire-space profile amplitude * (1 + |x-center|^2 / scale^2)^(-(N-2s)/2).
///
/// The standard bubble U has center 0, scale 1 and amplitude c_{N,s}; the
/// rescaled family U_{eps,a} and the normalized limit profile Z are the same
/// shape with adjusted scale and amplitude.
struct BubbleProfile {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double scale = 1.0;
    double amplitude = 1.0;
    Exponents e;

    static BubbleProfile standard(const Exponents& e) {
        BubbleProfile b;
        b.e = e;
        b.amplitude = paper_constants(e).c_ns;
        return b;
    }

    /// U_{eps,a}(x) = eps^(-(N-2s)/2) U((x-a)/eps).
    static BubbleProfile rescaled(const Exponents& e, double eps,
                                  std::span<const double> a) {
        if (!(eps > 0.0)) throw std::domain_error("BubbleProfile: scale must be positive");
        BubbleProfile b = standard(e);
        b.scale = eps;
        b.amplitude *= std::pow(eps, -0.5 * (e.n - 2.0 * e.s));
        for (std::size_t i = 0; i < a.size() && i < 3; ++i) b.center[i] = a[i];
        return b;
    }

    /// Z(x) = (1 + |x|^2 / mu_{N,s})^(-(N-2s)/2), normalized so Z(0) = 1.
    static BubbleProfile limit_profile(const Exponents& e) {
        BubbleProfile b;
        b.e = e;
        b.scale = std::sqrt(paper_constants(e).mu_ns);
        b.amplitude = 1.0;
        return b;
    }
};

inline double eval_bubble(const BubbleProfile& b, std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - b.center[i];
        r2 += d * d;
    }
    const double base = 1.0 + r2 / (b.scale * b.scale);
    return b.amplitude * std::pow(base, -0.5 * (b.e.n - 2.0 * b.e.s));
}

/// One of the N+1 spanning functions of the linearized kernel at the bubble:
/// modes 1..N are the odd translations (proportional to the partial
/// derivatives of Z), mode N+1 is the radial dilation generator
/// x . grad Z + ((N-2s)/2) Z:
///   psi_i(x)     = 2 x_i (1 + |x|^2/mu)^(-(N-2s+2)/2),  i <= N
///   psi_{N+1}(x) = (1 - |x|^2/mu) (1 + |x|^2/mu)^(-(N-2s+2)/2).
/// The dilation mode changes sign on the sphere |x| = sqrt(mu) (the unit
/// sphere only in the width-one normalization).
struct KernelMode {
    int index = 1;
    Exponents e;

    static KernelMode make(const Exponents& e, int index) {
        if (index < 1 || index > e.n + 1)
            throw std::domain_error("KernelMode: index must lie in 1..N+1");
        return KernelMode{index, e};
    }
};

inline double eval_kernel_mode(const KernelMode& m, std::span<const double> x) {
    const double mu = paper_constants(m.e).mu_ns;
    const double r2 = sq_norm(x);
    const double envelope =
        std::pow(1.0 + r2 / mu, -0.5 * (m.e.n - 2.0 * m.e.s + 2.0));
    if (m.index <= m.e.n) return 2.0 * x[static_cast<std::size_t>(m.index - 1)] * envelope;
    return (1.0 - r2 / mu) * envelope;
}

/// Kelvin transform: (K f)(x) = |x|^(-(N-2s)) f(x / |x|^2). The returned
/// evaluator rejects x = 0.
template <class F>
inline auto kelvin_transform(F f, const Exponents& e) {
    const double power = e.n - 2.0 * e.s;
    return [f = std::move(f), power](std::span<const double> x) -> double {
        const double r2 = sq_norm(x);
        if (r2 == 0.0) throw std::domain_error("kelvin_transform: undefined at the origin");
        std::array<double, 3> inv{0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < x.size(); ++i) inv[i] = x[i] / r2;
        return std::pow(r2, -0.5 * power) *
               f(std::span<const double>(inv.data(), x.size()));
    };
}

/// Both sides of the radial reduction of int (1-|x|^2)(1+|x|^2)^(-(N+2s+2)/2):
/// lhs integrates over all of R^N (split radial quadrature), rhs folds the
/// tail onto (0,1) where the integrand is signed explicitly,
///   rhs = -omega_N int_0^1 r^(2s-1)(1-r^2)(1-r^(N-2s))(1+r^2)^(-(N+2s+2)/2).
/// The rhs is strictly negative for every admissible (N, s).
struct RadialIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
};

inline RadialIdentity identity_nov39(const Exponents& e) {
    const double omega = sphere_measure(e.n);
    const double expo = 0.5 * (e.n + 2.0 * e.s + 2.0);
    RadialIdentity out;
    out.lhs = omega * integrate_radial([&](double r) {
        return std::pow(r, e.n - 1.0) * (1.0 - r * r) *
               std::pow(1.0 + r * r, -expo);
    }, 1e-12, 2.0 * e.s);
    out.rhs = -omega * integrate_power_endpoint(2.0 * e.s, [&](double r) {
        return (1.0 - r * r) * (1.0 - std::pow(r, e.n - 2.0 * e.s)) *
               std::pow(1.0 + r * r, -expo);
    }, 1.0);
    return out;
}

} // namespace fraclab
