#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclab {

namespace detail {

// Lanczos approximation, g = 7 with 9 coefficients (Godfrey's set).
// Relative error is a few 1e-15 over the positive axis once reflection is
// applied for arguments below 1/2.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_series(double x) {
    double a = kLanczosCoef[0];
    for (int k = 1; k < 9; ++k) a += kLanczosCoef[k] / (x - 1.0 + k);
    return a;
}

} // namespace detail

/// Gamma function on the positive half line.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    if (x < 0.5) {
        // Reflection keeps the Lanczos series in its accurate range.
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    const double t = x + detail::kLanczosG - 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) *
           detail::lanczos_series(x);
}

/// log Gamma on the positive half line, stable for large arguments.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    const double t = x + detail::kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t +
           std::log(detail::lanczos_series(x));
}

/// Beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated through
/// log Gamma so that large exponent combinations do not overflow.
inline double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: requires a, b > 0");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

/// Surface measure of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2).
/// (omega_1 = 2, omega_2 = 2 pi, omega_3 = 4 pi.)
inline double sphere_measure(int n) {
    if (n < 1) throw std::domain_error("sphere_measure: requires N >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
}

/// Problem exponents (N, s, p, q) for (-Delta)^s u = u^p - eps u^q.
///
/// Valid instances satisfy N > 2s, 0 < s < 1, p >= (N+2s)/(N-2s) and q > p.
struct Exponents {
    int n = 1;       ///< space dimension
    double s = 0.5;  ///< fractional order in (0,1)
    double p = 3.0;  ///< leading power, >= critical
    double q = 5.0;  ///< competing power, > p

    double two_star() const { return 2.0 * n / (n - 2.0 * s); }
    double critical_p() const { return (n + 2.0 * s) / (n - 2.0 * s); }
    bool is_critical() const { return std::abs(p - critical_p()) <= 1e-12 * critical_p(); }

    /// Homogeneity exponent l = (2s(q+1) - N(p-1)) / (2s(p+1) - N(p-1)) of the
    /// supercritical energy; the denominator vanishes exactly at critical p.
    double l_exponent() const {
        const double den = 2.0 * s * (p + 1.0) - n * (p - 1.0);
        if (std::abs(den) < 1e-14) throw std::domain_error("l_exponent: critical p");
        return (2.0 * s * (q + 1.0) - n * (p - 1.0)) / den;
    }

    void validate() const {
        if (n < 1) throw std::domain_error("Exponents: N >= 1 required");
        if (!(s > 0.0 && s < 1.0)) throw std::domain_error("Exponents: s in (0,1) required");
        if (!(n > 2.0 * s)) throw std::domain_error("Exponents: N > 2s required");
        if (!(p >= critical_p() - 1e-12)) throw std::domain_error("Exponents: p below critical");
        if (!(q > p)) throw std::domain_error("Exponents: q > p required");
    }

    static Exponents critical(int n, double s, double q) {
        Exponents e;
        e.n = n;
        e.s = s;
        e.p = (n + 2.0 * s) / (n - 2.0 * s);
        e.q = q;
        e.validate();
        return e;
    }

    static Exponents make(int n, double s, double p, double q) {
        Exponents e{n, s, p, q};
        e.validate();
        return e;
    }
};

/// Closed-form constants attached to an exponent set.
///
/// blowup_limit_per_r is the limit of eps * ||u_eps||_inf^(q-p+2) divided by
/// the boundary constant R_{N,s,x0}; multiply by R to obtain the limit itself.
struct PaperConstants {
    double omega_n = 0.0;           ///< surface measure of the unit sphere
    double c_ns = 0.0;              ///< bubble amplitude
    double a_ns = 0.0;              ///< fundamental-solution coefficient
    double mu_ns = 0.0;             ///< bubble width c_ns^(4/(N-2s))
    double gamma0 = 0.0;            ///< boundary-profile coefficient
    double blowup_limit_per_r = 0.0;

    double blowup_limit(double r_constant) const { return blowup_limit_per_r * r_constant; }
};

/// Moment integral of the limit profile: int_{R^N} Z^m dx for the normalized
/// bubble Z(x) = (1 + |x|^2 / mu)^(-(N-2s)/2), in closed Beta form. Requires
/// m (N-2s)/2 > N/2 for convergence.
inline double z_moment(const Exponents& e, double m) {
    const double half_n = 0.5 * e.n;
    const double b = 0.5 * m * (e.n - 2.0 * e.s) - half_n;
    if (!(b > 0.0)) throw std::domain_error("z_moment: divergent moment");
    const double c = std::pow(2.0, 0.5 * (e.n - 2.0 * e.s)) *
                     std::pow(gamma_fn(0.5 * (e.n + 2.0 * e.s)) /
                                  gamma_fn(0.5 * (e.n - 2.0 * e.s)),
                              (e.n - 2.0 * e.s) / (4.0 * e.s));
    const double c_two_star = std::pow(c, 2.0 * e.n / (e.n - 2.0 * e.s));
    return 0.5 * sphere_measure(e.n) * c_two_star * beta_fn(half_n, b);
}

namespace detail {

inline void check_blowup_args(int n, double s, double q) {
    if (!(s > 0.0 && s < 1.0) || !(n > 2.0 * s))
        throw std::domain_error("blowup limit: requires 0 < s < 1 and N > 2s");
    if (!(0.5 * q * (n - 2.0 * s) - s > 0.0))
        throw std::domain_error("blowup limit: divergent int Z^(q+1)");
    if (q * (n - 2.0 * s) == n + 2.0 * s)
        throw std::domain_error("blowup limit: vanishing denominator");
}

} // namespace detail

/// Theorem-statement form of the limit of eps ||u||_inf^(q-p+2) per unit of
/// the boundary constant R:
///   (omega_N c^(2*)/2) (q+1) / (q(N-2s)-(N+2s)) s^2 Gamma(s)^2
///   B(N/2,s)^2 / B(N/2, (N-2s)q/2 - s).
inline double blowup_limit_theorem(int n, double s, double q, double r_constant) {
    detail::check_blowup_args(n, s, q);
    const double nm2s = n - 2.0 * s;
    const double c = std::pow(2.0, 0.5 * nm2s) *
                     std::pow(gamma_fn(0.5 * (n + 2.0 * s)) / gamma_fn(0.5 * nm2s),
                              nm2s / (4.0 * s));
    const double c_two_star = std::pow(c, 2.0 * n / nm2s);
    const double gs = gamma_fn(s);
    return 0.5 * sphere_measure(n) * c_two_star * (q + 1.0) /
           (q * nm2s - (n + 2.0 * s)) * s * s * gs * gs *
           std::pow(beta_fn(0.5 * n, s), 2.0) /
           beta_fn(0.5 * n, 0.5 * q * nm2s - s) * r_constant;
}

/// Same limit assembled the long way round:
///   gamma0^2 Gamma(1+s)^2 (q+1) R / ([q(N-2s)-(N+2s)] int Z^(q+1))
/// with int Z^(q+1) = (c^(2*) omega_N / 2) B(N/2, (N-2s)q/2 - s).
inline double blowup_limit_assembled(int n, double s, double q, double r_constant) {
    detail::check_blowup_args(n, s, q);
    const double nm2s = n - 2.0 * s;
    const double c = std::pow(2.0, 0.5 * nm2s) *
                     std::pow(gamma_fn(0.5 * (n + 2.0 * s)) / gamma_fn(0.5 * nm2s),
                              nm2s / (4.0 * s));
    const double c_two_star = std::pow(c, 2.0 * n / nm2s);
    const double gamma0 = 0.5 * sphere_measure(n) * c_two_star * beta_fn(0.5 * n, s);
    const double z_q1 = 0.5 * sphere_measure(n) * c_two_star *
                        beta_fn(0.5 * n, 0.5 * q * nm2s - s);
    const double g1s = gamma_fn(1.0 + s);
    return gamma0 * gamma0 * g1s * g1s * (q + 1.0) * r_constant /
           ((q * nm2s - (n + 2.0 * s)) * z_q1);
}

inline double blowup_limit_assembled(const Exponents& e, double r_constant) {
    return blowup_limit_assembled(e.n, e.s, e.q, r_constant);
}

/// All closed-form constants for the exponent set e.
inline PaperConstants paper_constants(const Exponents& e) {
    e.validate();
    PaperConstants k;
    const double nm2s = e.n - 2.0 * e.s;
    k.omega_n = sphere_measure(e.n);
    k.c_ns = std::pow(2.0, 0.5 * nm2s) *
             std::pow(gamma_fn(0.5 * (e.n + 2.0 * e.s)) / gamma_fn(0.5 * nm2s),
                      nm2s / (4.0 * e.s));
    k.a_ns = gamma_fn(0.5 * e.n - e.s) /
             (std::pow(2.0, 2.0 * e.s) * std::pow(M_PI, 0.5 * e.n) * gamma_fn(e.s));
    k.mu_ns = std::pow(k.c_ns, 4.0 / nm2s);
    const double c_two_star = std::pow(k.c_ns, 2.0 * e.n / nm2s);
    k.gamma0 = 0.5 * k.omega_n * c_two_star * beta_fn(0.5 * e.n, e.s);

    if (!(e.q * nm2s - (e.n + 2.0 * e.s) > 0.0))
        throw std::domain_error("paper_constants: q(N-2s) <= N+2s");
    k.blowup_limit_per_r = blowup_limit_theorem(e.n, e.s, e.q, 1.0);
    return k;
}

} // namespace fraclab
