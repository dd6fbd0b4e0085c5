#include <cstdio>
#include "fraclab/quadrature.hpp"
#include "fraclab/special.hpp"
using namespace fraclab;
int main() {
    // B(1/2, 1/4) by the symmetric quadrature oracle
    double a = 0.5, b = 0.25;
    auto g1 = [&](double t) { return std::pow(1.0 + t, -a - b); };
    double oracle = integrate_power_endpoint(a, g1, 1.0) +
                    integrate_power_endpoint(b, g1, 1.0);
    std::printf("B(0.5,0.25): oracle=%.17g gamma=%.17g\n", oracle, beta_fn(a, b));
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    std::printf("cNs(1,0.25)=%.17g\n", paper_constants(e).c_ns);
    std::printf("gamma0 quad=%.17g closed=%.17g\n",
                sphere_measure(1) * integrate_radial([&](double r) {
                    double mu = paper_constants(e).mu_ns;
                    return std::pow(1.0 + r * r / mu, -0.5 * (1.0 - 0.5) * 3.0);
                }, 1e-12, 0.5),
                paper_constants(e).gamma0);
    return 0;
}
