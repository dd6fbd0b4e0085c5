// Dev-only: physical-window d^s fits on the torsion solution.
#include <cstdio>
#include "fraclab/asymptotics.hpp"

using namespace fraclab;

int main() {
    const double s = 0.25;
    const double coef = gamma_fn(0.5) /
        (std::pow(2.0, 2.0 * s) * gamma_fn(1.0 + s) * gamma_fn(0.5 + s));
    const double exact_q = coef * std::pow(2.0, s);
    for (double h : {1.0 / 256, 1.0 / 512, 1.0 / 1024}) {
        auto dom = DiscreteDomain::make_interval(1.0, h);
        auto op = FracOperator::assemble(dom, s);
        Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dom->size());
        Field u(dom, Eigen::LDLT<Eigen::MatrixXd>(op.matrix()).solve(rhs));
        auto fit_band = [&](double dlo, double dhi) {
            double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
            for (int i = 0; i < dom->size(); ++i) {
                const double d = 1.0 - std::abs(dom->node(i)[0]);
                if (dom->node(i)[0] < 0.0) continue;  // right side only
                if (d < dlo || d > dhi) continue;
                const double f1 = std::pow(d, s), f2 = std::pow(d, s + 1.0);
                a11 += f1 * f1; a12 += f1 * f2; a22 += f2 * f2;
                b1 += f1 * u.values[i]; b2 += f2 * u.values[i];
            }
            const double det = a11 * a22 - a12 * a12;
            return (b1 * a22 - b2 * a12) / det;
        };
        std::printf("h=1/%-5g band[0,1/16]=%+.3f%%  band[1/64,1/16]=%+.3f%%  band[1/32,1/8]=%+.3f%%  band[1/64,1/8]=%+.3f%%\n",
                    1 / h,
                    100 * (fit_band(0.0, 1.0 / 16) / exact_q - 1),
                    100 * (fit_band(1.0 / 64, 1.0 / 16) / exact_q - 1),
                    100 * (fit_band(1.0 / 32, 1.0 / 8) / exact_q - 1),
                    100 * (fit_band(1.0 / 64, 1.0 / 8) / exact_q - 1));
    }
    return 0;
}
