// Dev-only: d^s boundary-quotient fit bias on the torsion solution.
#include <cstdio>
#include "fraclab/asymptotics.hpp"

using namespace fraclab;

int main() {
    for (double s : {0.25}) {
        const double coef = gamma_fn(0.5) /
            (std::pow(2.0, 2.0 * s) * gamma_fn(1.0 + s) * gamma_fn(0.5 + s));
        const double exact_q = coef * std::pow(2.0, s);  // u/d^s -> coef (1+|x|)^s at |x|=1
        std::printf("s=%g exact torsion quotient at wall = %.8g\n", s, exact_q);
        for (double h : {1.0 / 256, 1.0 / 512, 1.0 / 1024, 1.0 / 2048}) {
            auto dom = DiscreteDomain::make_interval(1.0, h);
            auto op = FracOperator::assemble(dom, s);
            Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dom->size());
            Field u(dom, Eigen::LDLT<Eigen::MatrixXd>(op.matrix()).solve(rhs));
            // literal 6-nearest fit
            const double q6 = fraclab::detail::ds_quotient_fit(u, s, +1);
            // windowed fits for comparison: nodes j0..j0+5
            auto fit_window = [&](int j0) {
                const int m = dom->cells_per_halfwidth();
                double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
                for (int j = j0; j < j0 + 6; ++j) {
                    const int idx = dom->lattice_index(m - j);
                    const double d = 1.0 - std::abs(dom->node(idx)[0]);
                    const double f1 = std::pow(d, s), f2 = std::pow(d, s + 1.0);
                    a11 += f1 * f1; a12 += f1 * f2; a22 += f2 * f2;
                    b1 += f1 * u.values[idx]; b2 += f2 * u.values[idx];
                }
                const double det = a11 * a22 - a12 * a12;
                return (b1 * a22 - b2 * a12) / det;
            };
            std::printf("  h=1/%-5g fit(1..6)=%.6g err=%+.3f%%  fit(3..8)=%.6g err=%+.3f%%  fit(6..11)=%.6g err=%+.3f%%\n",
                        1 / h, q6, 100 * (q6 / exact_q - 1),
                        fit_window(3), 100 * (fit_window(3) / exact_q - 1),
                        fit_window(6), 100 * (fit_window(6) / exact_q - 1));
        }
    }
    return 0;
}
