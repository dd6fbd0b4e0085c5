// Dev-only: corrected dilation mode diagnostics.
#include <cstdio>
#include "fraclab/solver.hpp"

using namespace fraclab;

int main() {
    Exponents e = Exponents::critical(1, 0.25, 5.0);
    const double mu = paper_constants(e).mu_ns;
    const BubbleProfile z = BubbleProfile::limit_profile(e);

    auto corrected = [&](std::span<const double> x) {
        const double r2 = sq_norm(x);
        return (1.0 - r2 / mu) * std::pow(1.0 + r2 / mu, -0.5 * (e.n - 2.0 * e.s + 2.0));
    };
    auto literal = [&](std::span<const double> x) {
        const double r2 = sq_norm(x);
        return (1.0 - r2) * std::pow(1.0 + r2 / mu, -0.5 * (e.n - 2.0 * e.s + 2.0));
    };

    for (auto [halfw, h] : {std::pair{24.0, 1.0 / 32}, {24.0, 1.0 / 64}, {48.0, 1.0 / 32}}) {
        auto dom = DiscreteDomain::make_interval(halfw, h);
        auto op = FracOperator::assemble(dom, 0.25);
        Field psi = Field::sample(dom, corrected);
        Field apsi = op.apply(psi);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < dom->size(); ++i) {
            const double pot = e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);
            num += (apsi.values[i] - pot * psi.values[i]) * psi.values[i];
            den += psi.values[i] * psi.values[i];
        }
        std::printf("box=%g h=1/%g corrected dilation Rayleigh = %.6g\n", halfw, 1 / h, num / den);
    }

    // free-space residual of corrected mode
    auto dom = DiscreteDomain::make_interval(24.0, 1.0 / 32);
    auto op = FracOperator::assemble(dom, 0.25);
    Field psi = Field::sample(dom, corrected);
    Field apsi = op.apply_with_exterior(psi, corrected, 0.5);
    double worst = 0.0;
    for (int i = 0; i < dom->size(); ++i) {
        const double x = dom->node(i)[0];
        if (std::abs(x) > 4.0) continue;
        const double pot = e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);
        worst = std::max(worst, std::abs(apsi.values[i] - pot * psi.values[i]));
    }
    std::printf("free-space residual corrected mode (|x|<=4): %.4g\n", worst);

    // full spectrum with eigen decomposition: cosines of the two near-zero modes
    Eigen::MatrixXd l = op.to_dense();
    for (int i = 0; i < dom->size(); ++i)
        l(i, i) -= e.p * std::pow(eval_bubble(z, dom->node(i)), e.p - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
    const auto& vals = eig.eigenvalues();
    std::vector<int> order(vals.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(vals[a]) < std::abs(vals[b]); });
    std::printf("smallest |eig|:");
    for (int i = 0; i < 6; ++i) std::printf(" %.5g", vals[order[i]]);
    std::printf("\nalgebraic min = %.5g\n", vals.minCoeff());
    Eigen::VectorXd cvec(dom->size()), lvec(dom->size());
    for (int i = 0; i < dom->size(); ++i) {
        cvec[i] = corrected(dom->node(i));
        lvec[i] = literal(dom->node(i));
    }
    cvec.normalize();
    lvec.normalize();
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd v = eig.eigenvectors().col(order[i]);
        std::printf("eig %.5g: |cos corrected|=%.4f |cos literal|=%.4f\n",
                    vals[order[i]], std::abs(cvec.dot(v)), std::abs(lvec.dot(v)));
    }
    return 0;
}
