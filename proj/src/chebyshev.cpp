#include "paneitz/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace paneitz {

Cheb::Cheb(int intervals, double length) : N(intervals), L(length) {
    Eigen::VectorXd x(N + 1);
    s.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
        x(j) = std::cos(std::numbers::pi * j / N);
        s(j) = 0.5 * L * (1 - x(j));
    }
    D = Eigen::MatrixXd::Zero(N + 1, N + 1);
    auto c = [&](int j) { return (j == 0 || j == N) ? 2.0 : 1.0; };
    for (int i = 0; i <= N; ++i) {
        double diag = 0;
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = c(i) / c(j) * sign / (x(i) - x(j));
            diag -= D(i, j);
        }
        D(i, i) = diag;
    }
    D *= -2.0 / L;
    D2 = D * D;
    D3 = D2 * D;
    D4 = D3 * D;
}

Eigen::VectorXd Cheb::interp_row(double s0) const {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(N + 1);
    const double x0 = 1 - 2 * s0 / L;
    double denom = 0;
    for (int j = 0; j <= N; ++j) {
        const double diff = x0 - std::cos(std::numbers::pi * j / N);
        if (std::abs(diff) < 1e-15) {
            row.setZero();
            row(j) = 1;
            return row;
        }
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == N) w *= 0.5;
        row(j) = w / diff;
        denom += row(j);
    }
    return row / denom;
}

}  // namespace paneitz
