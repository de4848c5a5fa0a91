#pragma once

#include <Eigen/Dense>

namespace paneitz {

// Chebyshev-Lobatto nodes on [0, L] ordered from s = 0, with derivative
// matrices in s.
struct Cheb {
    int N;
    double L;
    Eigen::VectorXd s;
    Eigen::MatrixXd D, D2, D3, D4;

    Cheb(int intervals, double length);
    // barycentric interpolation weights from the nodes to the point s0
    Eigen::VectorXd interp_row(double s0) const;
};

}  // namespace paneitz
