#include "paneitz/special.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace paneitz {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(double x) { return x <= 0 && x == std::floor(x); }

// log Gamma for x >= 0.5
double lanczos_log(double x) {
    x -= 1;
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x + i);
    const double t = x + kG + 0.5;
    return 0.5 * std::log(2 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace

double gamma_fn(double x) {
    if (is_pole(x)) throw std::domain_error("gamma: pole at non-positive integer");
    if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1 - x));
    if (x < 20) {
        double shift = 1;
        while (x > 2) shift *= --x;
        return shift * std::exp(lanczos_log(x));
    }
    return std::exp(lanczos_log(x));
}

double rgamma(double x) { return is_pole(x) ? 0.0 : 1.0 / gamma_fn(x); }

double lgamma_fn(double x) {
    if (is_pole(x)) throw std::domain_error("lgamma: pole at non-positive integer");
    if (x < 0.5) return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - lgamma_fn(1 - x);
    return lanczos_log(x);
}

double gamma_ratio(double a, double b) {
    if (is_pole(b)) {
        if (is_pole(a)) throw std::domain_error("gamma_ratio: both arguments are poles");
        return 0.0;
    }
    if (is_pole(a)) throw std::domain_error("gamma_ratio: numerator pole");
    if (a > 0.5 && b > 0.5 && std::max(a, b) > 60) return std::exp(lgamma_fn(a) - lgamma_fn(b));
    return gamma_fn(a) * rgamma(b);
}

Quadrature gauss_jacobi(int m, double alpha, double beta) {
    if (m < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (alpha <= -1 || beta <= -1) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    const double ab = alpha + beta;
    for (int k = 0; k < m; ++k) {
        const double s = 2.0 * k + ab;
        J(k, k) = k == 0 ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / (s * (s + 2));
        if (k > 0) {
            const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
            const double off = std::sqrt(num / (s * s * (s + 1) * (s - 1)));
            J(k, k - 1) = J(k - 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((ab + 1) * std::log(2.0) + lgamma_fn(alpha + 1) + lgamma_fn(beta + 1) - lgamma_fn(ab + 2));
    Quadrature q;
    q.nodes.resize(m);
    q.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        q.nodes[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        q.weights[i] = mu0 * v * v;
    }
    return q;
}

}  // namespace paneitz
