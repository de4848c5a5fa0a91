#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace paneitz {

using Field = std::vector<double>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Index of the symmetric pair (i,j) in packed upper-triangular storage.
inline int sym(int i, int j, int d) {
    if (i > j) std::swap(i, j);
    return i * d - i * (i - 1) / 2 + (j - i);
}
inline int sym_count(int d) { return d * (d + 1) / 2; }

// Finite difference weights (Fornberg) for the m-th derivative at x0.
std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m);

struct Stencil {
    int start = 0;  // offset of the first tap relative to the node
    std::vector<double> w;
};

// Tensor-product chart. Axis 0 is the normal axis [lo0, hi0]; faces and
// boundary data require it to be non-periodic.
// A periodic axis with N declared nodes stores N-1 of them (the seam node is
// implied), so refinement 17 -> 33 halves h on every axis.
class ChartGrid {
public:
    ChartGrid() = default;
    ChartGrid(std::vector<int> nodes, std::vector<double> lo, std::vector<double> hi,
              std::vector<bool> periodic);

    // [0,1] x T^{dim-1} with unit periods.
    static ChartGrid slab(int dim, int nodes);

    int dim() const { return static_cast<int>(n_.size()); }
    int nodes(int a) const { return declared_[a]; }
    int size(int a) const { return n_[a]; }
    double h(int a) const { return h_[a]; }
    double lo(int a) const { return lo_[a]; }
    double hi(int a) const { return hi_[a]; }
    bool periodic(int a) const { return periodic_[a]; }
    std::size_t count() const { return count_; }
    std::size_t stride(int a) const { return stride_[a]; }
    double coord(int a, int i) const { return lo_[a] + i * h_[a]; }
    int index(std::size_t node, int a) const {
        return static_cast<int>((node / stride_[a]) % n_[a]);
    }
    void point(std::size_t node, double* x) const;

    // Stencil for the order-m derivative at index i along axis a.
    const Stencil& stencil(int a, int m, int i) const;

    // The boundary face at x0 = lo (face 0) or x0 = hi (face 1), as a grid of
    // dimension dim-1 built from the tangential axes.
    ChartGrid face_grid() const;
    std::size_t face_offset(int face) const {
        return face == 0 ? 0 : static_cast<std::size_t>(n_[0] - 1) * stride_[0];
    }
    std::size_t face_count() const { return count_ / n_[0]; }

    // Outward normal of a face points along -e0 (face 0) or +e0 (face 1).
    static double face_sign(int face) { return face == 0 ? -1.0 : 1.0; }

    bool same_shape(const ChartGrid& o) const;

private:
    std::vector<int> declared_, n_;
    std::vector<double> lo_, hi_, h_;
    std::vector<bool> periodic_;
    std::vector<std::size_t> stride_;
    std::size_t count_ = 0;
    // stencils_[a][m-1][i]
    std::vector<std::array<std::vector<Stencil>, 4>> stencils_;
};

template <class F>
Field sample(const ChartGrid& grid, F&& f) {
    Field out(grid.count());
    std::vector<double> x(grid.dim());
    for (std::size_t k = 0; k < grid.count(); ++k) {
        grid.point(k, x.data());
        out[k] = f(x.data());
    }
    return out;
}

// partial derivative of order m (1..4) along one axis, whole field.
Field partial(const ChartGrid& grid, const Field& u, int axis, int order = 1);

// Mixed partial derivative at a single node; alpha[a] is the order along axis a.
double partial_at(const ChartGrid& grid, const Field& u, std::size_t node,
                  const std::vector<int>& alpha);
double partial_at(const ChartGrid& grid, const Field& u, std::size_t node, int axis,
                  int order = 1);

// Quadrature weights: Simpson on non-periodic axes, trapezoid on periodic ones.
Field quadrature_weights(const ChartGrid& grid);
double integrate(const ChartGrid& grid, const Field& u, const Field* density = nullptr);

Field restrict_face(const ChartGrid& grid, const Field& u, int face);

double max_abs(const Field& u);

}  // namespace paneitz
