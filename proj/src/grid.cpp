#include "paneitz/grid.hpp"

#include <algorithm>
#include <cmath>

namespace paneitz {

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

namespace {

Stencil make_stencil(int i, int n, int m, double h, bool periodic) {
    const int p = m <= 2 ? 3 : 4;
    int first, taps;
    if (periodic || (i - p >= 0 && i + p <= n - 1)) {
        first = i - p;
        taps = 2 * p + 1;
    } else {
        taps = std::max(2 * p + 1, m + 6);
        first = (i - p < 0) ? 0 : n - taps;
    }
    std::vector<double> x(taps);
    for (int k = 0; k < taps; ++k) x[k] = first + k;
    Stencil s;
    s.start = first - i;
    s.w = fd_weights(static_cast<double>(i), x, m);
    const double scale = std::pow(h, -m);
    for (double& v : s.w) v *= scale;
    return s;
}

}  // namespace

ChartGrid::ChartGrid(std::vector<int> nodes, std::vector<double> lo, std::vector<double> hi,
                     std::vector<bool> periodic)
    : declared_(std::move(nodes)), lo_(std::move(lo)), hi_(std::move(hi)),
      periodic_(std::move(periodic)) {
    const int d = static_cast<int>(declared_.size());
    if (d < 1 || static_cast<int>(lo_.size()) != d || static_cast<int>(hi_.size()) != d ||
        static_cast<int>(periodic_.size()) != d)
        throw GridError("chart: inconsistent axis descriptions");
    n_.resize(d);
    h_.resize(d);
    for (int a = 0; a < d; ++a) {
        if (declared_[a] < 10)
            throw GridError("chart: axis " + std::to_string(a) + " needs at least 10 nodes");
        if (!(hi_[a] > lo_[a])) throw GridError("chart: empty axis");
        h_[a] = (hi_[a] - lo_[a]) / (declared_[a] - 1);
        n_[a] = periodic_[a] ? declared_[a] - 1 : declared_[a];
    }
    stride_.assign(d, 1);
    for (int a = d - 2; a >= 0; --a) stride_[a] = stride_[a + 1] * n_[a + 1];
    count_ = stride_[0] * n_[0];
    stencils_.resize(d);
    for (int a = 0; a < d; ++a)
        for (int m = 1; m <= 4; ++m) {
            auto& v = stencils_[a][m - 1];
            if (periodic_[a]) {
                v.push_back(make_stencil(0, n_[a], m, h_[a], true));
            } else {
                for (int i = 0; i < n_[a]; ++i) v.push_back(make_stencil(i, n_[a], m, h_[a], false));
            }
        }
}

ChartGrid ChartGrid::slab(int dim, int nodes) {
    return ChartGrid(std::vector<int>(dim, nodes), std::vector<double>(dim, 0.0),
                     std::vector<double>(dim, 1.0), [&] {
                         std::vector<bool> p(dim, true);
                         p[0] = false;
                         return p;
                     }());
}

void ChartGrid::point(std::size_t node, double* x) const {
    for (int a = 0; a < dim(); ++a) x[a] = coord(a, index(node, a));
}

const Stencil& ChartGrid::stencil(int a, int m, int i) const {
    if (a < 0 || a >= dim()) throw GridError("derivative: axis out of range");
    if (m < 1 || m > 4) throw GridError("derivative: order must be 1..4");
    const auto& v = stencils_[a][m - 1];
    return periodic_[a] ? v[0] : v[i];
}

ChartGrid ChartGrid::face_grid() const {
    if (dim() < 2) throw GridError("face of a one-dimensional chart");
    return ChartGrid(std::vector<int>(declared_.begin() + 1, declared_.end()),
                     std::vector<double>(lo_.begin() + 1, lo_.end()),
                     std::vector<double>(hi_.begin() + 1, hi_.end()),
                     std::vector<bool>(periodic_.begin() + 1, periodic_.end()));
}

bool ChartGrid::same_shape(const ChartGrid& o) const {
    return declared_ == o.declared_ && lo_ == o.lo_ && hi_ == o.hi_ && periodic_ == o.periodic_;
}

Field partial(const ChartGrid& grid, const Field& u, int axis, int order) {
    if (u.size() != grid.count()) throw GridError("derivative: field/grid mismatch");
    if (axis < 0 || axis >= grid.dim()) throw GridError("derivative: axis out of range");
    if (order < 1 || order > 4) throw GridError("derivative: order must be 1..4");
    const int n = grid.size(axis);
    const std::size_t s = grid.stride(axis);
    const std::size_t outer = grid.count() / (s * n);
    const bool per = grid.periodic(axis);
    Field out(u.size(), 0.0);
    if (s == 1) {
        // periodic lines are padded by the stencil half-width on both sides
        const int pad = per ? -grid.stencil(axis, order, 0).start : 0;
        std::vector<double> line(n + 2 * pad);
        for (std::size_t o = 0; o < outer; ++o) {
            const double* src = u.data() + o * n;
            std::copy(src, src + n, line.begin() + pad);
            for (int i = 0; i < pad; ++i) {
                line[i] = line[n + i];
                line[pad + n + i] = line[pad + i];
            }
            for (int i = 0; i < n; ++i) {
                const Stencil& st = grid.stencil(axis, order, i);
                const double* q = line.data() + pad + i + st.start;
                double acc = 0.0;
                for (std::size_t k = 0; k < st.w.size(); ++k) acc += st.w[k] * q[k];
                out[o * n + i] = acc;
            }
        }
        return out;
    }
    // strided axis: accumulate whole contiguous rows
    for (std::size_t o = 0; o < outer; ++o)
        for (int i = 0; i < n; ++i) {
            const Stencil& st = grid.stencil(axis, order, i);
            double* dst = out.data() + (o * n + i) * s;
            for (std::size_t k = 0; k < st.w.size(); ++k) {
                int j = i + st.start + static_cast<int>(k);
                if (per) j = (j % n + n) % n;
                const double* src = u.data() + (o * n + j) * s;
                const double w = st.w[k];
                for (std::size_t in = 0; in < s; ++in) dst[in] += w * src[in];
            }
        }
    return out;
}

namespace {

double partial_rec(const ChartGrid& grid, const Field& u, std::size_t node, const int* alpha,
                   int a) {
    const int d = grid.dim();
    while (a < d && alpha[a] == 0) ++a;
    if (a == d) return u[node];
    const int n = grid.size(a);
    const int i = grid.index(node, a);
    const Stencil& st = grid.stencil(a, alpha[a], i);
    const std::size_t s = grid.stride(a);
    double acc = 0.0;
    for (std::size_t k = 0; k < st.w.size(); ++k) {
        int j = i + st.start + static_cast<int>(k);
        if (grid.periodic(a)) {
            j %= n;
            if (j < 0) j += n;
        }
        const std::size_t nb = node + (static_cast<long long>(j) - i) * static_cast<long long>(s);
        acc += st.w[k] * partial_rec(grid, u, nb, alpha, a + 1);
    }
    return acc;
}

}  // namespace

double partial_at(const ChartGrid& grid, const Field& u, std::size_t node,
                  const std::vector<int>& alpha) {
    if (static_cast<int>(alpha.size()) != grid.dim()) throw GridError("derivative: bad multi-index");
    return partial_rec(grid, u, node, alpha.data(), 0);
}

double partial_at(const ChartGrid& grid, const Field& u, std::size_t node, int axis, int order) {
    std::vector<int> alpha(grid.dim(), 0);
    if (axis < 0 || axis >= grid.dim()) throw GridError("derivative: axis out of range");
    alpha[axis] = order;
    return partial_rec(grid, u, node, alpha.data(), 0);
}

Field quadrature_weights(const ChartGrid& grid) {
    const int d = grid.dim();
    std::vector<std::vector<double>> w1(d);
    for (int a = 0; a < d; ++a) {
        const int n = grid.size(a);
        const double h = grid.h(a);
        w1[a].assign(n, h);
        if (!grid.periodic(a)) {
            if (n % 2 == 0) throw GridError("quadrature: non-periodic axis needs an odd node count");
            for (int i = 0; i < n; ++i)
                w1[a][i] = h / 3.0 * ((i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0));
        }
    }
    Field w(grid.count());
    for (std::size_t k = 0; k < w.size(); ++k) {
        double v = 1.0;
        for (int a = 0; a < d; ++a) v *= w1[a][grid.index(k, a)];
        w[k] = v;
    }
    return w;
}

double integrate(const ChartGrid& grid, const Field& u, const Field* density) {
    if (u.size() != grid.count() || (density && density->size() != grid.count()))
        throw GridError("integrate: region/grid mismatch");
    const Field w = quadrature_weights(grid);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += w[k] * u[k] * (density ? (*density)[k] : 1.0);
    return s;
}

Field restrict_face(const ChartGrid& grid, const Field& u, int face) {
    if (u.size() != grid.count()) throw GridError("restrict: field/grid mismatch");
    const std::size_t off = grid.face_offset(face);
    return Field(u.begin() + off, u.begin() + off + grid.face_count());
}

double max_abs(const Field& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace paneitz
