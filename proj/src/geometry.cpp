#include "paneitz/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace paneitz {

namespace {

constexpr int kMaxDim = 6;
constexpr std::size_t kBlock = 1024;

// Cholesky-based inverse of a packed SPD matrix; false if not positive definite.
bool invert_spd(const double* gp, int d, double* inv, double& det) {
    double a[kMaxDim][kMaxDim], L[kMaxDim][kMaxDim] = {};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = gp[sym(i, j, d)];
    det = 1.0;
    for (int j = 0; j < d; ++j) {
        double s = a[j][j];
        for (int k = 0; k < j; ++k) s -= L[j][k] * L[j][k];
        if (!(s > 0.0) || !std::isfinite(s)) return false;
        L[j][j] = std::sqrt(s);
        det *= s;
        for (int i = j + 1; i < d; ++i) {
            double t = a[i][j];
            for (int k = 0; k < j; ++k) t -= L[i][k] * L[j][k];
            L[i][j] = t / L[j][j];
        }
    }
    // inverse of L, then L^{-T} L^{-1}
    double Li[kMaxDim][kMaxDim] = {};
    for (int i = 0; i < d; ++i) {
        Li[i][i] = 1.0 / L[i][i];
        for (int j = 0; j < i; ++j) {
            double s = 0.0;
            for (int k = j; k < i; ++k) s -= L[i][k] * Li[k][j];
            Li[i][j] = s / L[i][i];
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            double s = 0.0;
            for (int k = j; k < d; ++k) s += Li[k][i] * Li[k][j];
            inv[sym(i, j, d)] = s;
        }
    return true;
}

Field constant(std::size_t n, double v) { return Field(n, v); }

}  // namespace

MetricField flat_metric(const ChartGrid& grid) {
    const int d = grid.dim();
    MetricField g;
    g.c.resize(sym_count(d));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) g.c[sym(i, j, d)] = constant(grid.count(), i == j ? 1.0 : 0.0);
    return g;
}

MetricField conformal_metric(const ChartGrid& grid, const Field& phi) {
    return rescale(flat_metric(grid), phi);
}

MetricField rescale(const MetricField& g, const Field& sigma) {
    MetricField out = g;
    for (auto& comp : out.c) {
        if (comp.size() != sigma.size()) throw GeometryError("rescale: factor/metric mismatch");
        for (std::size_t k = 0; k < comp.size(); ++k) comp[k] *= std::exp(2.0 * sigma[k]);
    }
    return out;
}

void check_spd(const ChartGrid& grid, const MetricField& g) {
    const int d = grid.dim();
    if (static_cast<int>(g.c.size()) != sym_count(d)) throw GeometryError("metric: wrong component count");
    std::vector<double> gp(sym_count(d)), inv(sym_count(d));
    for (std::size_t k = 0; k < grid.count(); ++k) {
        for (int s = 0; s < sym_count(d); ++s) gp[s] = g.c[s][k];
        double det;
        if (!invert_spd(gp.data(), d, inv.data(), det))
            throw GeometryError("metric: not positive definite at node " + std::to_string(k));
    }
}

Geometry::Geometry(const ChartGrid& grid, MetricField g) : grid_(grid), g_(std::move(g)) {
    const int d = grid.dim();
    if (d > kMaxDim) throw GeometryError("geometry: dimension too large");
    S_ = sym_count(d);
    const std::size_t N = grid.count();
    if (static_cast<int>(g_.c.size()) != S_) throw GeometryError("metric: wrong component count");
    for (const auto& c : g_.c)
        if (c.size() != N) throw GeometryError("metric: field/grid mismatch");

    ginv_.assign(S_, Field(N));
    sqrtg_.assign(N, 0.0);
    {
        std::vector<double> gp(S_), inv(S_);
        for (std::size_t k = 0; k < N; ++k) {
            for (int s = 0; s < S_; ++s) gp[s] = g_.c[s][k];
            double det;
            if (!invert_spd(gp.data(), d, inv.data(), det))
                throw GeometryError("metric: not positive definite at node " + std::to_string(k));
            for (int s = 0; s < S_; ++s) ginv_[s][k] = inv[s];
            sqrtg_[k] = std::sqrt(det);
        }
    }

    // Christoffel symbols of the second kind.
    gam_.assign(d * S_, Field(N, 0.0));
    {
        std::vector<Field> dg(d * S_);
        for (int c = 0; c < d; ++c)
            for (int s = 0; s < S_; ++s) dg[c * S_ + s] = partial(grid, g_.c[s], c);
        // tensor contractions run over cache-sized blocks of nodes
        std::vector<double> first(kBlock);
        for (std::size_t k0 = 0; k0 < N; k0 += kBlock) {
            const std::size_t k1 = std::min(N, k0 + kBlock);
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j)
                    for (int l = 0; l < d; ++l) {
                        const double *a = dg[i * S_ + sym(j, l, d)].data(), *b = dg[j * S_ + sym(i, l, d)].data(),
                                     *c = dg[l * S_ + sym(i, j, d)].data();
                        for (std::size_t k = k0; k < k1; ++k) first[k - k0] = 0.5 * (a[k] + b[k] - c[k]);
                        for (int m = 0; m < d; ++m) {
                            double* G = gam_[m * S_ + sym(i, j, d)].data();
                            const double* gi = ginv_[sym(m, l, d)].data();
                            for (std::size_t k = k0; k < k1; ++k) G[k] += gi[k] * first[k - k0];
                        }
                    }
        }
    }
    C_.assign(d, Field(N, 0.0));
    Gc_.assign(d, Field(N, 0.0));
    for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) {
            const Field& G = gamma(a, a, b);
            for (std::size_t k = 0; k < N; ++k) C_[b][k] += G[k];
        }
    for (int m = 0; m < d; ++m)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Field& G = gamma(m, i, j);
                const Field& gi = ginv_[sym(i, j, d)];
                for (std::size_t k = 0; k < N; ++k) Gc_[m][k] += gi[k] * G[k];
            }

    // Ric_{bd} = d_a Gamma^a_{bd} - d_b d_d log sqrt(g) + Gamma^a_{ae} Gamma^e_{bd} - Gamma^a_{de} Gamma^e_{ab}
    ric_.assign(S_, Field(N, 0.0));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int e = b; e < d; ++e) {
                const Field t = partial(grid, gamma(a, b, e), a);
                Field& r = ric_[sym(b, e, d)];
                for (std::size_t k = 0; k < N; ++k) r[k] += t[k];
            }
    for (int b = 0; b < d; ++b)
        for (int e = b; e < d; ++e) {
            const Field t1 = partial(grid, C_[b], e);
            const Field t2 = partial(grid, C_[e], b);
            double* r = ric_[sym(b, e, d)].data();
            for (std::size_t k0 = 0; k0 < N; k0 += kBlock) {
                const std::size_t k1 = std::min(N, k0 + kBlock);
                for (std::size_t k = k0; k < k1; ++k) r[k] -= 0.5 * (t1[k] + t2[k]);
                for (int f = 0; f < d; ++f) {
                    const double *c = C_[f].data(), *G = gam_[f * S_ + sym(b, e, d)].data();
                    for (std::size_t k = k0; k < k1; ++k) r[k] += c[k] * G[k];
                }
                for (int a = 0; a < d; ++a)
                    for (int f = 0; f < d; ++f) {
                        const double *G1 = gam_[a * S_ + sym(e, f, d)].data(), *G2 = gam_[f * S_ + sym(a, b, d)].data();
                        for (std::size_t k = k0; k < k1; ++k) r[k] -= G1[k] * G2[k];
                    }
            }
        }

    R_.assign(N, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Field& r = ric_[sym(i, j, d)];
            const Field& gi = ginv_[sym(i, j, d)];
            for (std::size_t k = 0; k < N; ++k) R_[k] += gi[k] * r[k];
        }
    J_.assign(N, 0.0);
    if (d >= 2)
        for (std::size_t k = 0; k < N; ++k) J_[k] = R_[k] / (2.0 * (d - 1));
    P_.assign(S_, Field(N, 0.0));
    for (int s = 0; s < S_; ++s)
        for (std::size_t k = 0; k < N; ++k) {
            if (d >= 3)
                P_[s][k] = (ric_[s][k] - J_[k] * g_.c[s][k]) / (d - 2);
            else if (d == 2)
                P_[s][k] = 0.5 * J_[k] * g_.c[s][k];
        }
}

std::vector<Field> Geometry::gradient(const Field& u) const {
    std::vector<Field> du(dim());
    for (int i = 0; i < dim(); ++i) du[i] = partial(grid_, u, i);
    return du;
}

std::vector<Field> Geometry::second_partials(const Field& u) const {
    const int d = dim();
    std::vector<Field> out(S_);
    std::vector<Field> du;
    for (int i = 0; i < d; ++i) {
        out[sym(i, i, d)] = partial(grid_, u, i, 2);
        if (i + 1 < d) {
            const Field di = partial(grid_, u, i);
            for (int j = i + 1; j < d; ++j) out[sym(i, j, d)] = partial(grid_, di, j);
        }
    }
    return out;
}

std::vector<Field> Geometry::hessian(const Field& u) const {
    const int d = dim();
    std::vector<Field> H = second_partials(u);
    const auto du = gradient(u);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Field& h = H[sym(i, j, d)];
            for (int m = 0; m < d; ++m) {
                const Field& G = gamma(m, i, j);
                for (std::size_t k = 0; k < h.size(); ++k) h[k] -= G[k] * du[m][k];
            }
        }
    return H;
}

Field Geometry::laplacian(const Field& u) const {
    const int d = dim();
    const auto dd = second_partials(u);
    const auto du = gradient(u);
    Field out(u.size(), 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Field& gi = ginv_[sym(i, j, d)];
            const Field& h = dd[sym(i, j, d)];
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += gi[k] * h[k];
        }
    for (int m = 0; m < d; ++m)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] -= Gc_[m][k] * du[m][k];
    return out;
}

Field Geometry::divergence(const std::vector<Field>& V) const {
    const int d = dim();
    if (static_cast<int>(V.size()) != d) throw GeometryError("divergence: wrong component count");
    Field out(grid_.count(), 0.0);
    for (int i = 0; i < d; ++i) {
        const Field t = partial(grid_, V[i], i);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += t[k] + C_[i][k] * V[i][k];
    }
    return out;
}

Field Geometry::inner(const std::vector<Field>& du, const std::vector<Field>& dv) const {
    const int d = dim();
    Field out(grid_.count(), 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Field& gi = ginv_[sym(i, j, d)];
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += gi[k] * du[i][k] * dv[j][k];
        }
    return out;
}

Field Geometry::norm2_sym(const std::vector<Field>& T) const {
    const int d = dim();
    Field out(grid_.count(), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double M[kMaxDim][kMaxDim];  // T^i_j
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int a = 0; a < d; ++a) s += ginv_[sym(i, a, d)][k] * T[sym(a, j, d)][k];
                M[i][j] = s;
            }
        double s = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) s += M[i][j] * M[j][i];
        out[k] = s;
    }
    return out;
}

std::vector<Field> Geometry::paneitz_flux(const Field& u) const {
    const int d = dim();
    const double nm1 = d - 2;  // n - 1 with n = d - 1
    const auto du = gradient(u);
    std::vector<Field> V(d, Field(grid_.count(), 0.0));
    for (std::size_t k = 0; k < grid_.count(); ++k) {
        double w[kMaxDim];  // P^i_j du^j lowered: w_a = P_a^b du_b ... build raised vector
        double grad_up[kMaxDim];
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += ginv_[sym(i, j, d)][k] * du[j][k];
            grad_up[i] = s;
        }
        for (int a = 0; a < d; ++a) {
            double s = 0.0;
            for (int b = 0; b < d; ++b) s += P_[sym(a, b, d)][k] * grad_up[b];
            w[a] = s;
        }
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int a = 0; a < d; ++a) s += ginv_[sym(i, a, d)][k] * w[a];
            V[i][k] = 4.0 * s - nm1 * J_[k] * grad_up[i];
        }
    }
    return V;
}

const Field& Geometry::q4() const {
    if (!q4_) {
        const double d = dim();
        Field q = laplacian(J_);
        const Field p2 = norm2_sym(P_);
        for (std::size_t k = 0; k < q.size(); ++k) q[k] = -q[k] - 2.0 * p2[k] + 0.5 * d * J_[k] * J_[k];
        q4_ = std::move(q);
    }
    return *q4_;
}

double Geometry::volume() const { return integrate(Field(grid_.count(), 1.0)); }

std::vector<double> Geometry::riemann_up_at(std::size_t node) const {
    const int d = dim();
    // dG[(c*d + a)*S + sym(e,b)] = d_c Gamma^a_{eb}
    std::vector<double> dG(d * d * S_);
    for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a)
            for (int s = 0; s < S_; ++s) dG[(c * d + a) * S_ + s] = partial_at(grid_, gam_[a * S_ + s], node, c, 1);
    auto G = [&](int a, int b, int c) { return gam_[a * S_ + sym(b, c, d)][node]; };
    std::vector<double> R(d * d * d * d, 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    double s = dG[(c * d + a) * S_ + sym(e, b, d)] - dG[(e * d + a) * S_ + sym(c, b, d)];
                    for (int f = 0; f < d; ++f) s += G(a, c, f) * G(f, e, b) - G(a, e, f) * G(f, c, b);
                    R[((a * d + b) * d + c) * d + e] = s;
                }
    return R;
}

std::vector<double> Geometry::riemann_at(std::size_t node) const {
    const int d = dim();
    const auto Ru = riemann_up_at(node);
    std::vector<double> R(Ru.size(), 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    double s = 0.0;
                    for (int m = 0; m < d; ++m) s += g_.c[sym(a, m, d)][node] * Ru[((m * d + b) * d + c) * d + e];
                    R[((a * d + b) * d + c) * d + e] = s;
                }
    return R;
}

// ---------------------------------------------------------------------------

Boundary::Boundary(const Geometry& bulk, int face)
    : bulk_(bulk), face_(face), sign_(ChartGrid::face_sign(face)) {
    const ChartGrid& grid = bulk.grid();
    if (face != 0 && face != 1) throw GeometryError("boundary: face must be 0 or 1");
    if (grid.periodic(0)) throw GeometryError("boundary: the normal axis is periodic");
    if (grid.dim() < 2) throw GeometryError("boundary: chart too small");
    off_ = grid.face_offset(face);
    fgrid_ = grid.face_grid();
    const int d = grid.dim();
    const int n = d - 1;
    const std::size_t M = fgrid_.count();

    MetricField hm;
    hm.c.resize(sym_count(n));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) hm.c[sym(a, b, n)] = restrict(bulk.metric().c[sym(a + 1, b + 1, d)]);
    try {
        intr_ = std::make_unique<Geometry>(fgrid_, std::move(hm));
    } catch (const GeometryError&) {
        throw GeometryError("boundary: degenerate induced metric");
    }

    eta_.assign(d, Field(M));
    eta0_.assign(M, 0.0);
    for (std::size_t p = 0; p < M; ++p) {
        const std::size_t q = node(p);
        const double inv = 1.0 / std::sqrt(bulk.ginv()[sym(0, 0, d)][q]);
        eta0_[p] = sign_ * inv;
        for (int i = 0; i < d; ++i) eta_[i][p] = sign_ * bulk.ginv()[sym(i, 0, d)][q] * inv;
    }

    const int Sn = sym_count(n);
    A_.assign(Sn, Field(M));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (std::size_t p = 0; p < M; ++p) A_[sym(a, b, n)][p] = -eta0_[p] * bulk.gamma(0, a + 1, b + 1)[node(p)];
    H_.assign(M, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (std::size_t p = 0; p < M; ++p) H_[p] += hinv()[sym(a, b, n)][p] * A_[sym(a, b, n)][p];
    A0_ = A_;
    for (int s = 0; s < Sn; ++s)
        for (std::size_t p = 0; p < M; ++p) A0_[s][p] -= H_[p] / n * h()[s][p];
    A0sq_ = pair(A0_, A0_);

    J_ = restrict(bulk.J());
    Pnn_.assign(M, 0.0);
    Peta_.assign(n, Field(M, 0.0));
    Ptan_.assign(Sn, Field(M));
    const auto& P = bulk.schouten();
    for (std::size_t p = 0; p < M; ++p) {
        const std::size_t q = node(p);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) Pnn_[p] += eta_[i][p] * eta_[j][p] * P[sym(i, j, d)][q];
        for (int a = 0; a < n; ++a)
            for (int i = 0; i < d; ++i) Peta_[a][p] += eta_[i][p] * P[sym(i, a + 1, d)][q];
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) Ptan_[sym(a, b, n)][p] = P[sym(a + 1, b + 1, d)][q];
    }
    etaJ_ = normal(bulk.J());

    if (n >= 3) {
        Pbar_ = intr_->schouten();
    } else if (n == 2) {
        // The two-dimensional Schouten tensor is fixed by its trace Jbar/2 h and
        // the tracefree part dictated by the Gauss equation.
        Pbar_.assign(Sn, Field(M));
        std::vector<Field> T(Sn, Field(M));
        for (int s = 0; s < Sn; ++s)
            for (std::size_t p = 0; p < M; ++p) T[s][p] = Ptan_[s][p] + H_[p] / n * A0_[s][p];
        Field trT(M, 0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (std::size_t p = 0; p < M; ++p) trT[p] += hinv()[sym(a, b, n)][p] * T[sym(a, b, n)][p];
        for (int s = 0; s < Sn; ++s)
            for (std::size_t p = 0; p < M; ++p)
                Pbar_[s][p] = T[s][p] - trT[p] / n * h()[s][p] + 0.5 * Jbar()[p] * h()[s][p];
    } else {
        Pbar_.assign(Sn, Field(M, 0.0));
    }
}

Field Boundary::restrict(const Field& u) const {
    if (u.size() != bulk_.grid().count()) throw GeometryError("boundary: field/grid mismatch");
    return Field(u.begin() + off_, u.begin() + off_ + fgrid_.count());
}

Field Boundary::normal(const Field& u) const {
    const int d = bulk_.dim();
    Field out(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p)
        for (int i = 0; i < d; ++i)
            if (eta_[i][p] != 0.0) out[p] += eta_[i][p] * partial_at(bulk_.grid(), u, node(p), i, 1);
    return out;
}

std::vector<Field> Boundary::hess_face(const Field& u) const {
    const int d = bulk_.dim();
    const ChartGrid& g = bulk_.grid();
    std::vector<Field> out(sym_count(d), Field(count()));
    std::vector<int> alpha(d);
    for (std::size_t p = 0; p < count(); ++p) {
        const std::size_t q = node(p);
        double du[kMaxDim];
        for (int m = 0; m < d; ++m) du[m] = partial_at(g, u, q, m, 1);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                std::fill(alpha.begin(), alpha.end(), 0);
                alpha[i] += 1;
                alpha[j] += 1;
                double h = partial_at(g, u, q, alpha);
                for (int m = 0; m < d; ++m) h -= bulk_.gamma(m, i, j)[q] * du[m];
                out[sym(i, j, d)][p] = h;
            }
    }
    return out;
}

Field Boundary::hess_nn(const Field& u) const {
    const int d = bulk_.dim();
    const auto Hf = hess_face(u);
    Field out(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[p] += eta_[i][p] * eta_[j][p] * Hf[sym(i, j, d)][p];
    return out;
}

Field Boundary::third_nnn(const Field& u) const {
    const int d = bulk_.dim();
    const ChartGrid& g = bulk_.grid();
    const auto Hs = bulk_.hessian(u);
    Field out(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p) {
        const std::size_t q = node(p);
        double s = 0.0;
        for (int c = 0; c < d; ++c)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const double w = eta_[c][p] * eta_[i][p] * eta_[j][p];
                    if (w == 0.0) continue;
                    double t = partial_at(g, Hs[sym(i, j, d)], q, c, 1);
                    for (int m = 0; m < d; ++m)
                        t -= bulk_.gamma(m, c, i)[q] * Hs[sym(m, j, d)][q] + bulk_.gamma(m, c, j)[q] * Hs[sym(i, m, d)][q];
                    s += w * t;
                }
        out[p] = s;
    }
    return out;
}

std::vector<Field> Boundary::hess_tangential(const Field& u) const {
    const int d = bulk_.dim();
    const int n = d - 1;
    const auto Hf = hess_face(u);
    std::vector<Field> out(sym_count(n));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) out[sym(a, b, n)] = Hf[sym(a + 1, b + 1, d)];
    return out;
}

Field Boundary::dot(const Field& a, const Field& b) const {
    return intr_->inner(intr_->gradient(a), intr_->gradient(b));
}

Field Boundary::pair(const std::vector<Field>& S, const std::vector<Field>& T) const {
    const int n = this->n();
    const auto& hi = hinv();
    Field out(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int e = 0; e < n; ++e)
                        s += hi[sym(a, c, n)][p] * hi[sym(b, e, n)][p] * S[sym(a, b, n)][p] * T[sym(c, e, n)][p];
        out[p] = s;
    }
    return out;
}

Field Boundary::bilinear(const std::vector<Field>& S, const Field& a, const Field& b) const {
    const int n = this->n();
    const auto da = grad(a), db = grad(b);
    const auto& hi = hinv();
    Field out(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p) {
        double ua[kMaxDim], ub[kMaxDim];
        for (int i = 0; i < n; ++i) {
            ua[i] = ub[i] = 0.0;
            for (int j = 0; j < n; ++j) {
                ua[i] += hi[sym(i, j, n)][p] * da[j][p];
                ub[i] += hi[sym(i, j, n)][p] * db[j][p];
            }
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += S[sym(i, j, n)][p] * ua[i] * ub[j];
        out[p] = s;
    }
    return out;
}

Field Boundary::div(const std::vector<Field>& w) const {
    const int n = this->n();
    const auto& hi = hinv();
    std::vector<Field> V(n, Field(count(), 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (std::size_t p = 0; p < count(); ++p) V[a][p] += hi[sym(a, b, n)][p] * w[b][p];
    return intr_->divergence(V);
}

std::vector<Field> Boundary::div_sym(const std::vector<Field>& T) const {
    const int n = this->n();
    const auto& hi = hinv();
    const Geometry& I = *intr_;
    std::vector<Field> out(n, Field(count(), 0.0));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            for (int b = 0; b < n; ++b) {
                const Field dT = partial(fgrid_, T[sym(c, b, n)], a);
                for (std::size_t p = 0; p < count(); ++p) {
                    double t = dT[p];
                    for (int e = 0; e < n; ++e)
                        t -= I.gamma(e, a, c)[p] * T[sym(e, b, n)][p] + I.gamma(e, a, b)[p] * T[sym(c, e, n)][p];
                    out[b][p] += hi[sym(a, c, n)][p] * t;
                }
            }
        }
    return out;
}

std::vector<Field> Boundary::square(const std::vector<Field>& T) const {
    const int n = this->n();
    const auto& hi = hinv();
    std::vector<Field> out(sym_count(n), Field(count(), 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e)
                    for (std::size_t p = 0; p < count(); ++p)
                        out[sym(a, b, n)][p] += T[sym(a, c, n)][p] * hi[sym(c, e, n)][p] * T[sym(e, b, n)][p];
    return out;
}

Field Boundary::trace_cube(const std::vector<Field>& T) const {
    return pair(square(T), T);
}

std::vector<Field> Boundary::riemann_nn() const {
    const int d = bulk_.dim();
    const int n = d - 1;
    std::vector<Field> out(sym_count(n), Field(count(), 0.0));
    for (std::size_t p = 0; p < count(); ++p) {
        const auto Ru = bulk_.riemann_up_at(node(p));
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                double s = 0.0;
                for (int j = 0; j < d; ++j) s += eta_[j][p] * Ru[((0 * d + (a + 1)) * d + j) * d + (b + 1)];
                out[sym(a, b, n)][p] = eta0_[p] * s;
            }
    }
    return out;
}

std::vector<Field> Boundary::weyl_nn() const {
    auto W = riemann_nn();
    for (std::size_t s = 0; s < W.size(); ++s)
        for (std::size_t p = 0; p < count(); ++p) W[s][p] -= Pnn_[p] * h()[s][p] + Ptan_[s][p];
    return W;
}

Field Boundary::ric_nn() const {
    const int d = bulk_.dim();
    Field out(count(), 0.0);
    const auto& Ric = bulk_.ricci();
    for (std::size_t p = 0; p < count(); ++p)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[p] += eta_[i][p] * eta_[j][p] * Ric[sym(i, j, d)][node(p)];
    return out;
}

}  // namespace paneitz
