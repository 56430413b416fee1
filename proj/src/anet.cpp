#include "nlbeam/anet.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "nlbeam/fracops.hpp"
#include "nlbeam/kernels.hpp"
#include "nlbeam/lapack.hpp"

namespace nlbeam {

namespace {

struct Coo {
    std::vector<int> row, col;
    std::vector<double> val;
    void add(int r, int c, double v) {
        if (v == 0.0) return;
        row.push_back(r);
        col.push_back(c);
        val.push_back(v);
    }
};

Csr to_csr(int n, const Coo& coo) {
    Csr csr;
    csr.n = n;
    csr.rowptr.assign(n + 1, 0);
    for (int r : coo.row) ++csr.rowptr[r + 1];
    for (int i = 0; i < n; ++i) csr.rowptr[i + 1] += csr.rowptr[i];
    csr.col.resize(coo.val.size());
    csr.val.resize(coo.val.size());
    std::vector<long long> cursor(csr.rowptr.begin(), csr.rowptr.end() - 1);
    for (size_t k = 0; k < coo.val.size(); ++k) {
        const long long p = cursor[coo.row[k]]++;
        csr.col[p] = coo.col[k];
        csr.val[p] = coo.val[k];
    }
    // sort columns within each row and merge duplicates
    Csr out;
    out.n = n;
    out.rowptr.assign(n + 1, 0);
    std::vector<std::pair<int, double>> rowbuf;
    for (int r = 0; r < n; ++r) {
        rowbuf.clear();
        for (long long p = csr.rowptr[r]; p < csr.rowptr[r + 1]; ++p)
            rowbuf.emplace_back(csr.col[p], csr.val[p]);
        std::sort(rowbuf.begin(), rowbuf.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t k = 0; k < rowbuf.size(); ++k) {
            if (!out.col.empty() && out.rowptr[r] < static_cast<long long>(out.col.size()) &&
                out.col.back() == rowbuf[k].first &&
                static_cast<long long>(out.col.size()) > out.rowptr[r]) {
                out.val.back() += rowbuf[k].second;
            } else {
                out.col.push_back(rowbuf[k].first);
                out.val.push_back(rowbuf[k].second);
            }
        }
        out.rowptr[r + 1] = static_cast<long long>(out.col.size());
    }
    return out;
}

void csr_matvec_add(const Csr& a, const double* x, double* y) {
    for (int r = 0; r < a.n; ++r) {
        double s = 0.0;
        for (long long p = a.rowptr[r]; p < a.rowptr[r + 1]; ++p)
            s += a.val[p] * x[a.col[p]];
        y[r] += s;
    }
}

// Dense part: rows 1..nx-2 of scale * (D1x * R) accumulated into `dst`.
// Central differences only; the two end rows belong to the x-face BCs.
void add_scaled_xderiv_product(DenseMatrix& dst, const DenseMatrix& R, double scale,
                               double inv2dx) {
    const int n = dst.rows;
    for (int i = 1; i < n - 1; ++i) {
        kernels::axpy(-scale * inv2dx, R.row(i - 1), dst.row(i), n);
        kernels::axpy(scale * inv2dx, R.row(i + 1), dst.row(i), n);
    }
}

}  // namespace

void AnetSystem::matvec(const double* x, double* y) const {
    std::fill(y, y + dof(), 0.0);
    for (int j = 0; j < ny; ++j) {
        const int base = j * 2 * nx;
        kernels::matvec_add(xx[j].data.data(), nx, nx, x + base, y + base);
    }
    csr_matvec_add(sparse, x, y);
}

long long AnetSystem::nnz() const {
    long long n = static_cast<long long>(sparse.val.size());
    for (const auto& b : xx)
        for (double v : b.data)
            if (v != 0.0) ++n;
    return n;
}

AnetSystem assemble(const BeamProblem& p) {
    p.validate();
    const Grid1D gx = p.grid_x();
    const int nx = p.nx, ny = p.ny;
    const double dx = gx.dx(), dy = p.dy();
    const double mu = p.mu, la = p.lambda;
    const double c1 = 2.0 * mu + la;
    const double inv2dx = 1.0 / (2.0 * dx);
    const double invdx2 = 1.0 / (dx * dx);
    const double invdy2 = 1.0 / (dy * dy);
    const double cross = (mu + la) / (4.0 * dx * dy);

    AnetSystem sys;
    sys.nx = nx;
    sys.ny = ny;
    sys.rhs.assign(sys.dof(), 0.0);
    sys.xx.assign(ny, DenseMatrix(nx, nx));

    Coo coo;
    for (int j = 1; j < ny - 1; ++j) {
        // u_x equation: c1 [D1x R^a(yj) u_x] + (mu+la) u_y,xy + mu u_x,yy = 0
        const double alpha = p.dist.eval(p.y_node(j), p.h);
        const DenseMatrix R = riesz_caputo_matrix(gx, alpha).m;
        add_scaled_xderiv_product(sys.xx[j], R, c1, inv2dx);
        for (int i = 1; i < nx - 1; ++i) {
            sys.xx[j](i, i) += -2.0 * mu * invdy2;
            const int rx = sys.index(j, 0, i);
            coo.add(rx, sys.index(j - 1, 0, i), mu * invdy2);
            coo.add(rx, sys.index(j + 1, 0, i), mu * invdy2);
            coo.add(rx, sys.index(j + 1, 1, i + 1), cross);
            coo.add(rx, sys.index(j + 1, 1, i - 1), -cross);
            coo.add(rx, sys.index(j - 1, 1, i + 1), -cross);
            coo.add(rx, sys.index(j - 1, 1, i - 1), cross);
        }
        // u_y equation: c1 u_y,yy + (mu+la) u_x,xy + mu u_y,xx = 0
        for (int i = 1; i < nx - 1; ++i) {
            const int ry = sys.index(j, 1, i);
            coo.add(ry, sys.index(j - 1, 1, i), c1 * invdy2);
            coo.add(ry, sys.index(j, 1, i), -2.0 * c1 * invdy2 - 2.0 * mu * invdx2);
            coo.add(ry, sys.index(j + 1, 1, i), c1 * invdy2);
            coo.add(ry, sys.index(j, 1, i + 1), mu * invdx2);
            coo.add(ry, sys.index(j, 1, i - 1), mu * invdx2);
            coo.add(ry, sys.index(j + 1, 0, i + 1), cross);
            coo.add(ry, sys.index(j + 1, 0, i - 1), -cross);
            coo.add(ry, sys.index(j - 1, 0, i + 1), -cross);
            coo.add(ry, sys.index(j - 1, 0, i - 1), cross);
        }
    }
    sys.sparse = to_csr(sys.dof(), coo);
    return sys;
}

void apply_bcs(AnetSystem& sys, const BeamProblem& p) {
    const Grid1D gx = p.grid_x();
    const int nx = p.nx, ny = p.ny, J = ny - 1;
    const double dx = gx.dx(), dy = p.dy();
    const double mu = p.mu, la = p.lambda;
    const double c1 = 2.0 * mu + la;
    const double inv2dx = 1.0 / (2.0 * dx);
    const double invdx2 = 1.0 / (dx * dx);
    const double invdy2 = 1.0 / (dy * dy);
    const double qbar = p.q;  // N/m over unit width -> Pa

    Coo coo;

    // --- surface rows (ghost-point elimination keeps the governing equation,
    //     with the traction conditions substituted into the ghost values) ---
    for (int jj : {0, J}) {
        const bool top = (jj == J);
        const double sgn = top ? -1.0 : 1.0;  // ghost offset direction
        const double alpha = p.dist.eval(p.y_node(jj), p.h);
        const DenseMatrix R = riesz_caputo_matrix(gx, alpha).m;
        add_scaled_xderiv_product(sys.xx[jj], R, c1, inv2dx);
        const int jn = top ? J - 1 : 1;  // the in-beam neighbor layer
        for (int i = 1; i < nx - 1; ++i) {
            // u_x equation with sigma_xy = 0 and sigma_yy = T substituted
            const double k2 = (mu + la) * la / c1;  // -(mu+la) la / c1 * u_x,xx
            sys.xx[jj](i, i) += -2.0 * mu * invdy2 + 2.0 * k2 * invdx2;
            sys.xx[jj](i, i - 1) += -k2 * invdx2;
            sys.xx[jj](i, i + 1) += -k2 * invdx2;
            const int rx = sys.index(jj, 0, i);
            coo.add(rx, sys.index(jn, 0, i), 2.0 * mu * invdy2);
            coo.add(rx, sys.index(jj, 1, i + 1), sgn * 2.0 * mu / dy * inv2dx);
            coo.add(rx, sys.index(jj, 1, i - 1), -sgn * 2.0 * mu / dy * inv2dx);
            // u_y equation
            const int ry = sys.index(jj, 1, i);
            coo.add(ry, sys.index(jn, 1, i), 2.0 * c1 * invdy2);
            coo.add(ry, sys.index(jj, 1, i), -2.0 * c1 * invdy2);
            coo.add(ry, sys.index(jj, 1, i + 1), -la * invdx2);
            coo.add(ry, sys.index(jj, 1, i), 2.0 * la * invdx2);
            coo.add(ry, sys.index(jj, 1, i - 1), -la * invdx2);
            coo.add(ry, sys.index(jj, 0, i + 1), sgn * 2.0 * la / dy * inv2dx);
            coo.add(ry, sys.index(jj, 0, i - 1), -sgn * 2.0 * la / dy * inv2dx);
            if (top) sys.rhs[ry] = 2.0 * qbar / dy;
        }
    }

    // --- x-face rows ---
    auto pin_row_x = [&](int j, int i) {  // u_x = 0
        sys.xx[j](i, i) = 1.0;
        sys.rhs[sys.index(j, 0, i)] = 0.0;
    };
    auto pin_row_y = [&](int j, int i) {  // u_y = 0
        coo.add(sys.index(j, 1, i), sys.index(j, 1, i), 1.0);
        sys.rhs[sys.index(j, 1, i)] = 0.0;
    };
    // sigma_xx = 0 at a face node: c1 [R^a u_x]_i + la u_y,y = 0 (dense row).
    // D1y is central at interior layers, first-order one-sided at corners so
    // the system stays layer-tridiagonal.
    auto traction_xx_row = [&](int j, int i) {
        const double alpha = p.dist.eval(p.y_node(j), p.h);
        const DenseMatrix R = riesz_caputo_matrix(gx, alpha).m;
        kernels::axpy(c1, R.row(i), sys.xx[j].row(i), nx);
        const int rx = sys.index(j, 0, i);
        if (j > 0 && j < J) {
            coo.add(rx, sys.index(j + 1, 1, i), la / (2.0 * dy));
            coo.add(rx, sys.index(j - 1, 1, i), -la / (2.0 * dy));
        } else {
            const int jn = (j == 0) ? 1 : J - 1;
            const double s = (j == 0) ? 1.0 : -1.0;
            coo.add(rx, sys.index(jn, 1, i), s * la / dy);
            coo.add(rx, sys.index(j, 1, i), -s * la / dy);
        }
    };
    // sigma_xy = 0 at a face node: mu (u_x,y + u_y,x) = 0; u_y,x one-sided in x.
    auto traction_xy_row = [&](int j, int i) {
        const int ry = sys.index(j, 1, i);
        const double sx = (i == 0) ? 1.0 : -1.0;  // one-sided direction
        const int i1 = (i == 0) ? 1 : i - 1;
        const int i2 = (i == 0) ? 2 : i - 2;
        coo.add(ry, sys.index(j, 1, i), sx * -3.0 * inv2dx * mu);
        coo.add(ry, sys.index(j, 1, i1), sx * 4.0 * inv2dx * mu);
        coo.add(ry, sys.index(j, 1, i2), sx * -1.0 * inv2dx * mu);
        if (j > 0 && j < J) {
            coo.add(ry, sys.index(j + 1, 0, i), mu / (2.0 * dy));
            coo.add(ry, sys.index(j - 1, 0, i), -mu / (2.0 * dy));
        } else {
            const int jn = (j == 0) ? 1 : J - 1;
            const double s = (j == 0) ? 1.0 : -1.0;
            coo.add(ry, sys.index(jn, 0, i), s * mu / dy);
            coo.add(ry, sys.index(j, 0, i), -s * mu / dy);
        }
        sys.rhs[ry] = 0.0;
    };

    switch (p.bc) {
        case BcFamily::ClampedClamped:
            for (int j = 0; j < ny; ++j)
                for (int i : {0, nx - 1}) {
                    pin_row_x(j, i);
                    pin_row_y(j, i);
                }
            break;
        case BcFamily::ClampedFree:
            for (int j = 0; j < ny; ++j) {
                pin_row_x(j, 0);
                pin_row_y(j, 0);
                traction_xx_row(j, nx - 1);
                traction_xy_row(j, nx - 1);
            }
            break;
        case BcFamily::SimplySupported:
            // the sigma_xx rows annihilate constants, so one u_x node is
            // pinned instead to fix the horizontal rigid mode
            for (int j = 0; j < ny; ++j)
                for (int i : {0, nx - 1}) {
                    if (j == ny / 2 && i == 0)
                        pin_row_x(j, i);
                    else
                        traction_xx_row(j, i);
                    pin_row_y(j, i);
                }
            break;
    }

    // merge the BC entries into the global CSR
    Coo merged;
    for (int r = 0; r < sys.sparse.n; ++r)
        for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k)
            merged.add(r, sys.sparse.col[k], sys.sparse.val[k]);
    merged.row.insert(merged.row.end(), coo.row.begin(), coo.row.end());
    merged.col.insert(merged.col.end(), coo.col.begin(), coo.col.end());
    merged.val.insert(merged.val.end(), coo.val.begin(), coo.val.end());
    sys.sparse = to_csr(sys.dof(), merged);
    sys.bcs_applied = true;
}

// ----------------------------------------------------------------------------
// Block-tridiagonal direct solver over the layers
// ----------------------------------------------------------------------------

namespace {

struct SparseBlock {
    std::vector<int> row, col;
    std::vector<double> val;
    bool empty() const { return val.empty(); }
};

// entries of the CSR with rows in layer jr and cols in layer jc, as local
// block coordinates (block size = 2 nx)
SparseBlock extract_block(const AnetSystem& sys, int jr, int jc) {
    SparseBlock b;
    const int bs = 2 * sys.nx;
    const int r0 = jr * bs, c0 = jc * bs;
    for (int r = r0; r < r0 + bs; ++r)
        for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k) {
            const int c = sys.sparse.col[k];
            if (c >= c0 && c < c0 + bs) {
                b.row.push_back(r - r0);
                b.col.push_back(c - c0);
                b.val.push_back(sys.sparse.val[k]);
            }
        }
    return b;
}

// dense layer-diagonal block: xx[j] in the u_x/u_x corner plus the same-layer
// CSR entries
DenseMatrix dense_diag_block(const AnetSystem& sys, int j) {
    const int nx = sys.nx;
    const int bs = 2 * nx;
    DenseMatrix a(bs, bs);
    for (int i = 0; i < nx; ++i) {
        const double* src = sys.xx[j].row(i);
        double* dst = a.row(i);
        std::copy(src, src + nx, dst);
    }
    SparseBlock diag = extract_block(sys, j, j);
    for (size_t k = 0; k < diag.val.size(); ++k)
        a(diag.row[k], diag.col[k]) += diag.val[k];
    return a;
}

struct BlockTridiagLU {
    int nblocks = 0, bs = 0;
    std::vector<lapack::LuFactor> factors;
    std::vector<SparseBlock> upper;  // B_j: rows j, cols j+1
    std::vector<SparseBlock> lower;  // C_j: rows j+1, cols j

    // diags consumed; Schur recursion S_{j+1} = A_{j+1} - C_j S_j^-1 B_j
    void factor(std::vector<DenseMatrix>&& diags) {
        nblocks = static_cast<int>(diags.size());
        bs = diags[0].rows;
        factors.reserve(nblocks);
        std::vector<double> bcm;  // B materialized column-major as solve RHS
        for (int j = 0; j < nblocks; ++j) {
            if (j > 0) {
                const SparseBlock& B = upper[j - 1];
                const SparseBlock& C = lower[j - 1];
                if (!B.empty() && !C.empty()) {
                    bcm.assign(static_cast<size_t>(bs) * bs, 0.0);
                    for (size_t k = 0; k < B.val.size(); ++k)
                        bcm[static_cast<size_t>(B.col[k]) * bs + B.row[k]] = B.val[k];
                    factors[j - 1].solve(bcm.data(), bs);  // X = S^-1 B, column-major
                    DenseMatrix& A = diags[j];
                    for (size_t k = 0; k < C.val.size(); ++k) {
                        const int r = C.row[k];
                        const double v = C.val[k];
                        const double* xrow = bcm.data() + C.col[k];  // stride bs
                        double* arow = A.row(r);
                        for (int c = 0; c < bs; ++c)
                            arow[c] -= v * xrow[static_cast<size_t>(c) * bs];
                    }
                }
            }
            factors.push_back(lapack::lu_factor(std::move(diags[j])));
        }
    }

    void solve(std::vector<double>& x) const {
        std::vector<double> t(bs);
        // forward sweep on the rhs
        for (int j = 1; j < nblocks; ++j) {
            std::copy(x.begin() + (j - 1) * bs, x.begin() + j * bs, t.begin());
            factors[j - 1].solve(t.data(), 1);
            const SparseBlock& C = lower[j - 1];
            double* rj = x.data() + static_cast<size_t>(j) * bs;
            for (size_t k = 0; k < C.val.size(); ++k)
                rj[C.row[k]] -= C.val[k] * t[C.col[k]];
        }
        // back substitution
        factors[nblocks - 1].solve(x.data() + static_cast<size_t>(nblocks - 1) * bs, 1);
        for (int j = nblocks - 2; j >= 0; --j) {
            double* rj = x.data() + static_cast<size_t>(j) * bs;
            const SparseBlock& B = upper[j];
            const double* vnext = x.data() + static_cast<size_t>(j + 1) * bs;
            for (size_t k = 0; k < B.val.size(); ++k)
                rj[B.row[k]] -= B.val[k] * vnext[B.col[k]];
            factors[j].solve(rj, 1);
        }
    }
};

// ----------------------------------------------------------------------------
// GMRES with field-block preconditioning
// ----------------------------------------------------------------------------

// u_x sub-system as its own layer-tridiagonal problem
struct XFieldPrecond {
    int nx = 0, ny = 0;
    BlockTridiagLU lu;

    void build(const AnetSystem& sys, const std::vector<double>& rs) {
        nx = sys.nx;
        ny = sys.ny;
        std::vector<DenseMatrix> diags;
        diags.reserve(ny);
        for (int j = 0; j < ny; ++j) {
            DenseMatrix d = sys.xx[j];
            for (int i = 0; i < nx; ++i) {
                const double f = rs[sys.index(j, 0, i)];
                for (int c = 0; c < nx; ++c) d(i, c) *= f;
            }
            diags.push_back(std::move(d));
        }
        // cross-layer u_x->u_x entries from the CSR
        lu.upper.resize(ny - 1);
        lu.lower.resize(ny - 1);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const int r = sys.index(j, 0, i);
                for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k) {
                    const int c = sys.sparse.col[k];
                    const int jc = c / (2 * nx);
                    const int f = (c - jc * 2 * nx) / nx;
                    if (f != 0) continue;
                    const int ic = c - jc * 2 * nx;
                    const double v = sys.sparse.val[k] * rs[r];
                    if (jc == j) {
                        diags[j](i, ic) += v;
                    } else if (jc == j + 1) {
                        lu.upper[j].row.push_back(i);
                        lu.upper[j].col.push_back(ic);
                        lu.upper[j].val.push_back(v);
                    } else if (jc == j - 1) {
                        lu.lower[j - 1].row.push_back(i);
                        lu.lower[j - 1].col.push_back(ic);
                        lu.lower[j - 1].val.push_back(v);
                    }
                }
            }
        }
        lu.factor(std::move(diags));
    }

    void apply(const AnetSystem& sys, const double* r, double* z) const {
        std::vector<double> v(static_cast<size_t>(nx) * ny);
        for (int j = 0; j < ny; ++j)
            std::copy(r + sys.index(j, 0, 0), r + sys.index(j, 0, 0) + nx,
                      v.begin() + static_cast<size_t>(j) * nx);
        lu.solve(v);
        for (int j = 0; j < ny; ++j)
            std::copy(v.begin() + static_cast<size_t>(j) * nx,
                      v.begin() + static_cast<size_t>(j + 1) * nx, z + sys.index(j, 0, 0));
    }
};

// u_y sub-system, banded with the y-fastest ordering p = i*ny + j
struct YFieldPrecond {
    int nx = 0, ny = 0, kl = 0, ku = 0;
    lapack::BandFactor band;

    void build(const AnetSystem& sys, const std::vector<double>& rs) {
        nx = sys.nx;
        ny = sys.ny;
        kl = ku = 2 * ny;
        const int n = nx * ny;
        const int ldab = 2 * kl + ku + 1;
        std::vector<double> ab(static_cast<size_t>(ldab) * n, 0.0);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const int r = sys.index(j, 1, i);
                const int pr = i * ny + j;
                bool any = false;
                for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k) {
                    const int c = sys.sparse.col[k];
                    const int jc = c / (2 * nx);
                    const int f = (c - jc * 2 * nx) / nx;
                    if (f != 1) continue;
                    const int ic = c - jc * 2 * nx - nx;
                    const int pc = ic * ny + jc;
                    if (std::abs(pr - pc) > kl) continue;  // off-pattern (should not happen)
                    ab[lapack::band_index(kl, ku, pr, pc)] += sys.sparse.val[k] * rs[r];
                    any = true;
                }
                if (!any) ab[lapack::band_index(kl, ku, pr, pr)] = 1.0;
            }
        band = lapack::band_factor(n, kl, ku, std::move(ab));
    }

    void apply(const AnetSystem& sys, const double* r, double* z) const {
        std::vector<double> v(static_cast<size_t>(nx) * ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) v[static_cast<size_t>(i) * ny + j] = r[sys.index(j, 1, i)];
        band.solve(v.data(), 1);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) z[sys.index(j, 1, i)] = v[static_cast<size_t>(i) * ny + j];
    }
};

struct FieldBlockPrecond {
    XFieldPrecond px;
    YFieldPrecond py;
    void build(const AnetSystem& sys, const std::vector<double>& rs) {
        px.build(sys, rs);
        py.build(sys, rs);
    }
    void apply(const AnetSystem& sys, const double* r, double* z) const {
        px.apply(sys, r, z);
        py.apply(sys, r, z);
    }
};

double norm2(const std::vector<double>& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

// right-preconditioned restarted GMRES on the row-equilibrated system
std::pair<std::vector<double>, int> gmres(const AnetSystem& sys,
                                          const std::vector<double>& rowscale,
                                          const FieldBlockPrecond& M,
                                          const std::vector<double>& b_in, double tol,
                                          int restart, long long max_iter,
                                          std::vector<double>& history) {
    const int n = sys.dof();
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = b_in[i] * rowscale[i];
    const double bnorm = norm2(b);
    std::vector<double> x(n, 0.0);
    if (bnorm == 0.0) return {x, 0};

    std::vector<std::vector<double>> V;
    std::vector<double> w(n), z(n), r(n);
    long long total_it = 0;

    while (true) {
        // r = b - A x
        sys.matvec(x.data(), r.data());
        for (int i = 0; i < n; ++i) r[i] = b[i] - r[i] * rowscale[i];
        double beta = norm2(r);
        history.push_back(beta / bnorm);
        if (beta / bnorm < tol) return {x, static_cast<int>(total_it)};
        if (total_it >= max_iter)
            throw SolverError("anet iterative solver: no convergence within iteration budget",
                              history);

        const int m = restart;
        V.assign(1, r);
        for (double& vv : V[0]) vv /= beta;
        std::vector<double> Hdata(static_cast<size_t>(m + 1) * m, 0.0);
        auto H = [&](int i, int j) -> double& { return Hdata[static_cast<size_t>(i) * m + j]; };
        std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
        g[0] = beta;
        int k = 0;
        for (; k < m && total_it < max_iter; ++k, ++total_it) {
            M.apply(sys, V[k].data(), z.data());
            sys.matvec(z.data(), w.data());
            for (int i = 0; i < n; ++i) w[i] *= rowscale[i];
            if (std::getenv("NLBEAM_DEBUG_GMRES") && k < 4) {
                double zx = 0, zy = 0, wn = 0, vn = 0;
                for (int i = 0; i < n; ++i) { wn += w[i]*w[i]; vn += V[k][i]*V[k][i]; }
                const int nx_ = sys.nx;
                for (int jj = 0; jj < sys.ny; ++jj)
                    for (int ii = 0; ii < nx_; ++ii) {
                        zx += z[sys.index(jj,0,ii)]*z[sys.index(jj,0,ii)];
                        zy += z[sys.index(jj,1,ii)]*z[sys.index(jj,1,ii)];
                    }
                std::fprintf(stderr, "[gmres k=%d] |v|=%.3e |z_x|=%.3e |z_y|=%.3e |Az|=%.3e\n",
                             k, std::sqrt(vn), std::sqrt(zx), std::sqrt(zy), std::sqrt(wn));
            }
            for (int i = 0; i <= k; ++i) {
                const double hik = kernels::dot(w.data(), V[i].data(), n);
                H(i, k) = hik;
                kernels::axpy(-hik, V[i].data(), w.data(), n);
            }
            double hn = std::sqrt(kernels::dot(w.data(), w.data(), n));
            H(k + 1, k) = hn;
            if (hn > 0.0) {
                V.emplace_back(w);
                for (double& vv : V.back()) vv /= hn;
            }
            // apply previous Givens rotations
            for (int i = 0; i < k; ++i) {
                const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
                H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
                H(i, k) = t;
            }
            const double denom = std::hypot(H(k, k), H(k + 1, k));
            cs[k] = H(k, k) / denom;
            sn[k] = H(k + 1, k) / denom;
            H(k, k) = denom;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            history.push_back(std::abs(g[k + 1]) / bnorm);
            if (std::abs(g[k + 1]) / bnorm < tol) {
                ++k;
                ++total_it;
                break;
            }
            if (hn == 0.0) {
                ++k;
                break;
            }
        }
        // y = H^-1 g, x += M^-1 (V y)
        std::vector<double> y(k, 0.0);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int jj = i + 1; jj < k; ++jj) s -= H(i, jj) * y[jj];
            y[i] = s / H(i, i);
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int i = 0; i < k; ++i) kernels::axpy(y[i], V[i].data(), w.data(), n);
        M.apply(sys, w.data(), z.data());
        for (int i = 0; i < n; ++i) x[i] += z[i];
    }
}

}  // namespace

AnetSolution solve(const AnetSystem& sys, const BeamProblem& p, SolveMethod method,
                   const IterativeOptions& opts) {
    if (!sys.bcs_applied) throw DomainError("anet solve: boundary conditions not applied");
    const int nx = sys.nx, ny = sys.ny;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> u = sys.rhs;
    int iterations = 0;

    if (method == SolveMethod::Direct) {
        BlockTridiagLU lu;
        lu.upper.resize(ny - 1);
        lu.lower.resize(ny - 1);
        for (int j = 0; j + 1 < ny; ++j) {
            lu.upper[j] = extract_block(sys, j, j + 1);
            lu.lower[j] = extract_block(sys, j + 1, j);
        }
        std::vector<DenseMatrix> diags;
        diags.reserve(ny);
        for (int j = 0; j < ny; ++j) diags.push_back(dense_diag_block(sys, j));
        lu.factor(std::move(diags));
        lu.solve(u);
    } else {
        // row equilibration: BC rows are O(1) while PDE rows are O(mu/dy^2),
        // which both stalls Krylov progress and puts the target residual
        // below what double precision can attain
        std::vector<double> rowscale(sys.dof(), 1.0);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                double mx = 0.0;
                for (int c = 0; c < nx; ++c)
                    mx = std::max(mx, std::abs(sys.xx[j](i, c)));
                rowscale[sys.index(j, 0, i)] = mx;
            }
        for (int r = 0; r < sys.sparse.n; ++r) {
            double mx = 0.0;
            for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k)
                mx = std::max(mx, std::abs(sys.sparse.val[k]));
            const int jr = r / (2 * nx);
            const int field = (r - jr * 2 * nx) / nx;
            if (field == 0) mx = std::max(mx, rowscale[r]);
            rowscale[r] = mx > 0.0 ? 1.0 / mx : 1.0;
        }
        FieldBlockPrecond M;
        M.build(sys, rowscale);
        std::vector<double> history;
        const long long cap = opts.max_iter > 0 ? opts.max_iter : 10LL * sys.dof();
        auto [x, iters] =
            gmres(sys, rowscale, M, sys.rhs, opts.tol, opts.restart, cap, history);
        u = std::move(x);
        iterations = iters;
    }
    const auto t1 = std::chrono::steady_clock::now();

    AnetSolution sol;
    sol.u_x = DenseMatrix(ny, nx);
    sol.u_y = DenseMatrix(ny, nx);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            sol.u_x(j, i) = u[sys.index(j, 0, i)];
            sol.u_y(j, i) = u[sys.index(j, 1, i)];
        }

    // prescribed displacements hold exactly at constrained nodes
    auto zero_face = [&](int i) {
        for (int j = 0; j < ny; ++j) {
            sol.u_x(j, i) = 0.0;
            sol.u_y(j, i) = 0.0;
        }
    };
    if (p.bc == BcFamily::ClampedClamped) {
        zero_face(0);
        zero_face(nx - 1);
    } else if (p.bc == BcFamily::ClampedFree) {
        zero_face(0);
    } else {
        for (int j = 0; j < ny; ++j) {
            sol.u_y(j, 0) = 0.0;
            sol.u_y(j, nx - 1) = 0.0;
        }
    }

    for (double v : sol.u_y.data) sol.max_uy = std::max(sol.max_uy, std::abs(v));

    sol.stats.dof = sys.dof();
    sol.stats.nnz = sys.nnz();
    sol.stats.iterations = iterations;
    sol.stats.t_solve = std::chrono::duration<double>(t1 - t0).count();
    recover_stress(sol, p);
    return sol;
}

void recover_stress(AnetSolution& sol, const BeamProblem& p) {
    const Grid1D gx = p.grid_x();
    const int nx = p.nx, ny = p.ny;
    const double dy = p.dy();
    const double mu = p.mu, la = p.lambda;
    const double c1 = 2.0 * mu + la;

    DenseMatrix e1(ny, nx), e2(ny, nx), e3x2(ny, nx);  // eps_xx, eps_yy, 2*eps_xy
    std::vector<double> row(nx), drow(nx);

    for (int j = 0; j < ny; ++j) {
        apply_fd_first(gx, sol.u_x.row(j), e1.row(j));  // u_x,x
        apply_fd_first(gx, sol.u_y.row(j), drow.data());  // u_y,x
        for (int i = 0; i < nx; ++i) e3x2(j, i) = drow[i];
    }
    auto dyd = [&](const DenseMatrix& f, int j, int i) {
        if (j == 0) return (-3.0 * f(0, i) + 4.0 * f(1, i) - f(2, i)) / (2.0 * dy);
        if (j == ny - 1)
            return (3.0 * f(ny - 1, i) - 4.0 * f(ny - 2, i) + f(ny - 3, i)) / (2.0 * dy);
        return (f(j + 1, i) - f(j - 1, i)) / (2.0 * dy);
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            e2(j, i) = dyd(sol.u_y, j, i);
            e3x2(j, i) += dyd(sol.u_x, j, i);
        }

    sol.sigma_xx = DenseMatrix(ny, nx);
    sol.sigma_yy = DenseMatrix(ny, nx);
    sol.sigma_xy = DenseMatrix(ny, nx);
    for (int j = 0; j < ny; ++j) {
        const double alpha = p.dist.eval(p.y_node(j), p.h);
        RieszCaputoApplier ap(gx, alpha);
        // sigma_1 = c1 * I^(1-a)(eps_1) + la eps_2; the fractional integral of
        // eps_1 = u_x,x is the Riesz-Caputo derivative of u_x itself
        ap.apply(sol.u_x.row(j), row.data());
        for (int i = 0; i < nx; ++i) {
            sol.sigma_xx(j, i) = c1 * row[i] + la * e2(j, i);
            sol.sigma_yy(j, i) = la * e1(j, i) + c1 * e2(j, i);
            sol.sigma_xy(j, i) = mu * e3x2(j, i);
        }
    }
}

SparsityReport sparsity_report(const AnetSystem& sys) {
    const int nx = sys.nx, ny = sys.ny;
    SparsityReport rep;
    rep.dof = sys.dof();
    rep.nnz = sys.nnz();
    rep.block_grid = 2 * ny;
    const int g = rep.block_grid;
    std::vector<long long> fill(static_cast<size_t>(g) * g, 0);

    // field-major block coordinates (Fig. 6 layout): u_x layers then u_y layers
    auto bindex = [&](int gi) {
        const int j = gi / (2 * nx);
        const int rem = gi - j * 2 * nx;
        const int field = rem / nx;
        return field * ny + j;
    };
    for (int j = 0; j < ny; ++j) {
        long long cnt = 0;
        for (double v : sys.xx[j].data)
            if (v != 0.0) ++cnt;
        fill[static_cast<size_t>(j) * g + j] += cnt;  // u_x block-row, u_x block-col
    }
    for (int r = 0; r < sys.sparse.n; ++r) {
        const int br = bindex(r);
        for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k)
            ++fill[static_cast<size_t>(br) * g + bindex(sys.sparse.col[k])];
    }

    rep.block_fill_bitmap.assign(fill.size(), 0);
    rep.block_fill_fraction.assign(fill.size(), 0.0);
    const double denom = static_cast<double>(nx) * nx;
    for (size_t k = 0; k < fill.size(); ++k) {
        rep.block_fill_fraction[k] = static_cast<double>(fill[k]) / denom;
        if (rep.block_fill_fraction[k] > 0.5) {
            rep.block_fill_bitmap[k] = 1;
            ++rep.dense_blocks;
        }
    }
    return rep;
}

}  // namespace nlbeam
