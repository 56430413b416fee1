#include "nlbeam/fracops.hpp"

#include <cmath>
#include <cstdio>

#include "nlbeam/kernels.hpp"
#include "nlbeam/quadrature.hpp"

namespace nlbeam {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("fractional order must lie in (0, 1]");
}

// L1 coefficient table c_m = m^(1-a) - (m-1)^(1-a), m = 0..count-1 (c_0 = 0).
std::vector<double> l1_coefficients(double alpha, int count) {
    std::vector<double> c(count);
    const double e = 1.0 - alpha;
    double prev = 0.0;
    for (int m = 1; m < count; ++m) {
        const double cur = std::pow(static_cast<double>(m), e);
        c[m] = cur - prev;
        prev = cur;
    }
    return c;
}

std::string describe(const char* kind, double alpha, int n) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s alpha=%.12g n=%d (L1 scheme)", kind, alpha, n);
    return buf;
}

// Riesz-type normalization 1/(2 cos((1-a) pi/2)); equals 1/2 at a = 1, so the
// integer-order reduction to f' is exact.
double riesz_norm(double alpha) { return 1.0 / (2.0 * std::sin(0.5 * M_PI * alpha)); }

// Fill a Riesz-Caputo style matrix from combined coefficient tables
//   C_m = sum_g W_g s_g c^g_m,  D_m = C_{m+1} - C_m-style differences,
// where s_g = dx^-a / Gamma(2-a). For a single order this is the plain
// Riesz-Caputo matrix; for a distributed order it assembles the whole
// quadrature in one O(n^2) pass.
void fill_riesz_from_tables(DenseMatrix& out, const std::vector<double>& C,
                            const std::vector<double>& D) {
    const int n = out.rows;
    std::vector<double> Drev(n - 1);
    for (int u = 0; u < n - 1; ++u) Drev[u] = D[n - 2 - u];

    for (int i = 0; i < n; ++i) {
        double* row = out.row(i);
        if (i >= 1) {  // left Caputo part
            row[0] -= 0.5 * C[i];
            kernels::axpy(0.5, Drev.data() + (n - 1 - i), row + 1, i);
        }
        if (i <= n - 2) {  // right Caputo part (subtracted)
            kernels::axpy(-0.5, D.data(), row + i, n - 1 - i);
            row[n - 1] += 0.5 * C[n - 1 - i];
        }
    }
}

}  // namespace

DenseMatrix fd_first_derivative(const Grid1D& grid) {
    const int n = grid.n;
    const double inv2 = 1.0 / (2.0 * grid.dx());
    DenseMatrix m(n, n);
    m(0, 0) = -3.0 * inv2;
    m(0, 1) = 4.0 * inv2;
    m(0, 2) = -1.0 * inv2;
    for (int i = 1; i < n - 1; ++i) {
        m(i, i - 1) = -inv2;
        m(i, i + 1) = inv2;
    }
    m(n - 1, n - 1) = 3.0 * inv2;
    m(n - 1, n - 2) = -4.0 * inv2;
    m(n - 1, n - 3) = 1.0 * inv2;
    return m;
}

void apply_fd_first(const Grid1D& grid, const double* f, double* out) {
    const int n = grid.n;
    const double inv2 = 1.0 / (2.0 * grid.dx());
    out[0] = inv2 * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    for (int i = 1; i < n - 1; ++i) out[i] = inv2 * (f[i + 1] - f[i - 1]);
    out[n - 1] = inv2 * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
}

DenseMatrix fd_second_derivative(const Grid1D& grid) {
    const int n = grid.n;
    const double inv = 1.0 / (grid.dx() * grid.dx());
    DenseMatrix m(n, n);
    if (n < 4) throw DomainError("fd_second_derivative: need n >= 4");
    m(0, 0) = 2.0 * inv;
    m(0, 1) = -5.0 * inv;
    m(0, 2) = 4.0 * inv;
    m(0, 3) = -1.0 * inv;
    for (int i = 1; i < n - 1; ++i) {
        m(i, i - 1) = inv;
        m(i, i) = -2.0 * inv;
        m(i, i + 1) = inv;
    }
    m(n - 1, n - 1) = 2.0 * inv;
    m(n - 1, n - 2) = -5.0 * inv;
    m(n - 1, n - 3) = 4.0 * inv;
    m(n - 1, n - 4) = -1.0 * inv;
    return m;
}

DenseOperator caputo_left_matrix(const Grid1D& grid, double alpha) {
    check_alpha(alpha);
    const int n = grid.n;
    DenseOperator op;
    op.meta.description = describe("caputo-left", alpha, n);

    if (alpha == 1.0) {
        op.m = fd_first_derivative(grid);
        return op;
    }
    const double s = std::pow(grid.dx(), -alpha) / std::tgamma(2.0 - alpha);
    const auto c = l1_coefficients(alpha, n);
    op.m = DenseMatrix(n, n);
    for (int i = 1; i < n; ++i) {
        double* row = op.m.row(i);
        row[0] = -s * c[i];
        for (int j = 1; j <= i; ++j) row[j] = s * (c[i - j + 1] - c[i - j]);
    }
    return op;
}

DenseOperator caputo_right_matrix(const Grid1D& grid, double alpha) {
    check_alpha(alpha);
    const int n = grid.n;
    DenseOperator op;
    op.meta.description = describe("caputo-right", alpha, n);

    if (alpha == 1.0) {
        op.m = fd_first_derivative(grid);
        for (double& v : op.m.data) v = -v;
        return op;
    }
    const double s = std::pow(grid.dx(), -alpha) / std::tgamma(2.0 - alpha);
    const auto c = l1_coefficients(alpha, n);
    op.m = DenseMatrix(n, n);
    for (int i = 0; i < n - 1; ++i) {
        double* row = op.m.row(i);
        for (int j = i; j <= n - 2; ++j) row[j] = s * (c[j - i + 1] - c[j - i]);
        row[n - 1] = -s * c[n - 1 - i];
    }
    return op;
}

DenseOperator riesz_caputo_matrix(const Grid1D& grid, double alpha) {
    check_alpha(alpha);
    const int n = grid.n;
    DenseOperator op;
    op.meta.description = describe("riesz-caputo", alpha, n);

    if (alpha == 1.0) {
        op.m = fd_first_derivative(grid);
        return op;
    }
    const double s =
        2.0 * riesz_norm(alpha) * std::pow(grid.dx(), -alpha) / std::tgamma(2.0 - alpha);
    auto C = l1_coefficients(alpha, n);
    for (double& v : C) v *= s;
    std::vector<double> D(n - 1);
    for (int m = 0; m < n - 1; ++m) D[m] = C[m + 1] - C[m];

    op.m = DenseMatrix(n, n);
    fill_riesz_from_tables(op.m, C, D);
    return op;
}

DenseOperator do_operator_matrix(const Grid1D& grid, const OrderDistribution& dist,
                                 double h, double h_c, int n_alpha) {
    if (!(h > 0.0)) throw DomainError("do_operator_matrix: h must be positive");
    if (!(std::abs(h_c) < 0.5 * h)) throw DomainError("do_operator_matrix: |h_c| must be < h/2");
    if (n_alpha < 1) throw DomainError("do_operator_matrix: n_alpha must be >= 1");

    const int n = grid.n;
    const double itilde = h * h * h / 12.0 + h * h_c * h_c;

    // Gauss rule over the physical thickness; kappa weights renormalized so
    // the discrete partition of unity holds exactly.
    QuadratureRule q = gauss_rule(n_alpha, -0.5 * h - h_c, 0.5 * h - h_c);
    std::vector<double> W(n_alpha), orders(n_alpha);
    double wsum = 0.0;
    for (int g = 0; g < n_alpha; ++g) {
        W[g] = q.weights[g] * q.nodes[g] * q.nodes[g] / itilde;
        wsum += W[g];
        orders[g] = dist.to_physical(q.nodes[g], h, h_c);
        if (!(orders[g] > 0.0) || orders[g] > 1.0)
            throw DomainError("do_operator_matrix: distribution evaluated outside (0, 1]");
    }
    for (double& w : W) w /= wsum;

    DenseOperator op;
    {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "distributed-order n_alpha=%d h=%.12g h_c=%.12g (Gauss-Legendre, "
                      "kappa renormalized)", n_alpha, h, h_c);
        op.meta.description = buf;
    }
    op.meta.quad_nodes = q.nodes;
    op.meta.quad_weights = W;
    op.meta.quad_orders = orders;

    // Local nodes (alpha clamped to exactly 1) take the exact FD matrix; the
    // rest accumulate into combined L1 tables for a single dense fill.
    const double dx = grid.dx();
    std::vector<double> C(n, 0.0);
    double local_weight = 0.0;
    bool any_frac = false;
    for (int g = 0; g < n_alpha; ++g) {
        if (orders[g] == 1.0) {
            local_weight += W[g];
            continue;
        }
        any_frac = true;
        const double s = W[g] * 2.0 * riesz_norm(orders[g]) * std::pow(dx, -orders[g]) /
                         std::tgamma(2.0 - orders[g]);
        const double e = 1.0 - orders[g];
        double prev = 0.0;
        for (int m = 1; m < n; ++m) {
            const double cur = std::pow(static_cast<double>(m), e);
            C[m] += s * (cur - prev);
            prev = cur;
        }
    }

    if (!any_frac) {
        // Pure local limit: exactly the first-derivative matrix.
        op.m = fd_first_derivative(grid);
        return op;
    }

    std::vector<double> D(n - 1);
    for (int m = 0; m < n - 1; ++m) D[m] = C[m + 1] - C[m];
    op.m = DenseMatrix(n, n);
    fill_riesz_from_tables(op.m, C, D);

    if (local_weight != 0.0) {
        DenseMatrix fd = fd_first_derivative(grid);
        kernels::axpy(local_weight, fd.data.data(), op.m.data.data(), fd.data.size());
    }
    return op;
}

// ----------------------------------------------------------------------------
// Matrix-free applier
// ----------------------------------------------------------------------------

RieszCaputoApplier::RieszCaputoApplier(const Grid1D& grid, double alpha)
    : n_(grid.n), alpha_(alpha) {
    check_alpha(alpha);
    if (alpha == 1.0) {
        inv_2dx_ = 1.0 / (2.0 * grid.dx());
        return;
    }
    scale_ = riesz_norm(alpha) * std::pow(grid.dx(), -alpha) / std::tgamma(2.0 - alpha);
    c_ = l1_coefficients(alpha, n_);
    d_.resize(n_ - 1);
    for (int m = 0; m < n_ - 1; ++m) d_[m] = c_[m + 1] - c_[m];
    drev_.resize(n_ - 1);
    for (int u = 0; u < n_ - 1; ++u) drev_[u] = d_[n_ - 2 - u];
}

void RieszCaputoApplier::apply(const double* f, double* out) const {
    const int n = n_;
    if (alpha_ == 1.0) {
        out[0] = inv_2dx_ * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
        for (int i = 1; i < n - 1; ++i) out[i] = inv_2dx_ * (f[i + 1] - f[i - 1]);
        out[n - 1] = inv_2dx_ * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
        return;
    }
    for (int i = 0; i < n; ++i) {
        double v = 0.0;
        if (i >= 1)
            v += scale_ * (-c_[i] * f[0] + kernels::dot(drev_.data() + (n - 1 - i), f + 1, i));
        if (i <= n - 2)
            v -= scale_ * (kernels::dot(d_.data(), f + i, n - 1 - i) - c_[n - 1 - i] * f[n - 1]);
        out[i] = v;
    }
}

void RieszCaputoApplier::apply(const std::vector<double>& f, std::vector<double>& out) const {
    out.resize(f.size());
    apply(f.data(), out.data());
}

}  // namespace nlbeam
