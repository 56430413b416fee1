#include "nlbeam/ntbm.hpp"

#include <cmath>

#include "nlbeam/kernels.hpp"
#include "nlbeam/lapack.hpp"
#include "nlbeam/quadrature.hpp"

namespace nlbeam {

namespace {

// rows of (D1 * M) for a banded first-derivative composed with a dense matrix
DenseMatrix compose_fd_first(const Grid1D& grid, const DenseMatrix& m) {
    const int n = grid.n;
    const double inv2 = 1.0 / (2.0 * grid.dx());
    DenseMatrix out(n, n);
    auto add_row = [&](int dst, double c, int src) {
        kernels::axpy(c, m.row(src), out.row(dst), n);
    };
    add_row(0, -3.0 * inv2, 0);
    add_row(0, 4.0 * inv2, 1);
    add_row(0, -1.0 * inv2, 2);
    for (int i = 1; i < n - 1; ++i) {
        add_row(i, -inv2, i - 1);
        add_row(i, inv2, i + 1);
    }
    add_row(n - 1, 3.0 * inv2, n - 1);
    add_row(n - 1, -4.0 * inv2, n - 2);
    add_row(n - 1, 1.0 * inv2, n - 3);
    return out;
}

// included x-station range for the h_c average: 2 cells away from any
// supported (w-constrained) end
void hc_station_range(const BeamProblem& p, int& lo, int& hi) {
    lo = 2;
    hi = p.nx - 3;
    if (p.bc == BcFamily::ClampedFree) hi = p.nx - 1;  // free tip is not a support
}

}  // namespace

NtbmSystem assemble_ntbm(const BeamProblem& problem, double h_c, double chi,
                         ModulusMode mode) {
    problem.validate();
    if (!(chi > 0.0)) throw DomainError("assemble_ntbm: chi must be positive");
    if (!(std::abs(h_c) < 0.5 * problem.h))
        throw DomainError("assemble_ntbm: |h_c| must be < h/2");

    const Grid1D grid = problem.grid_x();
    const int n = grid.n;
    const double E = problem.axial_modulus(mode);
    const double itilde = problem.itilde(h_c);
    const double EI = E * itilde;
    const double shear_rig = problem.h * problem.mu * chi;  // h mu chi, unit width

    NtbmSystem sys;
    sys.itilde = itilde;
    sys.do_matrix =
        do_operator_matrix(grid, problem.dist, problem.h, h_c, problem.nalpha).m;
    sys.A = DenseMatrix(2 * n, 2 * n);
    sys.rhs.assign(2 * n, 0.0);

    const DenseMatrix d1_do = compose_fd_first(grid, sys.do_matrix);
    const double inv2 = 1.0 / (2.0 * grid.dx());
    const double invdx2 = 1.0 / (grid.dx() * grid.dx());

    // rows 0..n-1: M' - Q = 0   ->  -EI [D1 DO phi] - h mu chi (w' - phi) = 0
    for (int i = 1; i < n - 1; ++i) {
        double* row = sys.A.row(i);
        kernels::axpy(-EI, d1_do.row(i), row, n);  // phi block
        row[i] += shear_rig;
        row[n + i - 1] += shear_rig * inv2;        // -(w')
        row[n + i + 1] -= shear_rig * inv2;
    }
    // rows n..2n-1: Q' + q = 0  ->  h mu chi (w'' - phi') = -q
    for (int i = 1; i < n - 1; ++i) {
        double* row = sys.A.row(n + i);
        row[n + i - 1] += shear_rig * invdx2;
        row[n + i] -= 2.0 * shear_rig * invdx2;
        row[n + i + 1] += shear_rig * invdx2;
        row[i - 1] += shear_rig * inv2;            // -(phi')
        row[i + 1] -= shear_rig * inv2;
        sys.rhs[n + i] = -problem.q;
    }
    return sys;
}

void apply_beam_bcs(NtbmSystem& sys, const BeamProblem& problem, double chi,
                    ModulusMode mode, double M0, double Q0) {
    const Grid1D grid = problem.grid_x();
    const int n = grid.n;
    const double E = problem.axial_modulus(mode);
    const double EI = E * sys.itilde;
    const double shear_rig = problem.h * problem.mu * chi;
    const double inv2 = 1.0 / (2.0 * grid.dx());

    auto clear_row = [&](int r) {
        std::fill(sys.A.row(r), sys.A.row(r) + 2 * n, 0.0);
        sys.rhs[r] = 0.0;
    };
    auto set_phi_row = [&](int i) {  // phi(x_i) = 0
        clear_row(i);
        sys.A(i, i) = 1.0;
    };
    auto set_w_row = [&](int i) {  // w(x_i) = 0
        clear_row(n + i);
        sys.A(n + i, n + i) = 1.0;
    };
    auto set_moment_row = [&](int i) {  // -EI [DO phi]_i = M0
        clear_row(i);
        kernels::axpy(-EI, sys.do_matrix.row(i), sys.A.row(i), n);
        sys.rhs[i] = M0;
    };
    auto set_shear_row = [&](int i) {  // h mu chi (w' - phi)_i = Q0
        clear_row(n + i);
        double* row = sys.A.row(n + i);
        if (i == 0) {
            row[n + 0] = -3.0 * inv2 * shear_rig;
            row[n + 1] = 4.0 * inv2 * shear_rig;
            row[n + 2] = -1.0 * inv2 * shear_rig;
        } else {
            row[n + i] = 3.0 * inv2 * shear_rig;
            row[n + i - 1] = -4.0 * inv2 * shear_rig;
            row[n + i - 2] = 1.0 * inv2 * shear_rig;
        }
        row[i] -= shear_rig;
        sys.rhs[n + i] = Q0;
    };

    switch (problem.bc) {
        case BcFamily::ClampedClamped:
            set_phi_row(0);
            set_w_row(0);
            set_phi_row(n - 1);
            set_w_row(n - 1);
            break;
        case BcFamily::ClampedFree:
            set_phi_row(0);
            set_w_row(0);
            set_moment_row(n - 1);
            set_shear_row(n - 1);
            break;
        case BcFamily::SimplySupported:
            set_moment_row(0);
            set_w_row(0);
            set_moment_row(n - 1);
            set_w_row(n - 1);
            break;
    }
    sys.bcs_applied = true;
}

double compute_hc(const std::vector<double>& phi, const BeamProblem& problem) {
    const Grid1D grid = problem.grid_x();
    const int n = grid.n;
    const double h = problem.h;

    QuadratureRule q = gauss_rule(problem.nalpha, -0.5 * h, 0.5 * h);
    std::vector<double> num(n, 0.0), den(n, 0.0), v(n);
    for (int g = 0; g < problem.nalpha; ++g) {
        const double alpha = problem.dist.eval(q.nodes[g], h);
        RieszCaputoApplier ap(grid, alpha);
        ap.apply(phi.data(), v.data());
        const double wg = q.weights[g];
        const double ywg = wg * q.nodes[g];
        for (int i = 0; i < n; ++i) {
            num[i] += ywg * v[i];
            den[i] += wg * v[i];
        }
    }

    int lo, hi;
    hc_station_range(problem, lo, hi);
    double den_max = 0.0;
    for (int i = lo; i <= hi; ++i) den_max = std::max(den_max, std::abs(den[i]));
    if (den_max == 0.0)
        throw SolverError("compute_hc: degenerate solution, DO curvature vanishes everywhere");

    // Trapezoid average of the ratio num/den over the included stations,
    // weighted by |den|. If h_c(x) is x-constant (the property Eq. 26 rests
    // on) any weighting returns that constant; the |den| weight removes the
    // spikes at the sign changes of the DO curvature, where the plain ratio
    // has removable singularities.
    double acc = 0.0, wacc = 0.0;
    for (int i = lo; i <= hi; ++i) {
        if (std::abs(den[i]) < 1e-12 * den_max) continue;
        const double w = ((i == lo || i == hi) ? 0.5 : 1.0) * std::abs(den[i]);
        acc += w * (num[i] / den[i]);
        wacc += w;
    }
    if (wacc == 0.0)
        throw SolverError("compute_hc: all stations degenerate");
    return acc / wacc;
}

ShearField recover_shear_stress_2d(const BeamProblem& problem, const std::vector<double>& phi,
                                   double h_c, ModulusMode mode) {
    const Grid1D grid = problem.grid_x();
    const int n = grid.n;
    const double h = problem.h;
    const double E = problem.axial_modulus(mode);
    const int na = problem.nalpha;

    ShearField out;
    QuadratureRule outer = gauss_rule(na, -0.5 * h, 0.5 * h);
    out.y_nodes = outer.nodes;
    out.y_weights = outer.weights;
    out.sigma = DenseMatrix(n, na);
    out.average.assign(n, 0.0);

    std::vector<double> v(n), dv(n), col(n);
    for (int g = 0; g < na; ++g) {
        // sigma_xy(x, y*) = -E int_{y*}^{h/2} (y - h_c) [D^{alpha(y)} phi]'(x) dy
        QuadratureRule inner = gauss_rule(na, outer.nodes[g], 0.5 * h);
        std::fill(col.begin(), col.end(), 0.0);
        for (int gi = 0; gi < na; ++gi) {
            const double y = inner.nodes[gi];
            const double alpha = problem.dist.eval(y, h);
            RieszCaputoApplier ap(grid, alpha);
            ap.apply(phi.data(), v.data());
            apply_fd_first(grid, v.data(), dv.data());
            kernels::axpy(-E * inner.weights[gi] * (y - h_c), dv.data(), col.data(), n);
        }
        for (int i = 0; i < n; ++i) out.sigma(i, g) = col[i];
    }
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int g = 0; g < na; ++g) s += outer.weights[g] * out.sigma(i, g);
        out.average[i] = s / h;
    }
    return out;
}

double compute_chi(const BeamProblem& problem, const ShearField& shear) {
    const int n = problem.nx;
    const int na = problem.nalpha;
    // trapezoid in x of h * avg^2 (numerator) and of the Gauss y-integral of
    // sigma^2 (denominator)
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        num += wx * problem.h * shear.average[i] * shear.average[i];
        double s2 = 0.0;
        for (int g = 0; g < na; ++g)
            s2 += shear.y_weights[g] * shear.sigma(i, g) * shear.sigma(i, g);
        den += wx * s2;
    }
    if (den <= 0.0)
        throw SolverError("compute_chi: degenerate solution, zero shear energy");
    return num / den;
}

NtbmSolution solve_ntbm(const BeamProblem& problem, const FixedPointConfig& fp,
                        ModulusMode mode) {
    problem.validate();
    if (!(fp.tol_hc > 0.0) || !(fp.tol_chi > 0.0) || fp.max_iter < 1)
        throw DomainError("solve_ntbm: invalid fixed-point configuration");

    const int n = problem.nx;
    double h_c = fp.init_hc;
    double chi = fp.init_chi;
    double relax = fp.relaxation;

    NtbmSolution sol;
    double prev_dhc = 0.0, prev_dchi = 0.0;
    int flips = 0;

    for (int it = 1; it <= fp.max_iter; ++it) {
        NtbmSystem sys = assemble_ntbm(problem, h_c, chi, mode);
        apply_beam_bcs(sys, problem, chi, mode);
        std::vector<double> u = sys.rhs;
        lapack::solve_inplace(std::move(sys.A), u);

        sol.phi.assign(u.begin(), u.begin() + n);
        sol.w.assign(u.begin() + n, u.end());
        sol.iterations = it;

        if (fp.freeze_parameters) {
            sol.h_c = h_c;
            sol.chi = chi;
            break;
        }

        const double hc_new = compute_hc(sol.phi, problem);
        ShearField shear = recover_shear_stress_2d(problem, sol.phi, hc_new, mode);
        const double chi_new = compute_chi(problem, shear);

        const double dhc = hc_new - h_c;
        const double dchi = chi_new - chi;
        sol.hc_history.push_back(hc_new);
        sol.chi_history.push_back(chi_new);

        // Picard update with fallback relaxation on sign-alternating updates
        if (it > 1 && ((dhc * prev_dhc < 0.0 && std::abs(dhc) > fp.tol_hc * problem.h) ||
                       (dchi * prev_dchi < 0.0 && std::abs(dchi) > fp.tol_chi * chi))) {
            if (++flips >= 2) relax = 0.5 * fp.relaxation;
        } else {
            flips = 0;
        }
        prev_dhc = dhc;
        prev_dchi = dchi;

        h_c += relax * dhc;
        chi += relax * dchi;
        sol.h_c = h_c;
        sol.chi = chi;

        if (!(std::abs(h_c) < 0.5 * problem.h))
            throw SolverError("solve_ntbm: h_c left the admissible range", sol.hc_history);
        if (!(chi > 0.0))
            throw SolverError("solve_ntbm: chi became non-positive", sol.chi_history);

        if (std::abs(dhc) / problem.h < fp.tol_hc && std::abs(dchi) / chi < fp.tol_chi)
            break;
        if (it == fp.max_iter)
            throw SolverError("solve_ntbm: fixed point did not converge in " +
                                  std::to_string(fp.max_iter) + " iterations",
                              sol.chi_history);
    }

    resultants(sol, problem, mode);
    return sol;
}

void resultants(NtbmSolution& sol, const BeamProblem& problem, ModulusMode mode) {
    const Grid1D grid = problem.grid_x();
    const int n = grid.n;
    const double E = problem.axial_modulus(mode);
    const double itilde = problem.itilde(sol.h_c);
    const double shear_rig = problem.h * problem.mu * sol.chi;

    DenseMatrix dom =
        do_operator_matrix(grid, problem.dist, problem.h, sol.h_c, problem.nalpha).m;
    sol.M.assign(n, 0.0);
    kernels::matvec(dom.data.data(), n, n, sol.phi.data(), sol.M.data());
    for (double& v : sol.M) v *= -E * itilde;

    sol.Q.assign(n, 0.0);
    apply_fd_first(grid, sol.w.data(), sol.Q.data());
    for (int i = 0; i < n; ++i) sol.Q[i] = shear_rig * (sol.Q[i] - sol.phi[i]);

    // N(x) = -E int y~ [D^(alpha~) phi] dy~ over the physical thickness
    sol.N_axial.assign(n, 0.0);
    QuadratureRule q =
        gauss_rule(problem.nalpha, -0.5 * problem.h - sol.h_c, 0.5 * problem.h - sol.h_c);
    std::vector<double> v(n);
    for (int g = 0; g < problem.nalpha; ++g) {
        const double alpha = problem.dist.to_physical(q.nodes[g], problem.h, sol.h_c);
        RieszCaputoApplier ap(grid, alpha);
        ap.apply(sol.phi.data(), v.data());
        const double c = -E * q.weights[g] * q.nodes[g];
        kernels::axpy(c, v.data(), sol.N_axial.data(), n);
    }

    sol.max_w = 0.0;
    double qmax = 0.0, nmax = 0.0;
    for (int i = 0; i < n; ++i) {
        sol.max_w = std::max(sol.max_w, std::abs(sol.w[i]));
        qmax = std::max(qmax, std::abs(sol.Q[i]));
        nmax = std::max(nmax, std::abs(sol.N_axial[i]));
    }
    sol.n_residual = qmax > 0.0 ? nmax / qmax : 0.0;
}

NtbmSparsity ntbm_sparsity(const NtbmSystem& sys) {
    const int n2 = sys.A.rows;
    const int n = n2 / 2;
    NtbmSparsity out;
    out.block_fill_bitmap.assign(4, 0);
    long long fill[2][2] = {{0, 0}, {0, 0}};
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j)
            if (sys.A(i, j) != 0.0) {
                ++out.nnz;
                ++fill[i / n][j / n];
            }
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            const bool dense =
                static_cast<double>(fill[bi][bj]) > 0.5 * static_cast<double>(n) * n;
            out.block_fill_bitmap[bi * 2 + bj] = dense ? 1 : 0;
            if (dense) ++out.dense_blocks;
        }
    return out;
}

}  // namespace nlbeam
