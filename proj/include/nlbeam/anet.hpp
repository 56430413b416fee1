#pragma once

// Fully-resolved 2D DO-ANET plane-strain static solver.
//
// Unknowns: u_x(i,j), u_y(i,j) on the nx x ny tensor grid, ordered layer by
// layer: index(j, field, i) = j*2*nx + field*nx + i with field 0 = u_x,
// field 1 = u_y. The u_x momentum equation carries a dense nonlocal block per
// layer, (2mu+la) D1x RieszCaputo(alpha(y_j)); everything else is a local
// stencil kept in one global CSR. Traction boundary conditions on the two
// surfaces enter by ghost-point elimination, so the surface rows keep their
// dense nonlocal term (the Fig. 6 block structure).

#include "nlbeam/problem.hpp"

namespace nlbeam {

enum class SolveMethod { Direct, Iterative };

struct Csr {
    int n = 0;
    std::vector<long long> rowptr;
    std::vector<int> col;
    std::vector<double> val;
};

struct AnetSystem {
    int nx = 0, ny = 0;
    std::vector<DenseMatrix> xx;   // per layer: u_x-eq rows <- u_x same layer
    Csr sparse;                    // all local couplings and BC rows
    std::vector<double> rhs;
    bool bcs_applied = false;

    int dof() const { return 2 * nx * ny; }
    int index(int j, int field, int i) const { return j * 2 * nx + field * nx + i; }

    /// y = A x (dense layer blocks + CSR part)
    void matvec(const double* x, double* y) const;
    long long nnz() const;
};

struct AnetStats {
    long long dof = 0;
    long long nnz = 0;
    int dense_blocks = 0;
    double t_assembly = 0.0;  // seconds, assemble + apply_bcs
    double t_solve = 0.0;
    int iterations = 0;       // Krylov iterations (iterative method)
};

struct AnetSolution {
    DenseMatrix u_x, u_y;                       // ny x nx nodal fields
    DenseMatrix sigma_xx, sigma_yy, sigma_xy;   // ny x nx nodal fields
    AnetStats stats;
    double max_uy = 0.0;                        // max |u_y|
};

/// Interior governing rows (Eq. 11 with zero inertia and body force).
AnetSystem assemble(const BeamProblem& problem);

/// Surface traction rows (ghost elimination, uniform load -q on the top
/// surface) and the x-face rows of the selected BC family.
void apply_bcs(AnetSystem& system, const BeamProblem& problem);

struct IterativeOptions {
    double tol = 1e-9;      // relative residual
    int restart = 80;
    long long max_iter = 0; // 0 -> 10 * DOF
};

/// Solve the assembled system. Direct: block-tridiagonal LU over the layers.
/// Iterative: restarted GMRES, right-preconditioned with the two diagonal
/// field blocks (u_x: layer-tridiagonal dense factorization, u_y: banded LU).
AnetSolution solve(const AnetSystem& system, const BeamProblem& problem,
                   SolveMethod method, const IterativeOptions& opts = {});

/// Residual history of the last iterative solve that failed (diagnostics).
std::vector<double> last_residual_history();

/// Nodal stress recovery from displacement fields (Eq. 10 / Eq. 1).
void recover_stress(AnetSolution& solution, const BeamProblem& problem);

struct SparsityReport {
    long long dof = 0;
    long long nnz = 0;
    int dense_blocks = 0;                     // blocks with > 50% fill
    int block_grid = 0;                       // 2*ny (partition count per side)
    std::vector<uint8_t> block_fill_bitmap;   // block_grid^2 flags, field-major order
    std::vector<double> block_fill_fraction;  // same layout
};

/// Block occupancy of the assembled matrix, in the field-major layout of
/// Fig. 6 (u_x columns first, then u_y).
SparsityReport sparsity_report(const AnetSystem& system);

}  // namespace nlbeam
