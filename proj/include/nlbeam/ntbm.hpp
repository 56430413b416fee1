#pragma once

// Distributed-order nonlocal Timoshenko beam model (DO-NTBM).
//
// Unknowns are the rotation phi and deflection w on the x grid. The coupled
// system is the first-order resultant form
//     M' - Q = 0,   Q' + q = 0
// with M = -E I [D phi] (D the distributed-order operator over the thickness)
// and Q = h mu chi (w' - phi). The two auxiliary parameters h_c (physical axis
// offset) and chi (shear coefficient) are found by a Picard fixed point.

#include "nlbeam/fracops.hpp"
#include "nlbeam/problem.hpp"

namespace nlbeam {

struct FixedPointConfig {
    double tol_hc = 1e-6;     // on |delta h_c| / h
    double tol_chi = 1e-6;    // on |delta chi| / chi
    int max_iter = 50;
    double relaxation = 1.0;  // Picard; halved on oscillation
    bool freeze_parameters = false;  // keep init_hc / init_chi fixed (classical runs)
    double init_hc = 0.0;
    double init_chi = 5.0 / 6.0;
};

struct NtbmSystem {
    DenseMatrix A;            // 2 nx x 2 nx, unknowns ordered [phi; w]
    std::vector<double> rhs;
    DenseMatrix do_matrix;    // the assembled DO operator (kept for BC rows)
    double itilde = 0.0;
    bool bcs_applied = false;
};

struct NtbmSolution {
    std::vector<double> w;
    std::vector<double> phi;
    double h_c = 0.0;
    double chi = 5.0 / 6.0;
    int iterations = 0;
    std::vector<double> M, Q, N_axial;  // resultant profiles
    double max_w = 0.0;                 // max |w|
    double n_residual = 0.0;            // max |N| / max |Q|
    std::vector<double> hc_history, chi_history;
};

/// Governing rows (interior nodes) for given auxiliary parameters.
NtbmSystem assemble_ntbm(const BeamProblem& problem, double h_c, double chi,
                         ModulusMode mode = ModulusMode::Young);

/// Replace the four end rows with the boundary conditions of the selected
/// family. Clamped: w = 0, phi = 0. Simply supported: w = 0, M = M0.
/// Free: Q = Q0, M = M0.
void apply_beam_bcs(NtbmSystem& system, const BeamProblem& problem, double chi,
                    ModulusMode mode = ModulusMode::Young, double M0 = 0.0, double Q0 = 0.0);

/// Physical-axis offset from the converged rotation profile (Eq. 26 average,
/// stations near supported ends excluded).
double compute_hc(const std::vector<double>& phi, const BeamProblem& problem);

/// Recovered shear stress sigma_xy(x_i, y*_g) by axial force balance of the
/// bending stress sigma_xx = -(y - h_c) E [D^(alpha(y)) phi]: rows are x
/// stations, columns the thickness Gauss nodes of `y_nodes`. The physical
/// lever arm (y - h_c) makes the integral close at the bottom surface once
/// h_c has converged.
struct ShearField {
    std::vector<double> y_nodes;    // outer Gauss nodes in (-h/2, h/2)
    std::vector<double> y_weights;
    DenseMatrix sigma;              // nx x n_alpha
    std::vector<double> average;    // section average per station (Pa)
};
ShearField recover_shear_stress_2d(const BeamProblem& problem, const std::vector<double>& phi,
                                   double h_c, ModulusMode mode = ModulusMode::Young);

/// Shear coefficient chi from the energy ratio of Eq. 29, with the uniform
/// stress taken as the section average of the recovered field.
double compute_chi(const BeamProblem& problem, const ShearField& shear);

/// Full solve with the (h_c, chi) fixed point.
NtbmSolution solve_ntbm(const BeamProblem& problem, const FixedPointConfig& fp = {},
                        ModulusMode mode = ModulusMode::Young);

/// Resultant profiles M, Q, N for a solved state; fills solution.M/Q/N_axial
/// and the N-residual ratio.
void resultants(NtbmSolution& solution, const BeamProblem& problem,
                ModulusMode mode = ModulusMode::Young);

/// Nonzeros and dense-block count of the assembled NTBM matrix.
struct NtbmSparsity {
    long long nnz = 0;
    int dense_blocks = 0;           // of the 2x2 partition into nx x nx blocks
    std::vector<uint8_t> block_fill_bitmap;  // 2x2 fill flags, row-major
};
NtbmSparsity ntbm_sparsity(const NtbmSystem& system);

}  // namespace nlbeam
