#pragma once

// Cross-model comparison, closed-form local references, convergence and
// computational-cost studies.

#include "nlbeam/anet.hpp"
#include "nlbeam/ntbm.hpp"

namespace nlbeam {

/// Closed-form local Timoshenko deflection profile for the problem's BC
/// family (uniform load, chi fixed, h_c = 0).
struct LocalReference {
    std::vector<double> w;
    double w_max = 0.0;
};
LocalReference local_reference(const BeamProblem& problem,
                               ModulusMode mode = ModulusMode::Young, double chi = 5.0 / 6.0);

/// Timed ANET run: assemble + apply_bcs + solve, stats populated.
AnetSolution solve_anet_timed(const BeamProblem& problem, SolveMethod method,
                              const IterativeOptions& opts = {});

/// Timed NTBM run with wall-clock of the full fixed point.
struct TimedNtbm {
    NtbmSolution solution;
    double seconds = 0.0;
    long long nnz = 0;
};
TimedNtbm solve_ntbm_timed(const BeamProblem& problem, const FixedPointConfig& fp = {},
                           ModulusMode mode = ModulusMode::Young);

struct ComparisonReport {
    std::string problem_name;
    std::string dist_name;
    double max_uy_2d = 0.0;
    double max_uy_1d = 0.0;
    double rel_gap = 0.0;                 // |1d - 2d| / 2d
    std::vector<double> x;                // stations
    std::vector<double> uy_2d_centerline; // signed, 2D convention (downward < 0)
    std::vector<double> w_1d;             // signed, 1D convention (downward > 0)
    double h_c = 0.0, chi = 0.0;
    double t_2d = 0.0, t_1d = 0.0;
};

/// Run both models on the identical problem; the 2D comparand is the
/// transverse displacement on the geometric center line.
ComparisonReport compare_models(const BeamProblem& problem,
                                ModulusMode mode_1d = ModulusMode::PlaneStrain,
                                SolveMethod method_2d = SolveMethod::Direct);

/// sigma_xy and shear-energy profiles over the cross section at one station.
struct ShearProfile {
    double x_station = 0.0;
    std::vector<double> y;
    std::vector<double> sigma_xy;
    std::vector<double> u_xy;  // sigma^2 / (2 mu)
};
ShearProfile shear_profiles(const BeamProblem& problem, const NtbmSolution& solution,
                            double x_station, ModulusMode mode = ModulusMode::Young);

/// Independent reassembly of the Eq. 29 energy ratio from the recovered shear
/// field (cross-checks ntbm compute_chi).
double chi_from_profiles(const BeamProblem& problem, const std::vector<double>& phi,
                         double h_c, ModulusMode mode = ModulusMode::Young);

/// Reaction-vs-load balance of a 2D solution: returns (sum of face shear
/// reactions, applied load q L).
std::pair<double, double> reaction_balance(const AnetSolution& solution,
                                           const BeamProblem& problem);

struct ConvergencePoint {
    int ny = 0, nx = 0;
    double max_uy_anet = 0.0;
    double max_uy_ntbm = 0.0;
    bool plateau_anet = false;  // change from previous point < 1%
    bool plateau_ntbm = false;
};

/// Sweep N_y at the template's aspect ratio r = nx/ny; runs both models.
std::vector<ConvergencePoint> convergence_study(const BeamProblem& tmpl,
                                                const std::vector<int>& ny_sweep,
                                                ModulusMode mode_1d = ModulusMode::PlaneStrain);

struct ScalingPoint {
    int ny = 0, nx = 0;
    long long dof_anet = 0, nnz_anet = 0;
    long long dof_ntbm = 0, nnz_ntbm = 0;
    double t_anet_direct = 0.0;  // medians over repeats, assembly + solve
    double t_anet_iter = 0.0;
    double t_ntbm = 0.0;
    int anet_iterations = 0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    int repeats = 0;
    double slope_anet_direct = 0.0;  // log-log fit of time vs ny
    double slope_anet_iter = 0.0;
    double slope_ntbm = 0.0;
};

ScalingReport scaling_study(const BeamProblem& tmpl, const std::vector<int>& ny_sweep,
                            int repeats, bool include_iterative = true);

/// Least-squares slope of log(t) against log(n).
double loglog_slope(const std::vector<double>& n, const std::vector<double>& t);

}  // namespace nlbeam
