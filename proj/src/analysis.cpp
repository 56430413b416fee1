#include "nlbeam/analysis.hpp"

#include <chrono>
#include <cmath>

#include "nlbeam/quadrature.hpp"

namespace nlbeam {

namespace {
using clock_t_ = std::chrono::steady_clock;
double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

BeamProblem scaled_problem(const BeamProblem& tmpl, int ny) {
    BeamProblem p = tmpl;
    const double r = static_cast<double>(tmpl.nx) / static_cast<double>(tmpl.ny);
    p.ny = ny;
    p.nx = std::max(5, static_cast<int>(std::lround(r * ny)));
    return p;  // nalpha stays at the template's quadrature resolution
}
}  // namespace

LocalReference local_reference(const BeamProblem& p, ModulusMode mode, double chi) {
    p.validate();
    const double E = p.axial_modulus(mode);
    const double I = p.h * p.h * p.h / 12.0;
    const double kGA = p.h * p.mu * chi;
    const double L = p.L, q = p.q;

    LocalReference ref;
    ref.w.resize(p.nx);
    const Grid1D gx = p.grid_x();
    for (int i = 0; i < p.nx; ++i) {
        const double x = gx.node(i);
        double w;
        switch (p.bc) {
            case BcFamily::ClampedClamped:
                w = q * x * x * (L - x) * (L - x) / (24.0 * E * I) +
                    q * x * (L - x) / (2.0 * kGA);
                break;
            case BcFamily::ClampedFree:
                w = q * x * x * (6.0 * L * L - 4.0 * L * x + x * x) / (24.0 * E * I) +
                    q * x * (2.0 * L - x) / (2.0 * kGA);
                break;
            case BcFamily::SimplySupported:
                w = q * x * (L * L * L - 2.0 * L * x * x + x * x * x) / (24.0 * E * I) +
                    q * x * (L - x) / (2.0 * kGA);
                break;
            default:
                throw DomainError("local_reference: unsupported boundary condition family");
        }
        ref.w[i] = w;
        ref.w_max = std::max(ref.w_max, std::abs(w));
    }
    return ref;
}

AnetSolution solve_anet_timed(const BeamProblem& p, SolveMethod method,
                              const IterativeOptions& opts) {
    const auto t0 = clock_t_::now();
    AnetSystem sys = assemble(p);
    apply_bcs(sys, p);
    const double t_asm = seconds_since(t0);
    AnetSolution sol = solve(sys, p, method, opts);
    sol.stats.t_assembly = t_asm;
    sol.stats.dense_blocks = sparsity_report(sys).dense_blocks;
    return sol;
}

TimedNtbm solve_ntbm_timed(const BeamProblem& p, const FixedPointConfig& fp, ModulusMode mode) {
    TimedNtbm out;
    const auto t0 = clock_t_::now();
    out.solution = solve_ntbm(p, fp, mode);
    out.seconds = seconds_since(t0);
    NtbmSystem sys = assemble_ntbm(p, out.solution.h_c, out.solution.chi, mode);
    apply_beam_bcs(sys, p, out.solution.chi, mode);
    out.nnz = ntbm_sparsity(sys).nnz;
    return out;
}

ComparisonReport compare_models(const BeamProblem& p, ModulusMode mode_1d,
                                SolveMethod method_2d) {
    ComparisonReport rep;
    rep.problem_name = "L=" + std::to_string(p.L) + " h=" + std::to_string(p.h);
    rep.dist_name = p.dist.name;

    AnetSolution sol2d = solve_anet_timed(p, method_2d);
    rep.t_2d = sol2d.stats.t_assembly + sol2d.stats.t_solve;

    TimedNtbm t1d = solve_ntbm_timed(p, {}, mode_1d);
    rep.t_1d = t1d.seconds;
    const NtbmSolution& sol1d = t1d.solution;

    const Grid1D gx = p.grid_x();
    rep.x.resize(p.nx);
    rep.uy_2d_centerline.resize(p.nx);
    rep.w_1d = sol1d.w;
    for (int i = 0; i < p.nx; ++i) {
        rep.x[i] = gx.node(i);
        // geometric center line; even ny averages the two middle layers
        if (p.ny % 2 == 1) {
            rep.uy_2d_centerline[i] = sol2d.u_y(p.ny / 2, i);
        } else {
            rep.uy_2d_centerline[i] =
                0.5 * (sol2d.u_y(p.ny / 2 - 1, i) + sol2d.u_y(p.ny / 2, i));
        }
    }
    double m2 = 0.0, m1 = 0.0;
    for (double v : rep.uy_2d_centerline) m2 = std::max(m2, std::abs(v));
    for (double v : rep.w_1d) m1 = std::max(m1, std::abs(v));
    rep.max_uy_2d = m2;
    rep.max_uy_1d = m1;
    rep.rel_gap = std::abs(m1 - m2) / m2;
    rep.h_c = sol1d.h_c;
    rep.chi = sol1d.chi;
    return rep;
}

ShearProfile shear_profiles(const BeamProblem& p, const NtbmSolution& sol, double x_station,
                            ModulusMode mode) {
    if (x_station < 0.0 || x_station > p.L)
        throw DomainError("shear_profiles: station outside [0, L]");
    ShearField field = recover_shear_stress_2d(p, sol.phi, sol.h_c, mode);
    const Grid1D gx = p.grid_x();
    const int i = static_cast<int>(std::lround(x_station / gx.dx()));

    ShearProfile prof;
    prof.x_station = gx.node(i);
    prof.y = field.y_nodes;
    prof.sigma_xy.resize(field.y_nodes.size());
    prof.u_xy.resize(field.y_nodes.size());
    for (size_t g = 0; g < field.y_nodes.size(); ++g) {
        prof.sigma_xy[g] = field.sigma(i, static_cast<int>(g));
        prof.u_xy[g] = prof.sigma_xy[g] * prof.sigma_xy[g] / (2.0 * p.mu);
    }
    return prof;
}

double chi_from_profiles(const BeamProblem& p, const std::vector<double>& phi,
                         double h_c, ModulusMode mode) {
    // independent reassembly of the Eq. 29 ratio: trapezoid in x of the
    // section-averaged stress squared over the section energy integral
    ShearField field = recover_shear_stress_2d(p, phi, h_c, mode);
    const int n = p.nx;
    const int na = p.nalpha;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        double avg = 0.0, e2 = 0.0;
        for (int g = 0; g < na; ++g) {
            avg += field.y_weights[g] * field.sigma(i, g);
            e2 += field.y_weights[g] * field.sigma(i, g) * field.sigma(i, g);
        }
        avg /= p.h;
        num += wx * p.h * avg * avg;
        den += wx * e2;
    }
    if (den <= 0.0) throw SolverError("chi_from_profiles: zero shear energy");
    return num / den;
}

std::pair<double, double> reaction_balance(const AnetSolution& sol, const BeamProblem& p) {
    // net vertical reaction carried by the two end faces, from the recovered
    // shear stress (trapezoid over the thickness)
    const double dy = p.dy();
    double r0 = 0.0, rl = 0.0;
    for (int j = 0; j < p.ny; ++j) {
        const double w = (j == 0 || j == p.ny - 1) ? 0.5 : 1.0;
        r0 += w * dy * sol.sigma_xy(j, 0);
        rl += w * dy * sol.sigma_xy(j, p.nx - 1);
    }
    return {std::abs(rl - r0), p.q * p.L};
}

std::vector<ConvergencePoint> convergence_study(const BeamProblem& tmpl,
                                                const std::vector<int>& ny_sweep,
                                                ModulusMode mode_1d) {
    std::vector<ConvergencePoint> out;
    double prev_a = 0.0, prev_n = 0.0;
    for (int ny : ny_sweep) {
        BeamProblem p = scaled_problem(tmpl, ny);
        ConvergencePoint pt;
        pt.ny = ny;
        pt.nx = p.nx;
        pt.max_uy_anet = solve_anet_timed(p, SolveMethod::Direct).max_uy;
        pt.max_uy_ntbm = solve_ntbm_timed(p, {}, mode_1d).solution.max_w;
        if (!out.empty()) {
            pt.plateau_anet = std::abs(pt.max_uy_anet - prev_a) / prev_a < 0.01;
            pt.plateau_ntbm = std::abs(pt.max_uy_ntbm - prev_n) / prev_n < 0.01;
        }
        prev_a = pt.max_uy_anet;
        prev_n = pt.max_uy_ntbm;
        out.push_back(pt);
    }
    return out;
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& t) {
    const size_t m = n.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(m), ly(m);
    for (size_t i = 0; i < m; ++i) {
        lx[i] = std::log(n[i]);
        ly[i] = std::log(t[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    return sxy / sxx;
}

ScalingReport scaling_study(const BeamProblem& tmpl, const std::vector<int>& ny_sweep,
                            int repeats, bool include_iterative) {
    if (repeats < 1) throw DomainError("scaling_study: repeats must be >= 1");
    ScalingReport rep;
    rep.repeats = repeats;

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const size_t m = v.size();
        return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    };

    for (int ny : ny_sweep) {
        BeamProblem p = scaled_problem(tmpl, ny);
        ScalingPoint pt;
        pt.ny = ny;
        pt.nx = p.nx;

        std::vector<double> td, ti, tn;
        for (int r = 0; r < repeats; ++r) {
            AnetSolution sd = solve_anet_timed(p, SolveMethod::Direct);
            td.push_back(sd.stats.t_assembly + sd.stats.t_solve);
            pt.dof_anet = sd.stats.dof;
            pt.nnz_anet = sd.stats.nnz;
            if (include_iterative) {
                AnetSolution si = solve_anet_timed(p, SolveMethod::Iterative);
                ti.push_back(si.stats.t_assembly + si.stats.t_solve);
                pt.anet_iterations = si.stats.iterations;
            }
            TimedNtbm s1 = solve_ntbm_timed(p);
            tn.push_back(s1.seconds);
            pt.dof_ntbm = 2LL * p.nx;
            pt.nnz_ntbm = s1.nnz;
        }
        pt.t_anet_direct = median(td);
        pt.t_anet_iter = include_iterative ? median(ti) : 0.0;
        pt.t_ntbm = median(tn);
        rep.points.push_back(pt);
    }

    std::vector<double> ns, t1, t2, t3;
    for (const auto& pt : rep.points) {
        ns.push_back(pt.ny);
        t1.push_back(pt.t_anet_direct);
        t2.push_back(std::max(pt.t_anet_iter, 1e-12));
        t3.push_back(pt.t_ntbm);
    }
    rep.slope_anet_direct = loglog_slope(ns, t1);
    rep.slope_anet_iter = include_iterative ? loglog_slope(ns, t2) : 0.0;
    rep.slope_ntbm = loglog_slope(ns, t3);
    return rep;
}

}  // namespace nlbeam
