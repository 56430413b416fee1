// nlbeam: multiscale nonlocal beam solvers and benchmark harness.
//
// Subcommands: anet2d, ntbm, compare, converge, scale, sparsity, table2.
// Exit codes: 0 ok, 2 configuration error, 3 solver non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "nlbeam/analysis.hpp"
#include "nlbeam/io.hpp"

using nlbeam::BeamProblem;
using nlbeam::DomainError;
using json = nlohmann::json;

namespace {

struct RunConfig {
    int problem = 2;
    double L = NAN, h = NAN, q = NAN;  // NaN = keep preset value
    int nx = 0, ny = 0, nalpha = 0;    // 0   = keep preset value
    std::string dist = "uniform";
    double alpha = NAN, p0 = NAN, p1 = NAN;
    std::string bc = "clamped-clamped";
    std::string method = "direct";
    std::string modulus;  // empty = subcommand default
    double tol_hc = 1e-6, tol_chi = 1e-6, relaxation = 1.0;
    int max_iter = 50;
    double station = NAN;
    std::vector<int> sweep = {12, 24, 36, 48, 60};
    int repeats = 3;
    std::string out;

    BeamProblem resolve() const {
        BeamProblem p = nlbeam::benchmark_problem(problem);
        if (!std::isnan(L)) p.L = L;
        if (!std::isnan(h)) p.h = h;
        if (!std::isnan(q)) p.q = q;
        if (nx > 0) p.nx = nx;
        if (ny > 0) p.ny = ny;
        if (nalpha > 0) p.nalpha = nalpha;
        p.bc = nlbeam::bc_from_string(bc);
        std::map<std::string, double> overrides;
        if (!std::isnan(alpha)) overrides["alpha"] = alpha;
        if (!std::isnan(p0)) overrides["p0"] = p0;
        if (!std::isnan(p1)) overrides["p1"] = p1;
        p.dist = nlbeam::make_distribution(dist, overrides);
        p.validate();
        return p;
    }

    nlbeam::FixedPointConfig fixed_point() const {
        nlbeam::FixedPointConfig fp;
        fp.tol_hc = tol_hc;
        fp.tol_chi = tol_chi;
        fp.max_iter = max_iter;
        fp.relaxation = relaxation;
        return fp;
    }

    nlbeam::ModulusMode modulus_mode(const char* subcommand_default) const {
        const std::string m = modulus.empty() ? subcommand_default : modulus;
        if (m == "young") return nlbeam::ModulusMode::Young;
        if (m == "plane-strain") return nlbeam::ModulusMode::PlaneStrain;
        throw DomainError("unknown modulus mode '" + m + "'");
    }

    std::string outdir() const {
        if (!out.empty()) return out;
        if (const char* env = std::getenv("NLBEAM_OUT_DIR")) return env;
        return "nlbeam_out";
    }

    std::vector<std::string> echo(const BeamProblem& p, const std::string& mod) const {
        char buf[256];
        std::vector<std::string> lines;
        std::snprintf(buf, sizeof(buf), "problem=%d L=%.17g h=%.17g nx=%d ny=%d nalpha=%d q=%.17g",
                      problem, p.L, p.h, p.nx, p.ny, p.nalpha, p.q);
        lines.push_back(buf);
        std::snprintf(buf, sizeof(buf), "bc=%s dist=%s method=%s modulus=%s",
                      nlbeam::to_string(p.bc).c_str(), p.dist.name.c_str(), method.c_str(),
                      mod.c_str());
        lines.push_back(buf);
        std::snprintf(buf, sizeof(buf), "tol_hc=%g tol_chi=%g max_iter=%d relaxation=%g",
                      tol_hc, tol_chi, max_iter, relaxation);
        lines.push_back(buf);
        return lines;
    }
};

void apply_json_config(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw DomainError(std::string("config parse failure: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("config root must be an object");
    for (const auto& [key, val] : j.items()) {
        const auto bad_type = [&key]() {
            return DomainError("config key '" + key + "' has the wrong type");
        };
        auto num = [&](double& dst) { if (!val.is_number()) throw bad_type(); dst = val.get<double>(); };
        auto integer = [&](int& dst) { if (!val.is_number_integer()) throw bad_type(); dst = val.get<int>(); };
        auto str = [&](std::string& dst) { if (!val.is_string()) throw bad_type(); dst = val.get<std::string>(); };
        if (key == "problem") integer(cfg.problem);
        else if (key == "L") num(cfg.L);
        else if (key == "h") { num(cfg.h); if (!(cfg.h > 0.0)) throw DomainError("config key 'h' must be positive"); }
        else if (key == "q") num(cfg.q);
        else if (key == "nx") integer(cfg.nx);
        else if (key == "ny") integer(cfg.ny);
        else if (key == "nalpha") integer(cfg.nalpha);
        else if (key == "dist") str(cfg.dist);
        else if (key == "alpha") num(cfg.alpha);
        else if (key == "p0") num(cfg.p0);
        else if (key == "p1") num(cfg.p1);
        else if (key == "bc") str(cfg.bc);
        else if (key == "method") str(cfg.method);
        else if (key == "modulus") str(cfg.modulus);
        else if (key == "tol_hc") num(cfg.tol_hc);
        else if (key == "tol_chi") num(cfg.tol_chi);
        else if (key == "relaxation") num(cfg.relaxation);
        else if (key == "max_iter") integer(cfg.max_iter);
        else if (key == "station") num(cfg.station);
        else if (key == "repeats") integer(cfg.repeats);
        else if (key == "out") str(cfg.out);
        else if (key == "sweep") {
            if (!val.is_array()) throw bad_type();
            cfg.sweep.clear();
            for (const auto& v : val) {
                if (!v.is_number_integer()) throw bad_type();
                cfg.sweep.push_back(v.get<int>());
            }
        } else {
            throw DomainError("unknown config key '" + key + "'");
        }
    }
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    cmd->add_option("--problem", cfg.problem, "benchmark problem 1-4")->check(CLI::Range(1, 4));
    cmd->add_option("--L", cfg.L, "beam length (m)");
    cmd->add_option("--h", cfg.h, "beam thickness (m)");
    cmd->add_option("--q", cfg.q, "transverse load (N/m)");
    cmd->add_option("--nx", cfg.nx, "mesh points along x");
    cmd->add_option("--ny", cfg.ny, "mesh points along y");
    cmd->add_option("--nalpha", cfg.nalpha, "thickness Gauss points");
    cmd->add_option("--dist", cfg.dist, "order distribution family");
    cmd->add_option("--alpha", cfg.alpha, "uniform distribution order");
    cmd->add_option("--p0", cfg.p0, "distribution parameter p0");
    cmd->add_option("--p1", cfg.p1, "distribution parameter p1");
    cmd->add_option("--bc", cfg.bc, "clamped-clamped | clamped-free | simply-supported");
    cmd->add_option("--method", cfg.method, "direct | iterative");
    cmd->add_option("--modulus", cfg.modulus, "young | plane-strain (1D axial modulus)");
    cmd->add_option("--tol-hc", cfg.tol_hc, "fixed-point tolerance on h_c/h");
    cmd->add_option("--tol-chi", cfg.tol_chi, "fixed-point tolerance on chi");
    cmd->add_option("--max-iter", cfg.max_iter, "fixed-point iteration cap");
    cmd->add_option("--relaxation", cfg.relaxation, "fixed-point relaxation");
    cmd->add_option("--out", cfg.out, "output directory (or NLBEAM_OUT_DIR)");
}

nlbeam::SolveMethod method_of(const RunConfig& cfg) {
    if (cfg.method == "direct") return nlbeam::SolveMethod::Direct;
    if (cfg.method == "iterative") return nlbeam::SolveMethod::Iterative;
    throw DomainError("unknown method '" + cfg.method + "'");
}

// ---------------------------------------------------------------------------

int run_anet2d(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    auto sol = nlbeam::solve_anet_timed(p, method_of(cfg));
    const auto prov = nlbeam::io::provenance(cfg.echo(p, "n/a"));

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(p.nx) * p.ny);
    const auto gx = p.grid_x();
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i)
            rows.push_back({gx.node(i), p.y_node(j), sol.u_x(j, i), sol.u_y(j, i),
                            sol.sigma_xx(j, i), sol.sigma_yy(j, i), sol.sigma_xy(j, i)});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "anet_fields.csv"), prov,
                          {"x", "y", "u_x", "u_y", "sigma_xx", "sigma_yy", "sigma_xy"}, rows);

    json stats = {{"dof", sol.stats.dof},
                  {"nnz", sol.stats.nnz},
                  {"dense_blocks", sol.stats.dense_blocks},
                  {"t_assembly", sol.stats.t_assembly},
                  {"t_solve", sol.stats.t_solve},
                  {"iterations", sol.stats.iterations},
                  {"max_uy", sol.max_uy},
                  {"method", cfg.method}};
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "anet_stats.json"), stats.dump(2) + "\n");
    std::cout << "anet2d: max |u_y| = " << sol.max_uy << " m, dof = " << sol.stats.dof
              << ", wrote " << dir << "/anet_fields.csv\n";
    return 0;
}

int run_ntbm(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    const auto mode = cfg.modulus_mode("young");
    auto timed = nlbeam::solve_ntbm_timed(p, cfg.fixed_point(), mode);
    const auto& sol = timed.solution;
    const auto prov = nlbeam::io::provenance(cfg.echo(p, nlbeam::to_string(mode)));

    std::vector<std::vector<double>> rows;
    const auto gx = p.grid_x();
    for (int i = 0; i < p.nx; ++i)
        rows.push_back({gx.node(i), sol.w[i], sol.phi[i], sol.M[i], sol.Q[i]});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "ntbm_beam.csv"), prov,
                          {"x", "w", "phi", "M", "Q"}, rows);

    json summary = {{"h_c", sol.h_c},          {"chi", sol.chi},
                    {"iterations", sol.iterations}, {"max_w", sol.max_w},
                    {"N_residual", sol.n_residual}, {"t_solve", timed.seconds},
                    {"modulus", nlbeam::to_string(mode)}};
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "ntbm_summary.json"),
                           summary.dump(2) + "\n");

    if (!std::isnan(cfg.station)) {
        auto prof = nlbeam::shear_profiles(p, sol, cfg.station, mode);
        std::vector<std::vector<double>> srows;
        for (size_t g = 0; g < prof.y.size(); ++g)
            srows.push_back({prof.y[g], prof.sigma_xy[g], prof.u_xy[g]});
        nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "ntbm_shear_profile.csv"), prov,
                              {"y", "sigma_xy", "U_xy"}, srows);
    }
    std::cout << "ntbm: h_c = " << sol.h_c << " m, chi = " << sol.chi
              << ", max |w| = " << sol.max_w << " m (" << sol.iterations << " iterations)\n";
    return 0;
}

int run_compare(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    const auto mode = cfg.modulus_mode("plane-strain");
    auto rep = nlbeam::compare_models(p, mode, method_of(cfg));
    const auto prov = nlbeam::io::provenance(cfg.echo(p, nlbeam::to_string(mode)));

    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < rep.x.size(); ++i)
        rows.push_back({rep.x[i], rep.uy_2d_centerline[i], rep.w_1d[i]});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "compare_profiles.csv"), prov,
                          {"x", "uy_2d_centerline", "w_1d"}, rows);
    json out = {{"dist", rep.dist_name},     {"max_uy_2d", rep.max_uy_2d},
                {"max_uy_1d", rep.max_uy_1d}, {"rel_gap", rep.rel_gap},
                {"h_c", rep.h_c},             {"chi", rep.chi},
                {"t_2d", rep.t_2d},           {"t_1d", rep.t_1d}};
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "compare.json"), out.dump(2) + "\n");
    std::cout << "compare: max |u_y| 2D = " << rep.max_uy_2d << " m, 1D = " << rep.max_uy_1d
              << " m, gap = " << 100.0 * rep.rel_gap << "%\n";
    return 0;
}

int run_converge(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    auto pts = nlbeam::convergence_study(p, cfg.sweep, cfg.modulus_mode("plane-strain"));
    const auto prov = nlbeam::io::provenance(cfg.echo(p, "plane-strain"));
    std::vector<std::vector<double>> rows;
    for (const auto& pt : pts)
        rows.push_back({static_cast<double>(pt.ny), static_cast<double>(pt.nx), pt.max_uy_anet,
                        pt.max_uy_ntbm, pt.plateau_anet ? 1.0 : 0.0, pt.plateau_ntbm ? 1.0 : 0.0});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "converge.csv"), prov,
                          {"ny", "nx", "max_uy_anet", "max_uy_ntbm", "plateau_anet",
                           "plateau_ntbm"},
                          rows);
    json out = json::array();
    for (const auto& pt : pts)
        out.push_back({{"ny", pt.ny},
                       {"nx", pt.nx},
                       {"max_uy_anet", pt.max_uy_anet},
                       {"max_uy_ntbm", pt.max_uy_ntbm},
                       {"plateau_anet", pt.plateau_anet},
                       {"plateau_ntbm", pt.plateau_ntbm}});
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "converge.json"), out.dump(2) + "\n");
    std::cout << "converge: " << pts.size() << " sweep points written to " << dir << "\n";
    return 0;
}

int run_scale(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    auto rep = nlbeam::scaling_study(p, cfg.sweep, cfg.repeats);
    const auto prov = nlbeam::io::provenance(cfg.echo(p, "n/a"));
    std::vector<std::vector<double>> rows;
    for (const auto& pt : rep.points)
        rows.push_back({static_cast<double>(pt.ny), static_cast<double>(pt.nx),
                        static_cast<double>(pt.dof_anet), static_cast<double>(pt.nnz_anet),
                        pt.t_anet_direct, pt.t_anet_iter,
                        static_cast<double>(pt.anet_iterations),
                        static_cast<double>(pt.dof_ntbm), static_cast<double>(pt.nnz_ntbm),
                        pt.t_ntbm});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "scale.csv"), prov,
                          {"ny", "nx", "dof_anet", "nnz_anet", "t_anet_direct", "t_anet_iter",
                           "anet_iterations", "dof_ntbm", "nnz_ntbm", "t_ntbm"},
                          rows);
    json out = {{"repeats", rep.repeats},
                {"slope_anet_direct", rep.slope_anet_direct},
                {"slope_anet_iter", rep.slope_anet_iter},
                {"slope_ntbm", rep.slope_ntbm}};
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "scale.json"), out.dump(2) + "\n");
    std::cout << "scale: slopes direct = " << rep.slope_anet_direct
              << ", iterative = " << rep.slope_anet_iter << ", ntbm = " << rep.slope_ntbm << "\n";
    return 0;
}

int run_sparsity(const RunConfig& cfg) {
    BeamProblem p = cfg.resolve();
    nlbeam::AnetSystem sys = nlbeam::assemble(p);
    nlbeam::apply_bcs(sys, p);
    auto rep = nlbeam::sparsity_report(sys);

    nlbeam::NtbmSystem nsys = nlbeam::assemble_ntbm(p, 0.0, 5.0 / 6.0);
    nlbeam::apply_beam_bcs(nsys, p, 5.0 / 6.0);
    auto nrep = nlbeam::ntbm_sparsity(nsys);

    const std::string dir = cfg.outdir();
    // block-level occupancy grid of the 2D system, Fig. 6-style field-major order
    {
        const int g = rep.block_grid;
        std::vector<unsigned char> px(static_cast<size_t>(g) * g, 255);
        for (int k = 0; k < g * g; ++k)
            if (rep.block_fill_fraction[k] > 0.0) px[k] = rep.block_fill_bitmap[k] ? 0 : 128;
        nlbeam::io::write_pgm(nlbeam::io::join_outdir(dir, "anet_blocks.pgm"), g, g, px);
    }
    // entry-level bitmaps for small systems
    if (sys.dof() <= 2000) {
        const int n = sys.dof();
        std::vector<unsigned char> px(static_cast<size_t>(n) * n, 255);
        auto fm = [&](int gi) {  // field-major pixel position
            const int j = gi / (2 * p.nx);
            const int rem = gi - j * 2 * p.nx;
            const int field = rem / p.nx;
            const int i = rem - field * p.nx;
            return field * p.nx * p.ny + j * p.nx + i;
        };
        std::vector<double> xcol(n, 0.0), ycol(n, 0.0);
        for (int jj = 0; jj < p.ny; ++jj)
            for (int i = 0; i < p.nx; ++i) {
                const int r = sys.index(jj, 0, i);
                for (int c = 0; c < p.nx; ++c)
                    if (sys.xx[jj](i, c) != 0.0)
                        px[static_cast<size_t>(fm(r)) * n + fm(sys.index(jj, 0, c))] = 0;
            }
        for (int r = 0; r < n; ++r)
            for (long long k = sys.sparse.rowptr[r]; k < sys.sparse.rowptr[r + 1]; ++k)
                px[static_cast<size_t>(fm(r)) * n + fm(sys.sparse.col[k])] = 0;
        nlbeam::io::write_pgm(nlbeam::io::join_outdir(dir, "anet_occupancy.pgm"), n, n, px);

        const int m = nsys.A.rows;
        std::vector<unsigned char> npx(static_cast<size_t>(m) * m, 255);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                if (nsys.A(r, c) != 0.0) npx[static_cast<size_t>(r) * m + c] = 0;
        nlbeam::io::write_pgm(nlbeam::io::join_outdir(dir, "ntbm_occupancy.pgm"), m, m, npx);
    }

    json out = {{"anet", {{"dof", rep.dof}, {"nnz", rep.nnz}, {"dense_blocks", rep.dense_blocks}}},
                {"ntbm", {{"dof", 2 * p.nx}, {"nnz", nrep.nnz}, {"dense_blocks", nrep.dense_blocks}}}};
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "sparsity.json"), out.dump(2) + "\n");
    std::cout << "sparsity: anet dense blocks = " << rep.dense_blocks
              << ", ntbm dense blocks = " << nrep.dense_blocks << "\n";
    return 0;
}

int run_table2(const RunConfig& cfg) {
    const auto dists = nlbeam::table2_distributions();
    std::vector<std::vector<double>> rows;
    json grid;
    for (int pid = 1; pid <= 4; ++pid) {
        BeamProblem p = nlbeam::benchmark_problem(pid);
        p.bc = nlbeam::bc_from_string(cfg.bc);
        for (const auto& name : dists) {
            p.dist = nlbeam::make_distribution(name);
            auto timed = nlbeam::solve_ntbm_timed(p, cfg.fixed_point(),
                                                  cfg.modulus_mode("young"));
            rows.push_back({p.h, timed.solution.h_c, timed.solution.chi,
                            static_cast<double>(timed.solution.iterations)});
            grid[name][std::to_string(p.h)] = {{"h_c", timed.solution.h_c},
                                               {"chi", timed.solution.chi}};
            std::cout << "table2: h = " << p.h << " " << name << ": h_c = " << timed.solution.h_c
                      << ", chi = " << timed.solution.chi << "\n";
        }
    }
    // long-format CSV: one row per (h, distribution)
    std::vector<std::string> cols = {"h", "h_c", "chi", "iterations"};
    std::vector<std::string> prov = nlbeam::io::provenance(
        {"table2: rows ordered by problem 1-4, distributions " + [&] {
             std::string s;
             for (const auto& d : dists) s += d + " ";
             return s;
         }()});
    const std::string dir = cfg.outdir();
    nlbeam::io::write_csv(nlbeam::io::join_outdir(dir, "table2.csv"), prov, cols, rows);
    nlbeam::io::write_text(nlbeam::io::join_outdir(dir, "table2.json"), grid.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale nonlocal beam solvers (2D DO-ANET / 1D DO-NTBM)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto* c_anet = app.add_subcommand("anet2d", "fully-resolved 2D nonlocal solve");
    auto* c_ntbm = app.add_subcommand("ntbm", "1D distributed-order Timoshenko solve");
    auto* c_cmp = app.add_subcommand("compare", "run both models and report the gap");
    auto* c_conv = app.add_subcommand("converge", "mesh-refinement study over an N_y sweep");
    auto* c_scale = app.add_subcommand("scale", "timing study over an N_y sweep");
    auto* c_sprs = app.add_subcommand("sparsity", "stiffness-matrix structure report");
    auto* c_tab2 = app.add_subcommand("table2", "h_c / chi grid over 8 distributions x 4 heights");
    for (auto* c : {c_anet, c_ntbm, c_cmp, c_conv, c_scale, c_sprs, c_tab2})
        add_common_options(c, cfg, config_path);
    c_ntbm->add_option("--station", cfg.station, "also write the shear profile at x (m)");
    for (auto* c : {c_conv, c_scale})
        c->add_option("--sweep", cfg.sweep, "N_y sweep values")->delimiter(',');
    c_scale->add_option("--repeats", cfg.repeats, "timing repeats (median taken)");

    try {
        app.parse(argc, argv);
        // JSON config first, then explicit flags take precedence
        if (!config_path.empty()) {
            RunConfig file_cfg;
            apply_json_config(file_cfg, config_path);
            RunConfig merged = file_cfg;
            CLI::App* sub = app.get_subcommands().front();
            auto keep = [&](const std::string& flag) { return sub->count(flag) > 0; };
            if (!keep("--problem")) cfg.problem = merged.problem; else merged.problem = cfg.problem;
            if (!keep("--L")) cfg.L = merged.L;
            if (!keep("--h")) cfg.h = merged.h;
            if (!keep("--q")) cfg.q = merged.q;
            if (!keep("--nx")) cfg.nx = merged.nx;
            if (!keep("--ny")) cfg.ny = merged.ny;
            if (!keep("--nalpha")) cfg.nalpha = merged.nalpha;
            if (!keep("--dist")) cfg.dist = merged.dist;
            if (!keep("--alpha")) cfg.alpha = merged.alpha;
            if (!keep("--p0")) cfg.p0 = merged.p0;
            if (!keep("--p1")) cfg.p1 = merged.p1;
            if (!keep("--bc")) cfg.bc = merged.bc;
            if (!keep("--method")) cfg.method = merged.method;
            if (!keep("--modulus")) cfg.modulus = merged.modulus;
            if (!keep("--tol-hc")) cfg.tol_hc = merged.tol_hc;
            if (!keep("--tol-chi")) cfg.tol_chi = merged.tol_chi;
            if (!keep("--max-iter")) cfg.max_iter = merged.max_iter;
            if (!keep("--relaxation")) cfg.relaxation = merged.relaxation;
            if (!keep("--out")) cfg.out = merged.out;
            if (!keep("--sweep") && !merged.sweep.empty()) cfg.sweep = merged.sweep;
            if (!keep("--repeats")) cfg.repeats = merged.repeats;
            if (!keep("--station")) cfg.station = merged.station;
        }

        if (app.got_subcommand(c_anet)) return run_anet2d(cfg);
        if (app.got_subcommand(c_ntbm)) return run_ntbm(cfg);
        if (app.got_subcommand(c_cmp)) return run_compare(cfg);
        if (app.got_subcommand(c_conv)) return run_converge(cfg);
        if (app.got_subcommand(c_scale)) return run_scale(cfg);
        if (app.got_subcommand(c_sprs)) return run_sparsity(cfg);
        if (app.got_subcommand(c_tab2)) return run_table2(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlbeam::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        if (!e.history.empty()) {
            std::cerr << "residual/iterate history (last 10):";
            const size_t start = e.history.size() > 10 ? e.history.size() - 10 : 0;
            for (size_t i = start; i < e.history.size(); ++i) std::cerr << " " << e.history[i];
            std::cerr << "\n";
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
