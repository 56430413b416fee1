#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlbeam/analysis.hpp"

using namespace nlbeam;

TEST_CASE("local_reference reproduces the hand-computed Problem 2 deflection") {
    BeamProblem p = benchmark_problem(2);
    auto ref = local_reference(p, ModulusMode::Young, 5.0 / 6.0);
    // qL^4/(384 E I) + qL^2/(8 h mu chi) with Table 1 constants
    CHECK(ref.w_max == doctest::Approx(0.0509766).epsilon(1e-4));
    const double bending = p.q / (384.0 * p.young_modulus() * p.h * p.h * p.h / 12.0);
    CHECK(bending == doctest::Approx(0.04520).epsilon(1e-3));

    // linearity and the zero-load limit
    BeamProblem p0 = p;
    p0.q = 0.0;
    CHECK(local_reference(p0).w_max == 0.0);
    BeamProblem p2 = p;
    p2.q *= 2.0;
    auto ref2 = local_reference(p2);
    for (int i = 0; i < p.nx; ++i)
        CHECK(ref2.w[i] == doctest::Approx(2.0 * ref.w[i]).epsilon(1e-14));
}

TEST_CASE("two code paths agree on the chi energy ratio") {
    BeamProblem p = benchmark_problem(2);
    p.nx = 101;
    p.nalpha = 16;
    p.dist = make_distribution("sine");
    auto sol = solve_ntbm(p);
    auto shear = recover_shear_stress_2d(p, sol.phi, sol.h_c);
    const double chi_a = compute_chi(p, shear);
    const double chi_b = chi_from_profiles(p, sol.phi, sol.h_c);
    CHECK(std::abs(chi_a - chi_b) / chi_a < 1e-8);
}

TEST_CASE("shear profiles: symmetric distributions give symmetric profiles") {
    BeamProblem p = benchmark_problem(2);
    p.nx = 101;
    p.nalpha = 20;
    p.dist = make_distribution("cosine");
    auto sol = solve_ntbm(p);
    auto prof = shear_profiles(p, sol, 0.3);
    REQUIRE(prof.y.size() == static_cast<size_t>(p.nalpha));
    double peak = 0.0;
    for (double s : prof.sigma_xy) peak = std::max(peak, std::abs(s));
    // free surfaces: the outermost Gauss nodes sit near +/- h/2
    CHECK(std::abs(prof.sigma_xy.front()) < 0.08 * peak);
    CHECK(std::abs(prof.sigma_xy.back()) < 0.08 * peak);
    for (int g = 0; g < p.nalpha / 2; ++g) {
        const int m = p.nalpha - 1 - g;
        CHECK(prof.sigma_xy[g] == doctest::Approx(prof.sigma_xy[m]).epsilon(1e-6));
        CHECK(prof.u_xy[g] == doctest::Approx(prof.u_xy[m]).epsilon(1e-6));
    }
    CHECK_THROWS_AS(shear_profiles(p, sol, 1.5), DomainError);
}

TEST_CASE("shear profiles: asymmetric distribution shifts the peak off center") {
    BeamProblem p = benchmark_problem(2);
    p.nx = 101;
    p.nalpha = 24;
    p.dist = make_distribution("sine");
    auto sol = solve_ntbm(p);
    auto prof = shear_profiles(p, sol, 0.3);
    int gpeak = 0;
    for (int g = 0; g < p.nalpha; ++g)
        if (std::abs(prof.sigma_xy[g]) > std::abs(prof.sigma_xy[gpeak])) gpeak = g;
    CHECK(std::abs(prof.y[gpeak]) > 0.02 * p.h);
}

TEST_CASE("compare_models: local limit agrees with the closed form and itself") {
    BeamProblem p = benchmark_problem(2);
    p.nx = 151;
    p.ny = 16;
    p.nalpha = 16;
    p.dist = make_distribution("uniform", {{"alpha", 1.0}});
    auto rep = compare_models(p, ModulusMode::PlaneStrain);
    CHECK(rep.rel_gap < 0.03);
    auto ref = local_reference(p, ModulusMode::PlaneStrain, 5.0 / 6.0);
    CHECK(rep.max_uy_2d == doctest::Approx(ref.w_max).epsilon(0.03));
}

TEST_CASE("reaction balance on the local problem") {
    BeamProblem p = benchmark_problem(2);
    p.nx = 201;
    p.ny = 21;
    p.nalpha = 8;
    p.dist = make_distribution("uniform", {{"alpha", 1.0}});
    auto sol = solve_anet_timed(p, SolveMethod::Direct);
    auto [reaction, applied] = reaction_balance(sol, p);
    CHECK(reaction == doctest::Approx(applied).epsilon(0.005));
}

TEST_CASE("loglog slope fit on synthetic data") {
    CHECK(loglog_slope({1, 2, 4, 8}, {1, 8, 64, 512}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(loglog_slope({12, 24, 48}, {0.5, 2.0, 8.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convergence and scaling studies run on tiny sweeps") {
    BeamProblem tmpl = benchmark_problem(2);
    tmpl.nalpha = 8;
    tmpl.dist = make_distribution("linear");
    auto pts = convergence_study(tmpl, {6, 8});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].nx == static_cast<int>(std::lround(451.0 / 46.0 * 6)));
    CHECK(pts[1].max_uy_anet > 0.0);
    CHECK(pts[1].max_uy_ntbm > 0.0);

    auto rep = scaling_study(tmpl, {6, 8}, 1, false);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].t_anet_direct > 0.0);
    CHECK(rep.points[0].t_ntbm > 0.0);
    CHECK(rep.points[0].dof_anet == 2LL * rep.points[0].nx * 6);
    CHECK(rep.points[0].dof_ntbm == 2LL * rep.points[0].nx);
}
