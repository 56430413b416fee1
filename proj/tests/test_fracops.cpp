#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlbeam/fracops.hpp"
#include "nlbeam/quadrature.hpp"

using namespace nlbeam;

namespace {

std::vector<double> sample(const Grid1D& g, double (*f)(double)) {
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = f(g.node(i));
    return v;
}

std::vector<double> apply_mat(const DenseMatrix& m, const std::vector<double>& f) {
    std::vector<double> out(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * f[j];
        out[i] = s;
    }
    return out;
}

// Analytic oracles, closed-form Caputo derivatives of power functions:
//   cD^a x   = x^(1-a) / Gamma(2-a)
//   cD^a x^2 = 2 x^(2-a) / Gamma(3-a)
// and the right-sided mirror -(b-x)^(1-a)/Gamma(2-a) for f(x)=x.
double caputo_x(double x, double a) { return std::pow(x, 1.0 - a) / std::tgamma(2.0 - a); }
double caputo_x2(double x, double a) { return 2.0 * std::pow(x, 2.0 - a) / std::tgamma(3.0 - a); }
double caputo_right_x(double x, double b, double a) {
    return -std::pow(b - x, 1.0 - a) / std::tgamma(2.0 - a);
}

double max_row_sum_ratio(const DenseMatrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0, mx = 0.0;
        for (int j = 0; j < m.cols; ++j) {
            s += m(i, j);
            mx = std::max(mx, std::abs(m(i, j)));
        }
        if (mx > 0.0) worst = std::max(worst, std::abs(s) / mx);
    }
    return worst;
}

}  // namespace

TEST_CASE("caputo_left: integer-order reduction on x^2") {
    Grid1D g(0.0, 1.0, 101);
    auto op = caputo_left_matrix(g, 1.0);
    auto out = apply_mat(op.m, sample(g, [](double x) { return x * x; }));
    // central / one-sided second-order differences are exact on quadratics
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(out[i] - 2.0 * g.node(i)) < 1e-10);
}

TEST_CASE("caputo_left: zero on constants (row-sum invariant)") {
    Grid1D g(0.0, 2.0, 64);
    for (double a : {0.15, 0.5, 0.99, 1.0}) {
        auto op = caputo_left_matrix(g, a);
        CHECK(max_row_sum_ratio(op.m) < 1e-10);
        auto out = apply_mat(op.m, std::vector<double>(g.n, 3.7));
        for (double v : out) CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("caputo_left: analytic value for f(x)=x at alpha=0.5") {
    Grid1D g(0.0, 1.0, 101);
    auto op = caputo_left_matrix(g, 0.5);
    auto out = apply_mat(op.m, sample(g, [](double x) { return x; }));
    // L1 is exact for linear f (piecewise-linear interpolant is f itself)
    for (int i = 1; i < g.n; ++i)
        CHECK(out[i] == doctest::Approx(caputo_x(g.node(i), 0.5)).epsilon(1e-10));
    CHECK(out[g.n - 1] == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));
}

TEST_CASE("caputo_left: convergence order on x^2 against analytic oracle") {
    const double a = 0.5;
    double prev_err = 0.0;
    std::vector<double> errs;
    for (int n : {51, 101, 201, 401}) {
        Grid1D g(0.0, 1.0, n);
        auto op = caputo_left_matrix(g, a);
        auto out = apply_mat(op.m, sample(g, [](double x) { return x * x; }));
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(out[i] - caputo_x2(g.node(i), a)));
        errs.push_back(err);
        if (prev_err > 0.0) CHECK(prev_err / err >= 2.0);  // at least first order
        prev_err = err;
    }
    // nominal L1 rate is 2-a; check we are clearly better than first order
    const double order = std::log2(errs.front() / errs.back()) / 3.0;
    CHECK(order > 1.2);
}

TEST_CASE("caputo_right: integer-order limit is -d/dx") {
    Grid1D g(0.0, 1.0, 51);
    auto op = caputo_right_matrix(g, 1.0);
    auto out = apply_mat(op.m, sample(g, [](double x) { return x; }));
    for (double v : out) CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("caputo_right: analytic value for f(x)=x at alpha=0.5") {
    Grid1D g(0.0, 1.0, 101);
    auto op = caputo_right_matrix(g, 0.5);
    CHECK(max_row_sum_ratio(op.m) < 1e-10);
    auto out = apply_mat(op.m, sample(g, [](double x) { return x; }));
    const int mid = 50;  // x = 0.5
    CHECK(out[mid] == doctest::Approx(caputo_right_x(0.5, 1.0, 0.5)).epsilon(1e-10));
    CHECK(out[mid] == doctest::Approx(-0.79788).epsilon(1e-4));
}

TEST_CASE("riesz_caputo: integer-order reduction on sin(pi x)") {
    Grid1D g(0.0, 1.0, 101);
    auto op = riesz_caputo_matrix(g, 1.0);
    auto out = apply_mat(op.m, sample(g, [](double x) { return std::sin(M_PI * x); }));
    for (int i = 0; i < g.n; ++i)
        CHECK(out[i] == doctest::Approx(M_PI * std::cos(M_PI * g.node(i))).epsilon(1e-3));
}

TEST_CASE("riesz_caputo: composition of the two analytic oracles at x=0.5") {
    // Riesz-type normalization 1/(2 cos((1-a) pi/2)) applied to (left - right)
    Grid1D g(0.0, 1.0, 101);
    auto op = riesz_caputo_matrix(g, 0.5);
    auto out = apply_mat(op.m, sample(g, [](double x) { return x; }));
    const double norm = 1.0 / (2.0 * std::sin(0.25 * M_PI));
    const double expect = norm * (caputo_x(0.5, 0.5) - caputo_right_x(0.5, 1.0, 0.5));
    CHECK(out[50] == doctest::Approx(expect).epsilon(1e-10));
    CHECK(out[50] == doctest::Approx(1.12838).epsilon(1e-4));
}

TEST_CASE("riesz_caputo: even input about midpoint gives odd output") {
    Grid1D g(0.0, 1.0, 80);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // random even function: f(x) = sum_k a_k cos(2 pi k (x-1/2))
    std::vector<double> coef(6);
    for (double& c : coef) c = u(rng);
    std::vector<double> f(g.n);
    for (int i = 0; i < g.n; ++i) {
        double x = g.node(i) - 0.5, v = 0.0;
        for (size_t k = 0; k < coef.size(); ++k) v += coef[k] * std::cos(2.0 * M_PI * k * x);
        f[i] = v;
    }
    auto op = riesz_caputo_matrix(g, 0.35);
    auto out = apply_mat(op.m, f);
    double scale = 0.0;
    for (double v : out) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(out[i] + out[g.n - 1 - i]) < 1e-12 * scale);
}

TEST_CASE("riesz_caputo: order continuity toward alpha = 1") {
    // f' vanishes at both ends; the Riesz-Caputo limit at the endpoints is
    // half-sided, so a generic f would keep an O(1) endpoint gap.
    Grid1D g(0.0, 1.0, 2001);
    auto op = riesz_caputo_matrix(g, 1.0 - 1e-6);
    auto out = apply_mat(op.m, sample(g, [](double x) { return std::cos(M_PI * x); }));
    double err = 0.0, nrm = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double fp = -M_PI * std::sin(M_PI * g.node(i));
        err = std::max(err, std::abs(out[i] - fp));
        nrm = std::max(nrm, std::abs(fp));
    }
    CHECK(err / nrm < 1e-3);
}

TEST_CASE("alpha outside (0,1] and bad grids are rejected") {
    Grid1D g(0.0, 1.0, 21);
    CHECK_THROWS_AS(caputo_left_matrix(g, 0.0), DomainError);
    CHECK_THROWS_AS(caputo_left_matrix(g, 1.2), DomainError);
    CHECK_THROWS_AS(caputo_right_matrix(g, -0.5), DomainError);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 2), DomainError);
    CHECK_THROWS_AS(Grid1D(1.0, 0.0, 11), DomainError);
}

TEST_CASE("do_operator: uniform alpha=1 gives the first-derivative matrix exactly") {
    Grid1D g(0.0, 1.0, 41);
    auto dist = make_distribution("uniform", {{"alpha", 1.0}});
    auto op = do_operator_matrix(g, dist, 0.1, 0.0, 16);
    auto fd = fd_first_derivative(g);
    for (size_t k = 0; k < fd.data.size(); ++k) CHECK(op.m.data[k] == fd.data[k]);
}

TEST_CASE("do_operator: uniform alpha0 collapses to the constant-order matrix") {
    Grid1D g(0.0, 1.0, 41);
    auto dist = make_distribution("uniform", {{"alpha", 0.5}});
    auto op = do_operator_matrix(g, dist, 0.1, 0.0, 24);
    auto co = riesz_caputo_matrix(g, 0.5);
    double scale = 0.0;
    for (double v : co.m.data) scale = std::max(scale, std::abs(v));
    for (size_t k = 0; k < co.m.data.size(); ++k)
        CHECK(std::abs(op.m.data[k] - co.m.data[k]) < 1e-12 * scale);
}

TEST_CASE("do_operator: rows sum to zero for a varying distribution") {
    Grid1D g(0.0, 1.0, 51);
    auto dist = make_distribution("sine");
    auto op = do_operator_matrix(g, dist, 0.1, 0.004, 20);
    CHECK(max_row_sum_ratio(op.m) < 1e-10);
    CHECK(op.meta.quad_orders.size() == 20);
    double wsum = 0.0;
    for (double w : op.meta.quad_weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("do_operator: equals the weighted sum of per-node constant-order matrices") {
    // Dirac-like strength property: the operator is exactly the quadrature
    // combination of constant-order matrices at the node orders.
    Grid1D g(0.0, 1.0, 31);
    auto dist = make_distribution("linear");
    const double h = 0.1, hc = 0.006;
    auto op = do_operator_matrix(g, dist, h, hc, 5);

    DenseMatrix ref(g.n, g.n);
    for (size_t gq = 0; gq < op.meta.quad_nodes.size(); ++gq) {
        auto co = riesz_caputo_matrix(g, op.meta.quad_orders[gq]);
        for (size_t k = 0; k < ref.data.size(); ++k)
            ref.data[k] += op.meta.quad_weights[gq] * co.m.data[k];
    }
    double scale = 0.0;
    for (double v : ref.data) scale = std::max(scale, std::abs(v));
    for (size_t k = 0; k < ref.data.size(); ++k)
        CHECK(std::abs(op.m.data[k] - ref.data[k]) < 1e-12 * scale);
}

TEST_CASE("do_operator input validation") {
    Grid1D g(0.0, 1.0, 21);
    auto dist = make_distribution("uniform");
    CHECK_THROWS_AS(do_operator_matrix(g, dist, 0.1, 0.06, 8), DomainError);   // |hc| >= h/2
    CHECK_THROWS_AS(do_operator_matrix(g, dist, 0.1, 0.0, 0), DomainError);     // n_alpha < 1
    auto bad = make_distribution("uniform");
    bad.family = DistFamily::Custom;
    bad.custom = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(do_operator_matrix(g, bad, 0.1, 0.0, 4), DomainError);
}

TEST_CASE("RieszCaputoApplier matches the assembled matrix") {
    Grid1D g(0.0, 1.0, 97);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> f(g.n);
    for (double& v : f) v = u(rng);

    for (double a : {0.3, 0.8, 1.0}) {
        auto op = riesz_caputo_matrix(g, a);
        auto ref = apply_mat(op.m, f);
        RieszCaputoApplier ap(g, a);
        std::vector<double> out;
        ap.apply(f, out);
        double scale = 0.0;
        for (double v : ref) scale = std::max(scale, std::abs(v));
        for (int i = 0; i < g.n; ++i) CHECK(std::abs(out[i] - ref[i]) < 1e-12 * scale);
    }
}
