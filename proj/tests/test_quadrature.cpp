#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlbeam/quadrature.hpp"

using namespace nlbeam;

TEST_CASE("one-point rule is the midpoint rule") {
    auto r = gauss_rule(1, 0.0, 2.0);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("two-point rule has the classical nodes") {
    auto r = gauss_rule(2, -1.0, 1.0);
    CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("y^2 over a thickness interval integrates exactly with 3 points") {
    auto r = gauss_rule(3, -0.05, 0.05);
    double s = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * r.nodes[i] * r.nodes[i];
    CHECK(s == doctest::Approx(8.3333333333333e-5).epsilon(1e-12));
}

TEST_CASE("weights sum to interval length; nodes interior and symmetric") {
    for (int n : {1, 2, 5, 16, 46, 101}) {
        auto r = gauss_rule(n, -0.3, 0.7);
        double s = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            s += w;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        for (double x : r.nodes) {
            CHECK(x > -0.3);
            CHECK(x < 0.7);
        }
        // exact +/- symmetry on symmetric intervals (needed for bitwise
        // cancellation in the h_c quadrature)
        auto rs = gauss_rule(n, -0.5, 0.5);
        for (int i = 0; i < n; ++i) {
            CHECK(rs.nodes[i] == -rs.nodes[n - 1 - i]);
            CHECK(rs.weights[i] == rs.weights[n - 1 - i]);
        }
    }
}

TEST_CASE("degree 2n-1 polynomials integrate exactly") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 7, 12}) {
        std::vector<double> coef(2 * n);  // degree 2n-1
        for (double& c : coef) c = u(rng);
        const double a = -0.4, b = 1.1;
        double exact = 0.0;
        for (size_t k = 0; k < coef.size(); ++k)
            exact += coef[k] * (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / (k + 1.0);
        auto r = gauss_rule(n, a, b);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double p = 0.0, xk = 1.0;
            for (size_t k = 0; k < coef.size(); ++k) {
                p += coef[k] * xk;
                xk *= r.nodes[i];
            }
            s += r.weights[i] * p;
        }
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(gauss_rule(0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gauss_rule(4, 1.0, 1.0), DomainError);
}
