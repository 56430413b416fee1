#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlbeam/distributions.hpp"

using namespace nlbeam;

TEST_CASE("uniform profiles are constant") {
    auto d5 = make_distribution("uniform-0.5");
    auto d8 = make_distribution("uniform-0.8");
    for (double y : {-0.05, -0.02, 0.0, 0.031, 0.05}) {
        CHECK(d5.eval(y, 0.1) == 0.5);
        CHECK(d8.eval(y, 0.1) == 0.8);
    }
    CHECK(d5.name == "uniform-0.5");
    CHECK(d8.symmetric);
}

TEST_CASE("linear profile anchors: 0.3 / 0.6 / 0.9, soft side down") {
    auto d = make_distribution("linear");
    const double h = 0.1;
    CHECK(d.eval(-h / 2, h) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(d.eval(0.0, h) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(d.eval(+h / 2, h) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK_FALSE(d.symmetric);
}

TEST_CASE("sine profile: clamped floor at the bottom face, 0.5 center, 1 top") {
    auto d = make_distribution("sine");
    const double h = 0.1;
    CHECK(d.eval(-h / 2, h) == ALPHA_FLOOR);
    CHECK(d.eval(0.0, h) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.eval(+h / 2, h) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reconstructed family ranges and shapes") {
    const double h = 0.2;
    auto parab = make_distribution("parabolic");
    CHECK(parab.eval(0.0, h) == doctest::Approx(0.3));
    CHECK(parab.eval(h / 2, h) == doctest::Approx(0.9));
    auto cosine = make_distribution("cosine");
    CHECK(cosine.eval(0.0, h) == doctest::Approx(0.9));   // largest at y = 0
    CHECK(cosine.eval(h / 2, h) == doctest::Approx(0.54));
    auto ell = make_distribution("ellipse");
    CHECK(ell.eval(0.0, h) == doctest::Approx(0.95));
    CHECK(ell.eval(h / 2, h) == doctest::Approx(0.55));
    auto cubic = make_distribution("cubic");
    CHECK(cubic.eval(-h / 2, h) == doctest::Approx(0.3));
    CHECK(cubic.eval(h / 2, h) == doctest::Approx(0.9));

    // ellipse dominates uniform-0.5 everywhere (paper's ordering constraint)
    auto u5 = make_distribution("uniform-0.5");
    for (int k = 0; k <= 100; ++k) {
        double y = -h / 2 + h * k / 100.0;
        CHECK(ell.eval(y, h) > u5.eval(y, h));
    }
}

TEST_CASE("symmetric families are bitwise even in y") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    const double h = 0.13;
    for (const char* name : {"uniform-0.5", "parabolic", "cosine", "ellipse", "uniform-0.8"}) {
        auto d = make_distribution(name);
        REQUIRE(d.symmetric);
        for (int k = 0; k < 100; ++k) {
            double y = u(rng) * h;
            CHECK(d.eval(y, h) == d.eval(-y, h));
        }
    }
}

TEST_CASE("all families stay within [0.01, 1] on a fine sweep") {
    const double h = 0.1;
    for (const auto& name : table2_distributions()) {
        auto d = make_distribution(name);
        for (int k = 0; k <= 10000; ++k) {
            double y = -h / 2 + h * k / 10000.0;
            double a = d.eval(y, h);
            CHECK(a >= ALPHA_FLOOR);
            CHECK(a <= 1.0);
        }
    }
}

TEST_CASE("to_physical shifts the evaluation point") {
    auto lin = make_distribution("linear");
    const double h = 0.1, hc = 0.0075;
    CHECK(lin.to_physical(0.0, h, hc) == doctest::Approx(0.645).epsilon(1e-14));
    CHECK(lin.to_physical(-hc, h, hc) == lin.eval(0.0, h));
    auto uni = make_distribution("uniform-0.8");
    for (double yt : {-0.04, 0.0, 0.04})
        CHECK(uni.to_physical(yt, h, 0.004) == 0.8);
    CHECK_THROWS_AS(lin.to_physical(0.05, h, 0.01), DomainError);
}

TEST_CASE("domain and parameter validation") {
    auto d = make_distribution("uniform");
    CHECK_THROWS_AS(d.eval(0.06, 0.1), DomainError);
    CHECK_THROWS_AS(make_distribution("spline"), DomainError);
    CHECK_THROWS_AS(make_distribution("uniform", {{"alpha", 1.5}}), DomainError);
    CHECK_THROWS_AS(make_distribution("linear", {{"bogus", 1.0}}), DomainError);
    // overrides apply
    auto dd = make_distribution("parabolic", {{"p0", 0.4}, {"p1", 2.0}});
    CHECK(dd.eval(0.0, 0.1) == doctest::Approx(0.4));
}
