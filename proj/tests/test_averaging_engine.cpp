#include "oracles.hpp"
#include "zerohopf/averaging_engine.hpp"
#include "zerohopf/closed_form.hpp"
#include "zerohopf/errors.hpp"
#include "zerohopf/normal_form.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace zerohopf;
using std::numbers::pi;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

StandardFormSystem make_system(int dim, StandardFormSystem::Field F1, StandardFormSystem::Field F2) {
    StandardFormSystem s;
    s.dim = dim;
    s.period = 2 * pi;
    s.F1 = std::move(F1);
    s.F2 = std::move(F2);
    return s;
}

UnfoldingParams random_unfolding(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    std::uniform_real_distribution<double> d(0.5, 3.0);
    return {c(rng), c(rng), c(rng), c(rng), c(rng), c(rng), d(rng)};
}

// Nonlinear two-dimensional test system with a non-zero mean in F1.
StandardFormSystem wobble() {
    return make_system(
        2,
        [](const Vec& z, double t) {
            return vec2(z[0] * z[1] * std::cos(t) + 0.3 * z[1], std::sin(2 * t) * z[0] * z[0] - 0.2 * z[0]);
        },
        [](const Vec& z, double t) { return vec2(std::cos(t) * z[1], 0.5 + std::sin(t) * z[0]); });
}

} // namespace

TEST_CASE("first-order average examples") {
    const auto sys = make_system(
        2, [](const Vec& z, double t) { return vec2(z[1] * std::cos(t) * std::cos(t), z[0]); },
        [](const Vec& z, double) { return Vec::Zero(z.size()).eval(); });
    const Averaged f = average_first(sys, vec2(3.0, -2.0), {});
    CHECK(std::abs(f.value[0] + 1.0) < 1e-13);
    CHECK(std::abs(f.value[1] - 3.0) < 1e-13);
    CHECK(f.error_estimate < 1e-12);
    CHECK_FALSE(f.accuracy_warning);
}

TEST_CASE("second-order average picks up the secular inner integral") {
    // F1 = z (1 + cos t): inner integral z (s + sin s), g = pi z
    const auto sys = make_system(
        1, [](const Vec& z, double t) { return Vec::Constant(1, z[0] * (1 + std::cos(t))).eval(); },
        [](const Vec& z, double) { return Vec::Zero(z.size()).eval(); });
    for (double z : {-1.5, 0.25, 2.0}) {
        const Averaged g = average_second(sys, Vec::Constant(1, z), {});
        CHECK(g.value[0] == doctest::Approx(pi * z).epsilon(1e-10));
    }
}

TEST_CASE("second-order average matches the brute-force nested oracle") {
    const auto sys = wobble();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> x(-2, 2);
    for (int k = 0; k < 5; ++k) {
        const Vec z = vec2(x(rng), x(rng));
        const Vec ref = oracle::nested_second_average(sys.F1, sys.F2, z, sys.period);
        const Averaged g = average_second(sys, z, {});
        CHECK((g.value - ref).lpNorm<Eigen::Infinity>() < 1e-8);
    }

    for (int k = 0; k < 5; ++k) {
        const StandardFormSystem jerk = jerk_standard_form(random_unfolding(rng));
        const Vec z = vec2(0.5 + std::abs(x(rng)), x(rng));
        const Vec ref = oracle::nested_second_average(jerk.F1, jerk.F2, z, jerk.period);
        const Averaged g = average_second(jerk, z, {});
        CHECK((g.value - ref).lpNorm<Eigen::Infinity>() < 1e-8);
    }
}

TEST_CASE("finite-difference fallback agrees with the analytic Jacobian") {
    std::mt19937_64 rng(12);
    StandardFormSystem with = jerk_standard_form(random_unfolding(rng));
    StandardFormSystem without = with;
    without.dF1.reset();
    const Vec z = vec2(1.3, -0.4);
    CHECK((average_second(with, z, {}).value - average_second(without, z, {}).value).norm() < 1e-7);
}

TEST_CASE("Gauss-Legendre and Simpson agree") {
    std::mt19937_64 rng(13);
    const StandardFormSystem sys = jerk_standard_form(random_unfolding(rng));
    const QuadratureSpec simpson{128, 128, QuadratureRule::Simpson};
    for (const Vec& z : {vec2(1.0, 0.0), vec2(2.5, -1.0), vec2(0.7, 0.9)}) {
        CHECK((average_first(sys, z, {}).value - average_first(sys, z, simpson).value).norm() < 1e-8);
        CHECK((average_second(sys, z, {}).value - average_second(sys, z, simpson).value).norm() < 1e-8);
    }
}

TEST_CASE("unresolved oscillation is reported") {
    const auto sys = make_system(
        2, [](const Vec& z, double) { return Vec::Zero(z.size()).eval(); },
        [](const Vec& z, double t) { return vec2(std::pow(std::cos(30 * t), 2) * (1 + z[0]), 0.0); });
    CHECK_THROWS_AS((void)average_second(sys, vec2(1, 1), {16, 16, QuadratureRule::GaussLegendre}),
                    QuadratureNotConverged);
    CHECK_THROWS_AS((void)average_second(sys, vec2(1, 1), {15, 64, QuadratureRule::GaussLegendre}),
                    std::invalid_argument);
}

TEST_CASE("averaged function combines both orders") {
    const auto sys = wobble();
    const Vec z = vec2(0.4, -0.8);
    const double eps = 0.03;
    const Vec expect = average_first(sys, z, {}).value + eps * average_second(sys, z, {}).value;
    CHECK((averaged_function(sys, z, eps, {}) - expect).norm() < 1e-15);
}

TEST_CASE("jerk averages agree with the closed forms") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> x(-2, 2);
    for (int k = 0; k < 5; ++k) {
        UnfoldingParams u = random_unfolding(rng);
        const StandardFormSystem sys = jerk_standard_form(u);
        const double r = 0.5 + std::abs(x(rng)), w = x(rng);
        const auto f = f_closed(r, w, u.a1, u.b1, u.delta);
        const Vec fa = average_first(sys, vec2(r, w), {}).value;
        CHECK(std::abs(fa[0] - f[0]) < 1e-12);
        CHECK(std::abs(fa[1] - f[1]) < 1e-12);

        u.a1 = u.b1 = 0; // g only has the closed form when f vanishes
        const StandardFormSystem s0 = jerk_standard_form(u);
        const auto g = g_closed(r, w, u.a2, u.b2, u.delta);
        const Vec ga = average_second(s0, vec2(r, w), {}).value;
        CHECK(std::abs(ga[0] - g[0]) < 1e-9);
        CHECK(std::abs(ga[1] - g[1]) < 1e-9);
    }
}

TEST_CASE("find_roots on the averaged jerk system") {
    UnfoldingParams u;
    u.a2 = 1;
    u.b2 = 5;
    u.delta = 2;
    const StandardFormSystem sys = jerk_standard_form(u);
    const VectorFunction g = [&](const Vec& z) { return average_second(sys, z, {}).value; };
    RootSearchOptions opt;
    opt.grid = {20, 20};
    const auto roots = find_roots(g, {vec2(0.5, -2), vec2(8, 2)}, opt);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0].z[0] - 4.0) < 1e-8);
    CHECK(std::abs(roots[0].z[1]) < 1e-8);
    CHECK(std::abs(roots[1].z[0] - std::sqrt(44.8)) < 1e-8);
    CHECK(std::abs(roots[2].z[0] - std::sqrt(44.8)) < 1e-8);
    CHECK(std::abs(std::abs(roots[1].z[1]) - std::sqrt(0.6)) < 1e-8);
    CHECK(std::abs(roots[1].z[1] + roots[2].z[1]) < 1e-8);
    CHECK(roots[0].jac_det == doctest::Approx(3.0 / 64).epsilon(1e-6));
    CHECK(roots[1].jac_det == doctest::Approx(-21.0 / 80).epsilon(1e-6));
    CHECK(roots[0].degree_sign == DegreeSign::Plus);
    CHECK(roots[2].degree_sign == DegreeSign::Minus);
    for (const auto& r : roots) CHECK(r.residual < 1e-10);

    // with b1 - a1 delta^2 != 0 the first-order average has no zero in r > 0
    UnfoldingParams v = u;
    v.b1 = 1;
    const StandardFormSystem s1 = jerk_standard_form(v);
    const VectorFunction f = [&](const Vec& z) { return average_first(s1, z, {}).value; };
    opt.grid = {10, 10};
    CHECK(find_roots(f, {vec2(0.5, -2), vec2(8, 2)}, opt).empty());
}

TEST_CASE("find_roots: degree signs and degeneracy") {
    const VectorFunction id = [](const Vec& z) { return z; };
    auto r = find_roots(id, {vec2(-1, -1), vec2(1, 1)});
    REQUIRE(r.size() == 1);
    CHECK(r[0].degree_sign == DegreeSign::Plus);
    CHECK(r[0].z.norm() < 1e-12);

    const VectorFunction flat = [](const Vec& z) { return vec2(z[0] * z[1], z[0] - z[1]); };
    r = find_roots(flat, {vec2(-1, -1), vec2(1, 1)});
    REQUIRE(r.size() == 1);
    CHECK(r[0].degree_sign == DegreeSign::Degenerate);

    // negating a field multiplies every determinant by (-1)^n
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> x(-1, 1);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 2;
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = x(rng) + (i == j ? 2.0 : 0.0);
        Vec c(n);
        for (int i = 0; i < n; ++i) c[i] = 0.5 * x(rng);
        const VectorFunction fun = [=](const Vec& z) {
            Vec out = A * (z - c);
            out[0] += 0.2 * (z - c).squaredNorm();
            return out;
        };
        const VectorFunction neg = [=](const Vec& z) { return Vec(-fun(z)); };
        RootSearchOptions opt;
        opt.grid = std::vector<int>(n, 8);
        const Box box{Vec::Constant(n, -1), Vec::Constant(n, 1)};
        const auto a = find_roots(fun, box, opt);
        const auto b = find_roots(neg, box, opt);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK((a[i].z - b[i].z).norm() < 1e-9);
            CHECK(b[i].jac_det == doctest::Approx((n % 2 ? -1 : 1) * a[i].jac_det).epsilon(1e-6));
            CHECK(a[i].residual < 1e-10);
            for (int j = 0; j < n; ++j) {
                CHECK(a[i].z[j] >= -1.0);
                CHECK(a[i].z[j] <= 1.0);
            }
        }
        bool found_c = false;
        for (const auto& root : a) found_c = found_c || (root.z - c).norm() < 1e-9;
        CHECK(found_c);
    }
}

TEST_CASE("fd_jacobian") {
    const VectorFunction fun = [](const Vec& z) { return vec2(std::sin(z[0]) * z[1], z[0] * z[0] + 3 * z[1]); };
    const Mat J = fd_jacobian(fun, vec2(0.3, 2.0));
    CHECK(J(0, 0) == doctest::Approx(std::cos(0.3) * 2.0).epsilon(1e-8));
    CHECK(J(0, 1) == doctest::Approx(std::sin(0.3)).epsilon(1e-8));
    CHECK(J(1, 0) == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(J(1, 1) == doctest::Approx(3.0).epsilon(1e-8));
}
