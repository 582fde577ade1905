#include "zerohopf/errors.hpp"
#include "zerohopf/jerk_model.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

using namespace zerohopf;
using cplx = std::complex<double>;

TEST_CASE("vector_field evaluates the jerk system") {
    CHECK(vector_field({0, 0, -4}, {0, 0, 0}) == State3{0, 0, 0});
    CHECK(vector_field({0, 0, -4}, {1, 0, 0}) == State3{0, 0, -1});
    const State3 v = vector_field({3.6, 1.3, 0.1}, {1, 1, 1});
    CHECK(v.x == 1.0);
    CHECK(v.y == 1.0);
    CHECK(v.z == doctest::Approx(-4.8).epsilon(1e-15));
}

TEST_CASE("jacobian_at") {
    const Matrix3 J0 = jacobian_at({0, 0, -4}, {0, 0, 0});
    CHECK(J0[2] == std::array<double, 3>{0, -4, 0});
    const Matrix3 J = jacobian_at({1, 2, 3}, {1, 1, 0});
    CHECK(J[0] == std::array<double, 3>{0, 1, 0});
    CHECK(J[1] == std::array<double, 3>{0, 0, 1});
    CHECK(J[2] == std::array<double, 3>{-4, 5, -1});

    // finite differences of the field agree with the analytic rows
    const SystemParams p{0.3, -0.7, 1.1};
    const State3 s{0.4, -0.9, 0.2};
    const double h = 1e-6;
    const Matrix3 A = jacobian_at(p, s);
    const State3 dx = vector_field(p, {s.x + h, s.y, s.z}), mx = vector_field(p, {s.x - h, s.y, s.z});
    const State3 dy = vector_field(p, {s.x, s.y + h, s.z}), my = vector_field(p, {s.x, s.y - h, s.z});
    CHECK(A[2][0] == doctest::Approx((dx.z - mx.z) / (2 * h)).epsilon(1e-8));
    CHECK(A[2][1] == doctest::Approx((dy.z - my.z) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("equilibria") {
    CHECK(equilibria({0, 0, -4}) == std::vector<State3>{{0, 0, 0}});
    CHECK(equilibria({0, -1, 0}) == std::vector<State3>{{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}});
    CHECK(equilibria({0, 1, 0}) == std::vector<State3>{{0, 0, 0}});

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> neg(-3.0, -1e-3);
    for (int k = 0; k < 500; ++k) {
        const SystemParams p{u(rng), neg(rng), u(rng)};
        for (const State3& s : equilibria(p)) {
            const State3 f = vector_field(p, s);
            CHECK(std::hypot(f.x, f.y, f.z) < 1e-12);
        }
    }
}

TEST_CASE("char_poly coefficients") {
    const double d2 = 2.25;
    const Cubic p = char_poly({0, 0, -d2}, 0.0);
    CHECK(p.c3 == -1.0);
    CHECK(p.c2 == 0.0);
    CHECK(p.c1 == -d2);
    CHECK(p.c0 == 0.0);

    const Cubic q = char_poly({1, 1, 1}, 0.0);
    CHECK((q.c3 == -1 && q.c2 == -1 && q.c1 == 1 && q.c0 == -1));

    const Cubic r = char_poly({0, -1, 0}, 1.0);
    CHECK((r.c3 == -1 && r.c2 == 0 && r.c1 == 0 && r.c0 == -2));
}

TEST_CASE("cubic_roots on known factorizations") {
    // (l - 1)(l - 2)(l - 3)
    const auto a = cubic_roots({1, -6, 11, -6});
    CHECK(a[0].real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a[1].real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(a[2].real() == doctest::Approx(3.0).epsilon(1e-14));

    // -(l + 1)(l^2 + 4)
    const auto b = cubic_roots({-1, -1, -4, -4});
    CHECK(std::abs(b[0] - cplx(-1, 0)) < 1e-14);
    CHECK(std::abs(b[1] - cplx(0, -2)) < 1e-14);
    CHECK(std::abs(b[2] - cplx(0, 2)) < 1e-14);

    // triple root
    const auto c = cubic_roots({1, -3, 3, -1});
    for (const auto& l : c) CHECK(std::abs(l - 1.0) < 1e-5);

    CHECK_THROWS_AS((void)cubic_roots({0, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("classify_equilibrium examples") {
    const EquilibriumClass zh = classify_equilibrium({0, 0, -4}, {0, 0, 0});
    CHECK(zh.kind == EquilibriumKind::ZeroHopf);
    CHECK(std::abs(zh.eigenvalues[0] - cplx(0, -2)) < 1e-12);
    CHECK(std::abs(zh.eigenvalues[1] - cplx(0, 0)) < 1e-12);
    CHECK(std::abs(zh.eigenvalues[2] - cplx(0, 2)) < 1e-12);

    CHECK(classify_equilibrium({1, 0, -4}, {0, 0, 0}).kind != EquilibriumKind::ZeroHopf);

    const EquilibriumClass saddle = classify_equilibrium({0, 0, 4}, {0, 0, 0});
    CHECK(saddle.kind == EquilibriumKind::OtherNonHyperbolic);
    CHECK(std::abs(saddle.eigenvalues[0] - cplx(-2, 0)) < 1e-12);
    CHECK(std::abs(saddle.eigenvalues[1]) < 1e-12);
    CHECK(std::abs(saddle.eigenvalues[2] - cplx(2, 0)) < 1e-12);

    CHECK(classify_equilibrium({3.6, 1.3, 0.1}, {0, 0, 0}).kind == EquilibriumKind::Hyperbolic);

    CHECK_THROWS_AS((void)classify_equilibrium({0, 0, -4}, {1, 0, 0}), NotAnEquilibrium);
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 1000; ++k) {
        const SystemParams p{u(rng), u(rng), u(rng)};
        for (const State3& s : equilibria(p)) {
            const EquilibriumClass cls = classify_equilibrium(p, s);
            const Cubic poly = char_poly(p, s.x);
            const double scale = 1.0 + std::abs(poly.c2) + std::abs(poly.c1) + std::abs(poly.c0);
            cplx sum = 0.0, prod = 1.0;
            for (const cplx& l : cls.eigenvalues) {
                const double mag = std::max(1.0, std::abs(l));
                CHECK(std::abs(poly(l)) < 1e-9 * scale * mag * mag * mag);
                sum += l;
                prod *= l;
            }
            CHECK(std::abs(sum - (-p.a)) < 1e-9 * scale);
            CHECK(std::abs(prod - (-(p.b + 3 * s.x * s.x))) < 1e-9 * scale);
        }
    }
}

TEST_CASE("zero-Hopf at the origin exactly when a = b = 0 and c < 0") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double tol = kDefaultEigTol;
    for (int k = 0; k < 2000; ++k) {
        SystemParams p{u(rng), u(rng), u(rng)};
        if (k % 4 == 0) p.a = p.b = 0.0;
        if (k % 8 == 1) p.a = 0.0;
        if (k % 8 == 3) p.b = 0.0;
        const bool expected = std::abs(p.a) < tol && std::abs(p.b) < tol && p.c < -tol;
        const bool got = classify_equilibrium(p, {0, 0, 0}).kind == EquilibriumKind::ZeroHopf;
        CHECK(got == expected);
    }
}
