#include "zerohopf/quadrature.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

using namespace zerohopf;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
    for (int n : {1, 2, 5, 16, 33, 64}) {
        const QuadratureNodes q = gauss_legendre(n, -1.0, 2.0);
        CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(3.0).epsilon(1e-14));
        const int deg = 2 * n - 1;
        double sum = 0.0;
        for (std::size_t i = 0; i < q.points.size(); ++i) sum += q.weights[i] * std::pow(q.points[i], deg);
        const double exact = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
        for (std::size_t i = 1; i < q.points.size(); ++i) CHECK(q.points[i] > q.points[i - 1]);
    }
}

TEST_CASE("composite Simpson") {
    const QuadratureNodes q = composite_simpson(7, 0.0, 1.0); // rounded up to 8 intervals
    CHECK(q.points.size() == 9);
    double cubic = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i) cubic += q.weights[i] * std::pow(q.points[i], 3);
    CHECK(cubic == doctest::Approx(0.25).epsilon(1e-15));

    // trigonometric polynomials over a full period are integrated exactly
    const QuadratureNodes p = composite_simpson(32, 0.0, 2.0 * std::numbers::pi);
    double trig = 0.0;
    for (std::size_t i = 0; i < p.points.size(); ++i) trig += p.weights[i] * std::pow(std::sin(p.points[i]), 4);
    CHECK(trig == doctest::Approx(0.75 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("quadrature spec validation and names") {
    CHECK_THROWS_AS(validate(QuadratureSpec{8, 64, QuadratureRule::GaussLegendre}), std::invalid_argument);
    CHECK_THROWS_AS(validate(QuadratureSpec{64, 15, QuadratureRule::Simpson}), std::invalid_argument);
    CHECK_NOTHROW(validate(QuadratureSpec{16, 16, QuadratureRule::Simpson}));
    CHECK(quadrature_rule_from_string(to_string(QuadratureRule::Simpson)) == QuadratureRule::Simpson);
    CHECK_THROWS_AS((void)quadrature_rule_from_string("trapezoid"), std::invalid_argument);
}
