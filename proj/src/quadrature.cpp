#include "zerohopf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zerohopf {

void validate(const QuadratureSpec& q) {
    if (q.nodes < 16 || q.inner_nodes < 16) {
        throw std::invalid_argument("quadrature needs at least 16 outer and 16 inner nodes");
    }
}

QuadratureNodes gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureNodes rule;
    rule.points.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points[i] = mid - half * x;
        rule.points[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

QuadratureNodes composite_simpson(int intervals, double a, double b) {
    if (intervals < 2) throw std::invalid_argument("composite_simpson: need at least 2 intervals");
    if (intervals % 2 != 0) ++intervals;
    QuadratureNodes rule;
    const double h = (b - a) / intervals;
    rule.points.resize(intervals + 1);
    rule.weights.resize(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        rule.points[i] = a + i * h;
        const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        rule.weights[i] = c * h / 3.0;
    }
    return rule;
}

QuadratureNodes make_rule(QuadratureRule rule, int n, double a, double b) {
    return rule == QuadratureRule::GaussLegendre ? gauss_legendre(n, a, b) : composite_simpson(n, a, b);
}

const char* to_string(QuadratureRule rule) noexcept {
    return rule == QuadratureRule::GaussLegendre ? "gauss_legendre" : "simpson";
}

QuadratureRule quadrature_rule_from_string(std::string_view name) {
    if (name == "gauss_legendre") return QuadratureRule::GaussLegendre;
    if (name == "simpson") return QuadratureRule::Simpson;
    throw std::invalid_argument("unknown quadrature rule '" + std::string(name) + "'");
}

} // namespace zerohopf
