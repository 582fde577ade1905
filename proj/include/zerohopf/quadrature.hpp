#pragma once

#include <string_view>
#include <vector>

namespace zerohopf {

enum class QuadratureRule { GaussLegendre, Simpson };

struct QuadratureSpec {
    int nodes = 64;       // outer rule size N
    int inner_nodes = 64; // samples M used for the cumulative inner integral
    QuadratureRule rule = QuadratureRule::GaussLegendre;

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

void validate(const QuadratureSpec& q);

struct QuadratureNodes {
    std::vector<double> points;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [a, b].
[[nodiscard]] QuadratureNodes gauss_legendre(int n, double a, double b);

// Composite Simpson with `intervals` subintervals (rounded up to even) on [a, b].
[[nodiscard]] QuadratureNodes composite_simpson(int intervals, double a, double b);

[[nodiscard]] QuadratureNodes make_rule(QuadratureRule rule, int n, double a, double b);

[[nodiscard]] const char* to_string(QuadratureRule rule) noexcept;
[[nodiscard]] QuadratureRule quadrature_rule_from_string(std::string_view name);

} // namespace zerohopf
