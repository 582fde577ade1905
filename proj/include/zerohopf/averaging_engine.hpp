#pragma once

#include "zerohopf/quadrature.hpp"
#include "zerohopf/standard_form.hpp"

#include <functional>
#include <vector>

namespace zerohopf {

// Result of an averaged-function evaluation. The value is computed with the
// doubled rule (2N, 2M); error_estimate is its max-abs distance to the (N, M) value.
struct Averaged {
    Vec value;
    double error_estimate = 0.0;
    bool accuracy_warning = false; // set when error_estimate > 1e-12
};

// f(z) = (1/T) int_0^T F1(z, s) ds
[[nodiscard]] Averaged average_first(const StandardFormSystem& sys, const Vec& z, const QuadratureSpec& q);

// g(z) = (1/T) int_0^T [ D_z F1(z, s) int_0^s F1(z, t) dt + F2(z, s) ] ds
// Uses sys.dF1 when present, otherwise central finite differences.
[[nodiscard]] Averaged average_second(const StandardFormSystem& sys, const Vec& z, const QuadratureSpec& q);

// f + eps g, the function whose simple zeros give periodic solutions.
[[nodiscard]] Vec averaged_function(const StandardFormSystem& sys, const Vec& z, double eps,
                                    const QuadratureSpec& q);

enum class DegreeSign { Plus, Minus, Degenerate };

struct AveragedRoot {
    Vec z;
    double residual = 0.0;
    double jac_det = 0.0;
    DegreeSign degree_sign = DegreeSign::Degenerate;
};

struct Box {
    Vec lower;
    Vec upper;
};

struct RootSearchOptions {
    std::vector<int> grid;   // cells per axis; empty means 32 on every axis
    double root_tol = 1e-10;
    double det_tol = 1e-8;
    int max_newton = 60;
    int max_halvings = 30;
    double dedupe_radius = 1e-6;
};

using VectorFunction = std::function<Vec(const Vec&)>;

// Central-difference Jacobian with step 1e-6 (1 + |z_i|).
[[nodiscard]] Mat fd_jacobian(const VectorFunction& fun, const Vec& z);

// Scans a grid over `box`, seeds damped Newton in every cell whose corner values
// bracket zero in each component and at every grid-local minimum of ||fun||, and
// returns the distinct converged roots inside the box in lexicographic order.
[[nodiscard]] std::vector<AveragedRoot> find_roots(const VectorFunction& fun, const Box& box,
                                                   const RootSearchOptions& opt = {});

[[nodiscard]] const char* to_string(DegreeSign s) noexcept;

} // namespace zerohopf
