#pragma once

#include <array>
#include <string>
#include <vector>

namespace zerohopf {

enum class OrbitCount { Zero = 0, One = 1, Two = 2, Three = 3, Degenerate = -1 };

// An averaged zero (r, w) with r > 0.
struct RootRW {
    double r = 0.0;
    double w = 0.0;
};

struct OrbitPrediction {
    std::vector<RootRW> roots;
    std::vector<double> jac_dets; // one per root
    OrbitCount count = OrbitCount::Zero;
    std::string degenerate_reason; // set iff count == Degenerate
};

// Sign quantities driving the case analysis.
struct CaseQuantities {
    double q_plus = 0.0;  // (a2 delta^2 + 2 b2) / (3 - delta^2)
    double q_minus = 0.0; // (a2 delta^2 - b2) / (3 - delta^2)
    double w_factor = 0.0; // 2 a2 delta^2 - b2, five times w^2 on the off-axis family
};

inline constexpr double kDegeneracyTol = 1e-10;

[[nodiscard]] std::array<double, 2> f_closed(double r, double w, double a1, double b1, double delta) noexcept;

[[nodiscard]] std::array<double, 2> g_closed(double r, double w, double a2, double b2, double delta) noexcept;

// Jacobian determinant of g_closed from its analytic partial derivatives.
[[nodiscard]] double g_closed_jacobian_det(double r, double w, double a2, double b2, double delta) noexcept;

[[nodiscard]] OrbitPrediction predicted_roots(double a2, double b2, double delta);

// Non-empty reason when (a2, b2, delta) sits on a degenerate set: delta^2 = 3,
// 2 a2 delta^2 = b2, or a collapsing root family (a2 delta^2 = b2, a2 delta^2 = -2 b2).
[[nodiscard]] std::string degeneracy(double a2, double b2, double delta);

[[nodiscard]] CaseQuantities case_quantities(double a2, double b2, double delta);

// Quadrant of (Q+, Q-) exactly as tabulated for the zero-Hopf theorem:
// Three (Q+ < 0, Q- > 0), Two (Q+ < 0, Q- < 0), One (Q+ > 0, Q- > 0), Zero otherwise.
// Throws HypothesisViolated on degenerate inputs.
[[nodiscard]] OrbitCount theorem_region(double a2, double b2, double delta);

// Number of periodic orbits: the quadrant table refined by the requirement
// 2 a2 delta^2 - b2 > 0 for the off-axis pair to be real.
// Throws HypothesisViolated on degenerate inputs.
[[nodiscard]] OrbitCount classify(double a2, double b2, double delta);

[[nodiscard]] const char* to_string(OrbitCount c) noexcept;

} // namespace zerohopf
