#pragma once

#include "zerohopf/jerk_model.hpp"
#include "zerohopf/standard_form.hpp"

#include <array>

namespace zerohopf {

// (a, b, c) = (eps a1 + eps^2 a2, eps b1 + eps^2 b2, -delta^2 + eps c1 + eps^2 c2)
struct UnfoldingParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double delta = 1.0;

    friend bool operator==(const UnfoldingParams&, const UnfoldingParams&) = default;
};

// Coordinates in which the unperturbed linear part is the real Jordan block
// [[0, -delta, 0], [delta, 0, 0], [0, 0, 0]].
struct JordanState {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};

// u = r cos(theta), v = r sin(theta). theta is kept unwrapped.
struct CylState {
    double r = 0.0;
    double theta = 0.0;
    double w = 0.0;
};

// Rates of the cylindrical system with respect to time.
struct CylRates {
    double theta_dot = 0.0;
    double r_dot = 0.0;
    double w_dot = 0.0;
};

// (dr/dtheta, dw/dtheta)
using ThetaRates = std::array<double, 2>;

void validate(const UnfoldingParams& u);

[[nodiscard]] SystemParams unfold(const UnfoldingParams& u, double eps) noexcept;

// (x, y, z) = eps (X, Y, Z). scale_state maps physical to scaled coordinates.
[[nodiscard]] State3 scale_state(const State3& s, double eps);
[[nodiscard]] State3 unscale_state(const State3& S, double eps) noexcept;

[[nodiscard]] State3 jordan_to_xyz(const JordanState& j, double delta) noexcept;
[[nodiscard]] JordanState xyz_to_jordan(const State3& S, double delta) noexcept;

[[nodiscard]] JordanState cyl_to_jordan(const CylState& c) noexcept;

[[nodiscard]] double h1(const JordanState& j, const UnfoldingParams& u) noexcept;
[[nodiscard]] double h2(const JordanState& j, const UnfoldingParams& u) noexcept;

// The scaled jerk system in (X, Y, Z); identical time scale to the physical system.
[[nodiscard]] State3 scaled_field(const UnfoldingParams& u, double eps, const State3& S) noexcept;

// The same system written in Jordan coordinates:
//   u' = -delta v,  v' = delta u + eps delta (h1 + eps h2),  w' = -eps (h1 + eps h2).
[[nodiscard]] JordanState jordan_field(const UnfoldingParams& u, double eps, const JordanState& j) noexcept;

[[nodiscard]] CylRates cylindrical_field(const UnfoldingParams& u, double eps, const CylState& c);

// Exact quotient form of the angle-parametrized system. Throws SingularDenominator
// when |r + eps cos(theta) (h1 + eps h2)| < 1e-12.
[[nodiscard]] ThetaRates theta_rhs(const CylState& c, const UnfoldingParams& u, double eps);

// eps F1 + eps^2 F2, the second-order truncation of theta_rhs.
[[nodiscard]] ThetaRates theta_rhs_truncated(const CylState& c, const UnfoldingParams& u, double eps);

// z = (r, w), t = theta, T = 2 pi:
//   F1 = h1 (sin, -1/delta),  F2 = (h2 r - h1^2 cos) / r (sin, -1/delta).
[[nodiscard]] StandardFormSystem jerk_standard_form(const UnfoldingParams& u);

} // namespace zerohopf
