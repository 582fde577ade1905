#include "zerohopf/closed_form.hpp"

#include "zerohopf/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace zerohopf {

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
}

OrbitCount from_int(int n) {
    switch (n) {
    case 0: return OrbitCount::Zero;
    case 1: return OrbitCount::One;
    case 2: return OrbitCount::Two;
    case 3: return OrbitCount::Three;
    default: return OrbitCount::Degenerate;
    }
}

} // namespace

std::array<double, 2> f_closed(double r, double w, double a1, double b1, double delta) noexcept {
    const double d3 = delta * delta * delta;
    return {r * (b1 - a1 * delta * delta) / (2.0 * d3), -b1 * w / d3};
}

std::array<double, 2> g_closed(double r, double w, double a2, double b2, double delta) noexcept {
    const double d2 = delta * delta;
    const double scale = 1.0 / (2.0 * d2 * d2 * delta);
    const double g1 = r * ((3.0 - d2) * r * r + 4.0 * b2 * d2 - 4.0 * a2 * d2 * d2 + 12.0 * d2 * w * w) / 4.0;
    const double g2 = -w * ((3.0 - d2) * r * r + 2.0 * b2 * d2 + 2.0 * d2 * w * w);
    return {scale * g1, scale * g2};
}

double g_closed_jacobian_det(double r, double w, double a2, double b2, double delta) noexcept {
    const double d2 = delta * delta;
    const double scale = 1.0 / (2.0 * d2 * d2 * delta);
    const double k = 3.0 - d2;
    const double g1_r = (3.0 * k * r * r + 4.0 * b2 * d2 - 4.0 * a2 * d2 * d2 + 12.0 * d2 * w * w) / 4.0;
    const double g1_w = 6.0 * d2 * r * w;
    const double g2_r = -2.0 * k * r * w;
    const double g2_w = -(k * r * r + 2.0 * b2 * d2 + 6.0 * d2 * w * w);
    return scale * scale * (g1_r * g2_w - g1_w * g2_r);
}

std::string degeneracy(double a2, double b2, double delta) {
    require_delta(delta);
    const double d2 = delta * delta;
    if (std::abs(3.0 - d2) < kDegeneracyTol) return "delta^2 = 3: averaged zeros are not isolated";
    if (std::abs(2.0 * a2 * d2 - b2) < kDegeneracyTol) return "2 a2 delta^2 = b2: Jacobian determinant vanishes";
    if (std::abs(a2 * d2 - b2) < kDegeneracyTol) return "a2 delta^2 = b2: on-axis root collapses to r = 0";
    if (std::abs(a2 * d2 + 2.0 * b2) < kDegeneracyTol) {
        return "a2 delta^2 = -2 b2: off-axis roots collapse to r = 0";
    }
    return {};
}

OrbitPrediction predicted_roots(double a2, double b2, double delta) {
    OrbitPrediction out;
    out.degenerate_reason = degeneracy(a2, b2, delta);
    if (!out.degenerate_reason.empty()) {
        out.count = OrbitCount::Degenerate;
        return out;
    }
    const double d2 = delta * delta;
    const double d6 = d2 * d2 * d2;
    const double k = 3.0 - d2;

    const double r1_sq = 4.0 * (a2 * d2 - b2) * d2 / k;
    if (r1_sq > 0.0) {
        out.roots.push_back({std::sqrt(r1_sq), 0.0});
        out.jac_dets.push_back(-(a2 * d2 - b2) * (2.0 * a2 * d2 - b2) / d6);
    }

    const double r2_sq = -4.0 * (a2 * d2 + 2.0 * b2) * d2 / (5.0 * k);
    const double w2_sq = (2.0 * a2 * d2 - b2) / 5.0;
    if (r2_sq > 0.0 && w2_sq > 0.0) {
        const double r2 = std::sqrt(r2_sq);
        const double w2 = std::sqrt(w2_sq);
        const double det = -2.0 * (a2 * d2 + 2.0 * b2) * (2.0 * a2 * d2 - b2) / (5.0 * d6);
        out.roots.push_back({r2, w2});
        out.roots.push_back({r2, -w2});
        out.jac_dets.push_back(det);
        out.jac_dets.push_back(det);
    }
    out.count = from_int(static_cast<int>(out.roots.size()));
    return out;
}

CaseQuantities case_quantities(double a2, double b2, double delta) {
    require_delta(delta);
    const double d2 = delta * delta;
    return {(a2 * d2 + 2.0 * b2) / (3.0 - d2), (a2 * d2 - b2) / (3.0 - d2), 2.0 * a2 * d2 - b2};
}

OrbitCount theorem_region(double a2, double b2, double delta) {
    if (const std::string why = degeneracy(a2, b2, delta); !why.empty()) throw HypothesisViolated(why);
    const CaseQuantities q = case_quantities(a2, b2, delta);
    if (q.q_plus < 0.0) return q.q_minus > 0.0 ? OrbitCount::Three : OrbitCount::Two;
    return q.q_minus > 0.0 ? OrbitCount::One : OrbitCount::Zero;
}

OrbitCount classify(double a2, double b2, double delta) {
    if (const std::string why = degeneracy(a2, b2, delta); !why.empty()) throw HypothesisViolated(why);
    const CaseQuantities q = case_quantities(a2, b2, delta);
    const int on_axis = q.q_minus > 0.0 ? 1 : 0;
    const int off_axis = (q.q_plus < 0.0 && q.w_factor > 0.0) ? 2 : 0;
    return from_int(on_axis + off_axis);
}

const char* to_string(OrbitCount c) noexcept {
    switch (c) {
    case OrbitCount::Zero: return "Zero";
    case OrbitCount::One: return "One";
    case OrbitCount::Two: return "Two";
    case OrbitCount::Three: return "Three";
    case OrbitCount::Degenerate: return "Degenerate";
    }
    return "unknown";
}

} // namespace zerohopf
