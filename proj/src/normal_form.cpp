#include "zerohopf/normal_form.hpp"

#include "zerohopf/errors.hpp"

#include <cmath>
#include <numbers>

namespace zerohopf {

void validate(const UnfoldingParams& u) {
    for (double v : {u.a1, u.a2, u.b1, u.b2, u.c1, u.c2, u.delta}) {
        if (!std::isfinite(v)) throw std::invalid_argument("unfolding parameters must be finite");
    }
    if (!(u.delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

SystemParams unfold(const UnfoldingParams& u, double eps) noexcept {
    const double e2 = eps * eps;
    return {eps * u.a1 + e2 * u.a2, eps * u.b1 + e2 * u.b2, -u.delta * u.delta + eps * u.c1 + e2 * u.c2};
}

State3 scale_state(const State3& s, double eps) {
    if (std::abs(eps) < 1e-300) throw DegenerateEpsilon("scale_state: eps is zero");
    return {s.x / eps, s.y / eps, s.z / eps};
}

State3 unscale_state(const State3& S, double eps) noexcept { return {eps * S.x, eps * S.y, eps * S.z}; }

State3 jordan_to_xyz(const JordanState& j, double delta) noexcept {
    return {j.w + j.v / delta, j.u, -delta * j.v};
}

JordanState xyz_to_jordan(const State3& S, double delta) noexcept {
    return {S.y, -S.z / delta, S.x + S.z / (delta * delta)};
}

JordanState cyl_to_jordan(const CylState& c) noexcept {
    return {c.r * std::cos(c.theta), c.r * std::sin(c.theta), c.w};
}

double h1(const JordanState& j, const UnfoldingParams& p) noexcept {
    const double d = p.delta;
    const double d2 = d * d;
    return p.b1 * j.v / (d2 * d) - (p.c1 * j.u - p.b1 * j.w) / d2 - p.a1 * j.v / d;
}

double h2(const JordanState& j, const UnfoldingParams& p) noexcept {
    const double d = p.delta;
    const double d2 = d * d;
    const double d3 = d2 * d;
    const auto [u, v, w] = j;
    return v * v * v / (d3 * d2) + 3.0 * v * v * w / (d2 * d2) + (p.b2 - u * u + 3.0 * w * w) * v / d3 -
           (p.c2 * u + (u * u - p.b2) * w - w * w * w) / d2 - p.a2 * v / d;
}

State3 scaled_field(const UnfoldingParams& u, double eps, const State3& S) noexcept {
    const auto [X, Y, Z] = S;
    const double first = -u.a1 * Z - u.b1 * X + u.c1 * Y;
    const double second = -u.a2 * Z - u.b2 * X + u.c2 * Y + X * Y * Y - X * X * X;
    return {Y, Z, -u.delta * u.delta * Y + eps * first + eps * eps * second};
}

JordanState jordan_field(const UnfoldingParams& u, double eps, const JordanState& j) noexcept {
    const double h = h1(j, u) + eps * h2(j, u);
    return {-u.delta * j.v, u.delta * j.u + eps * u.delta * h, -eps * h};
}

CylRates cylindrical_field(const UnfoldingParams& u, double eps, const CylState& c) {
    if (!(c.r > 0.0)) throw SingularDenominator("cylindrical_field: r must be positive");
    const JordanState j = cyl_to_jordan(c);
    const double h = h1(j, u) + eps * h2(j, u);
    return {u.delta + eps * u.delta * std::cos(c.theta) * h / c.r, eps * u.delta * std::sin(c.theta) * h,
            -eps * h};
}

ThetaRates theta_rhs(const CylState& c, const UnfoldingParams& u, double eps) {
    const JordanState j = cyl_to_jordan(c);
    const double h = h1(j, u) + eps * h2(j, u);
    const double denom = c.r + eps * std::cos(c.theta) * h;
    if (std::abs(denom) < 1e-12) throw SingularDenominator("theta_rhs: r + eps cos(theta) H vanishes");
    const double ratio = eps * h * c.r / denom;
    return {ratio * std::sin(c.theta), -ratio / u.delta};
}

ThetaRates theta_rhs_truncated(const CylState& c, const UnfoldingParams& u, double eps) {
    const StandardFormSystem sys = jerk_standard_form(u);
    Vec z(2);
    z << c.r, c.w;
    const Vec rhs = eps * sys.F1(z, c.theta) + eps * eps * sys.F2(z, c.theta);
    return {rhs[0], rhs[1]};
}

StandardFormSystem jerk_standard_form(const UnfoldingParams& u) {
    validate(u);
    StandardFormSystem sys;
    sys.dim = 2;
    sys.period = 2.0 * std::numbers::pi;

    sys.F1 = [u](const Vec& z, double theta) {
        const double s = std::sin(theta);
        const double h = h1(cyl_to_jordan({z[0], theta, z[1]}), u);
        Vec out(2);
        out << h * s, -h / u.delta;
        return out;
    };

    sys.F2 = [u](const Vec& z, double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double r = z[0];
        const JordanState j = cyl_to_jordan({r, theta, z[1]});
        const double first = h1(j, u);
        const double k = (h2(j, u) * r - first * first * c) / r;
        Vec out(2);
        out << k * s, -k / u.delta;
        return out;
    };

    // h1 is linear in (u, v, w), so D_z F1 = (sin, -1/delta)^T grad_{(r,w)} h1.
    sys.dF1 = [u](const Vec&, double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double d = u.delta;
        const double dh_dr = (u.b1 / (d * d * d) - u.a1 / d) * s - u.c1 * c / (d * d);
        const double dh_dw = u.b1 / (d * d);
        Mat out(2, 2);
        out << s * dh_dr, s * dh_dw, -dh_dr / d, -dh_dw / d;
        return out;
    };
    return sys;
}

} // namespace zerohopf
