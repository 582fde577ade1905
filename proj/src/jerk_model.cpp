#include "zerohopf/jerk_model.hpp"

#include "zerohopf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zerohopf {

State3 vector_field(const SystemParams& p, const State3& s) noexcept {
    const double jerk = -p.a * s.z - p.b * s.x + p.c * s.y + s.x * s.y * s.y - s.x * s.x * s.x;
    return {s.y, s.z, jerk};
}

Matrix3 jacobian_at(const SystemParams& p, const State3& s) noexcept {
    return {{{0.0, 1.0, 0.0},
             {0.0, 0.0, 1.0},
             {-p.b + s.y * s.y - 3.0 * s.x * s.x, p.c + 2.0 * s.x * s.y, -p.a}}};
}

std::vector<State3> equilibria(const SystemParams& p) {
    std::vector<State3> out{State3{}};
    if (p.b < 0.0) {
        const double x = std::sqrt(-p.b);
        out.push_back({x, 0.0, 0.0});
        out.push_back({-x, 0.0, 0.0});
    }
    return out;
}

Cubic char_poly(const SystemParams& p, double x) noexcept {
    return {-1.0, -p.a, p.c, -p.b - 3.0 * x * x};
}

namespace {

using cplx = std::complex<double>;

// One real root of the monic cubic l^3 + A l^2 + B l + C.
double real_root(double A, double B, double C) {
    const double shift = A / 3.0;
    const double p = B - A * A / 3.0;
    const double q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    double t = 0.0;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q - std::copysign(sq, q));
        t = (u != 0.0) ? u - p / (3.0 * u) : 0.0;
    } else if (p < 0.0) {
        // Three real roots; take the one of largest magnitude for a stable deflation.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        double best = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double tk = m * std::cos(phi - 2.0 * M_PI * k / 3.0);
            if (std::abs(tk) > std::abs(best)) best = tk;
        }
        t = best;
    }
    return t - shift;
}

cplx polish(const Cubic& monic, cplx root) {
    auto value = [&](cplx l) { return monic(l); };
    auto slope = [&](cplx l) { return (3.0 * monic.c3 * l + 2.0 * monic.c2) * l + monic.c1; };
    double best = std::abs(value(root));
    for (int it = 0; it < 8 && best > 0.0; ++it) {
        const cplx d = slope(root);
        if (d == cplx{}) break;
        const cplx next = root - value(root) / d;
        const double r = std::abs(value(next));
        if (!(r < best)) break;
        root = next;
        best = r;
    }
    return root;
}

} // namespace

std::array<std::complex<double>, 3> cubic_roots(const Cubic& poly) {
    if (poly.c3 == 0.0 || !std::isfinite(poly.c3)) {
        throw std::invalid_argument("cubic_roots: leading coefficient must be finite and nonzero");
    }
    const Cubic monic{1.0, poly.c2 / poly.c3, poly.c1 / poly.c3, poly.c0 / poly.c3};

    const double r0 = polish(monic, real_root(monic.c2, monic.c1, monic.c0)).real();

    // Synthetic division by (l - r0).
    const double q1 = monic.c2 + r0;
    const double q0 = monic.c1 + r0 * q1;
    const double disc = q1 * q1 - 4.0 * q0;

    std::array<cplx, 3> roots;
    roots[0] = r0;
    if (disc >= 0.0) {
        const double s = -0.5 * (q1 + std::copysign(std::sqrt(disc), q1));
        roots[1] = polish(monic, s);
        roots[2] = polish(monic, s != 0.0 ? q0 / s : 0.0);
    } else {
        const cplx l = polish(monic, cplx{-0.5 * q1, 0.5 * std::sqrt(-disc)});
        roots[1] = l;
        roots[2] = std::conj(l);
    }

    std::sort(roots.begin(), roots.end(), [](const cplx& u, const cplx& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return roots;
}

EquilibriumClass classify_equilibrium(const SystemParams& p, const State3& s, double tol_eig,
                                      double tol_equilibrium) {
    const State3 f = vector_field(p, s);
    const double residual = std::sqrt(f.x * f.x + f.y * f.y + f.z * f.z);
    if (!(residual < tol_equilibrium)) {
        throw NotAnEquilibrium("point is not an equilibrium (residual " + std::to_string(residual) + ")");
    }

    EquilibriumClass out;
    out.point = s;
    out.eigenvalues = cubic_roots(char_poly(p, s.x));

    const auto& ev = out.eigenvalues;
    bool zero_hopf = false;
    for (std::size_t i = 0; i < 3 && !zero_hopf; ++i) {
        if (std::abs(ev[i]) >= tol_eig) continue;
        const cplx& l1 = ev[(i + 1) % 3];
        const cplx& l2 = ev[(i + 2) % 3];
        zero_hopf = std::abs(l1.real()) < tol_eig && std::abs(l2.real()) < tol_eig &&
                    std::abs(l1.imag()) > tol_eig && std::abs(l1 - std::conj(l2)) < tol_eig;
    }
    const bool hyperbolic =
        std::none_of(ev.begin(), ev.end(), [&](const cplx& l) { return std::abs(l.real()) < tol_eig; });

    out.kind = zero_hopf    ? EquilibriumKind::ZeroHopf
               : hyperbolic ? EquilibriumKind::Hyperbolic
                            : EquilibriumKind::OtherNonHyperbolic;
    return out;
}

const char* to_string(EquilibriumKind kind) noexcept {
    switch (kind) {
    case EquilibriumKind::ZeroHopf: return "zero_hopf";
    case EquilibriumKind::Hyperbolic: return "hyperbolic";
    case EquilibriumKind::OtherNonHyperbolic: return "other_non_hyperbolic";
    }
    return "unknown";
}

} // namespace zerohopf
