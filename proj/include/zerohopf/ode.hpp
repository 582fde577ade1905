#pragma once

#include "zerohopf/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace zerohopf {

enum class IntegratorMethod { RK4Fixed, RK45Adaptive };

struct IntegratorSpec {
    IntegratorMethod method = IntegratorMethod::RK45Adaptive;
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    double max_step = 0.05; // also the fixed step of RK4Fixed
    long max_steps = 2'000'000;

    friend bool operator==(const IntegratorSpec&, const IntegratorSpec&) = default;
};

void validate(const IntegratorSpec& spec);
[[nodiscard]] const char* to_string(IntegratorMethod m) noexcept;
[[nodiscard]] IntegratorMethod integrator_method_from_string(const std::string& name);

namespace ode {

template <int N>
using State = Eigen::Matrix<double, N, 1>;

// Dormand-Prince 5(4) tableau.
namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace dp

// One Dormand-Prince step of size h. `k1` is f(t, y). Writes the embedded error
// estimate to `err` when given.
template <int N, class Rhs>
State<N> dp_step(Rhs& f, double t, const State<N>& y, const State<N>& k1, double h, State<N>* err) {
    using namespace dp;
    const State<N> k2 = f(t + c2 * h, (y + h * a21 * k1).eval());
    const State<N> k3 = f(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const State<N> k4 = f(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State<N> k5 = f(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State<N> k6 = f(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    const State<N> next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (err) {
        const State<N> k7 = f(t + h, next);
        *err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    }
    return next;
}

template <int N, class Rhs>
State<N> rk4_step(Rhs& f, double t, const State<N>& y, const State<N>& k1, double h) {
    const State<N> k2 = f(t + 0.5 * h, (y + 0.5 * h * k1).eval());
    const State<N> k3 = f(t + 0.5 * h, (y + 0.5 * h * k2).eval());
    const State<N> k4 = f(t + h, (y + h * k3).eval());
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Single step of the configured method, with no error control. Used to land
// exactly on event times inside an accepted step.
template <int N, class Rhs>
State<N> plain_step(Rhs& f, const IntegratorSpec& spec, double t, const State<N>& y, const State<N>& k1,
                    double h) {
    if (spec.method == IntegratorMethod::RK4Fixed) return rk4_step<N>(f, t, y, k1, h);
    return dp_step<N>(f, t, y, k1, h, nullptr);
}

// Adaptive (or fixed-step) driver. `observer(t, y, dydt)` sees every accepted
// point including the initial one; returning true from `stop(t_prev, y_prev,
// k_prev, h, t, y)` ends the integration after that step.
template <int N, class Rhs, class Stop, class Observer>
void drive(Rhs& f, double t0, const State<N>& y0, double t_end, const IntegratorSpec& spec, Stop&& stop,
           Observer&& observer) {
    double t = t0;
    State<N> y = y0;
    State<N> k = f(t, y);
    observer(t, y, k);
    double h = std::min(spec.max_step, 1e-3);
    long steps = 0;
    while (t < t_end) {
        if (++steps > spec.max_steps) throw StepLimitExceeded("integration exceeded max_steps");
        const bool fixed = spec.method == IntegratorMethod::RK4Fixed;
        if (fixed) h = spec.max_step;
        const bool last = t + h >= t_end;
        const double step = last ? t_end - t : h;

        State<N> next;
        if (fixed) {
            next = rk4_step<N>(f, t, y, k, step);
        } else {
            State<N> err;
            next = dp_step<N>(f, t, y, k, step, &err);
            double acc = 0.0;
            for (int i = 0; i < N; ++i) {
                const double sc = spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(next[i]));
                acc += (err[i] / sc) * (err[i] / sc);
            }
            const double e = std::sqrt(acc / N);
            const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
            if (!std::isfinite(e) || e > 1.0) {
                h = step * std::min(factor, 0.5);
                if (!std::isfinite(h) || h < 1e-14 * std::max(1.0, std::abs(t))) {
                    throw StepUnderflow("step size underflow at t = " + std::to_string(t));
                }
                continue;
            }
            h = std::min(step * factor, spec.max_step);
            if (last) h = std::max(h, step);
        }
        const double t_prev = t;
        const State<N> y_prev = y;
        const State<N> k_prev = k;
        t = last ? t_end : t + step;
        y = next;
        k = f(t, y);
        observer(t, y, k);
        if (stop(t_prev, y_prev, k_prev, step, t, y)) return;
    }
}

// First crossing of component `index` through zero with the given direction
// (-1: positive to non-positive, +1: negative to non-negative) for which
// `accept(y)` holds. The crossing is refined by re-stepping from the start of
// the bracketing step with a single step of variable size until |y[index]| < tol.
template <int N>
struct Crossing {
    double t = 0.0;
    State<N> y;
};

template <int N, class Rhs, class Accept>
std::optional<Crossing<N>> first_crossing(Rhs& f, const State<N>& y0, double t_max, const IntegratorSpec& spec,
                                          int index, int direction, Accept&& accept, double tol = 1e-12) {
    std::optional<Crossing<N>> hit;
    auto sign_ok = [&](double before, double after) {
        return direction < 0 ? (before > 0.0 && after <= 0.0) : (before < 0.0 && after >= 0.0);
    };
    auto stop = [&](double t0, const State<N>& ya, const State<N>& ka, double h, double, const State<N>& yb) {
        if (!sign_ok(ya[index], yb[index])) return false;
        // Illinois false position on tau in [0, h].
        double lo = 0.0, hi = h;
        double g_lo = ya[index], g_hi = yb[index];
        State<N> y_at = yb;
        double tau = h;
        int side = 0;
        for (int it = 0; it < 200; ++it) {
            tau = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
            if (!(tau > lo && tau < hi)) tau = 0.5 * (lo + hi);
            y_at = plain_step<N>(f, spec, t0, ya, ka, tau);
            const double g = y_at[index];
            if (std::abs(g) < tol || hi - lo < 1e-15 * std::max(1.0, std::abs(t0))) break;
            if ((g > 0.0) == (g_lo > 0.0)) {
                lo = tau;
                g_lo = g;
                if (side == -1) g_hi *= 0.5;
                side = -1;
            } else {
                hi = tau;
                g_hi = g;
                if (side == 1) g_lo *= 0.5;
                side = 1;
            }
        }
        if (!accept(y_at)) return false;
        hit = Crossing<N>{t0 + tau, y_at};
        return true;
    };
    drive<N>(f, 0.0, y0, t_max, spec, stop, [](double, const State<N>&, const State<N>&) {});
    return hit;
}

} // namespace ode
} // namespace zerohopf
