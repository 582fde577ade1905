#include "zerohopf/orbit_locator.hpp"

#include "zerohopf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zerohopf {

void validate(const IntegratorSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(spec.max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
    if (spec.max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

const char* to_string(IntegratorMethod m) noexcept {
    return m == IntegratorMethod::RK4Fixed ? "rk4_fixed" : "rk45_adaptive";
}

IntegratorMethod integrator_method_from_string(const std::string& name) {
    if (name == "rk4_fixed") return IntegratorMethod::RK4Fixed;
    if (name == "rk45_adaptive") return IntegratorMethod::RK45Adaptive;
    throw std::invalid_argument("unknown integrator method '" + name + "'");
}

namespace {

using V3 = ode::State<3>;
using V12 = ode::State<12>;

V3 to_vec(const State3& s) { return V3(s.x, s.y, s.z); }
State3 to_state(const auto& v) { return {v[0], v[1], v[2]}; }

struct JerkRhs {
    SystemParams p;
    V3 operator()(double, const V3& y) const { return to_vec(vector_field(p, to_state(y))); }
};

// State followed by the column-major fundamental matrix.
struct VariationalRhs {
    SystemParams p;
    V12 operator()(double, const V12& y) const {
        const State3 s = to_state(y);
        const Matrix3 J = jacobian_at(p, s);
        V12 out;
        out.head<3>() = to_vec(vector_field(p, s));
        for (int col = 0; col < 3; ++col) {
            for (int row = 0; row < 3; ++row) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) acc += J[row][k] * y[3 + 3 * col + k];
                out[3 + 3 * col + row] = acc;
            }
        }
        return out;
    }
};

const auto never = [](double, const auto&, const auto&, double, double, const auto&) { return false; };

} // namespace

State3 Trajectory::at(double t) const {
    if (points.empty()) throw std::logic_error("empty trajectory");
    if (t <= points.front().t) return points.front().s;
    if (t >= points.back().t) return points.back().s;
    const auto it = std::upper_bound(points.begin(), points.end(), t,
                                     [](double v, const TrajectoryPoint& pt) { return v < pt.t; });
    const TrajectoryPoint& b = *it;
    const TrajectoryPoint& a = *(it - 1);
    const double h = b.t - a.t;
    const double s = (t - a.t) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    auto mix = [&](double ya, double da, double yb, double db) {
        return h00 * ya + h10 * h * da + h01 * yb + h11 * h * db;
    };
    return {mix(a.s.x, a.dsdt.x, b.s.x, b.dsdt.x), mix(a.s.y, a.dsdt.y, b.s.y, b.dsdt.y),
            mix(a.s.z, a.dsdt.z, b.s.z, b.dsdt.z)};
}

Trajectory integrate(const SystemParams& p, const State3& s0, double t_end, const IntegratorSpec& spec) {
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
    validate(spec);
    JerkRhs rhs{p};
    Trajectory out;
    ode::drive<3>(rhs, 0.0, to_vec(s0), t_end, spec, never, [&](double t, const V3& y, const V3& k) {
        out.points.push_back({t, to_state(y), to_state(k)});
    });
    return out;
}

std::vector<State3> sample_flow(const SystemParams& p, const State3& s0, const std::vector<double>& times,
                                const IntegratorSpec& spec) {
    validate(spec);
    JerkRhs rhs{p};
    std::vector<State3> out;
    out.reserve(times.size());
    double t = 0.0;
    V3 y = to_vec(s0);
    for (double target : times) {
        if (target < t) throw std::invalid_argument("sample_flow: times must be increasing and non-negative");
        if (target > t) {
            V3 last = y;
            ode::drive<3>(rhs, t, y, target, spec, never, [&](double, const V3& v, const V3&) { last = v; });
            y = last;
            t = target;
        }
        out.push_back(to_state(y));
    }
    return out;
}

ReturnResult section_crossing(const SystemParams& p, const SectionPoint& q, SectionSide side,
                              const IntegratorSpec& spec, double t_max) {
    validate(spec);
    JerkRhs rhs{p};
    const bool upper = side == SectionSide::Upper;
    const auto hit = ode::first_crossing<3>(rhs, V3(q.x, q.y, 0.0), t_max, spec, 2, upper ? -1 : 1,
                                            [&](const V3& y) { return upper ? y[1] > 0.0 : y[1] < 0.0; });
    if (!hit) throw NoReturn("trajectory did not return to the section");
    return {{hit->y[0], hit->y[1]}, hit->t};
}

ReturnResult poincare_return(const SystemParams& p, const SectionPoint& q, const IntegratorSpec& spec,
                             double t_max) {
    return section_crossing(p, q, SectionSide::Upper, spec, t_max);
}

MonodromyResult monodromy(const SystemParams& p, const State3& s0, double duration, const IntegratorSpec& spec) {
    validate(spec);
    VariationalRhs rhs{p};
    V12 y0 = V12::Zero();
    y0.head<3>() = to_vec(s0);
    y0[3] = y0[7] = y0[11] = 1.0;
    MonodromyResult out;
    V12 last = y0;
    ode::drive<12>(rhs, 0.0, y0, duration, spec, never, [&](double, const V12& y, const V12&) {
        last = y;
        out.max_abs_coordinate = std::max({out.max_abs_coordinate, std::abs(y[0]), std::abs(y[1]), std::abs(y[2])});
    });
    out.end = to_state(last);
    for (int col = 0; col < 3; ++col) {
        for (int row = 0; row < 3; ++row) out.matrix[row][col] = last[3 + 3 * col + row];
    }
    return out;
}

std::array<std::complex<double>, 3> eigenvalues3(const Matrix3& m) {
    const double trace = m[0][0] + m[1][1] + m[2][2];
    const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                          m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return cubic_roots({1.0, -trace, minors, -det});
}

namespace {

std::optional<Eigen::Vector2d> displacement(const SystemParams& p, const Eigen::Vector2d& q,
                                            const IntegratorSpec& spec) {
    if (!(q[1] > 0.0) || !q.allFinite()) return std::nullopt;
    try {
        const ReturnResult r = poincare_return(p, {q[0], q[1]}, spec);
        return Eigen::Vector2d(r.point.x - q[0], r.point.y - q[1]);
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

PeriodicOrbitRecord shoot_from(const SystemParams& p, const SectionPoint& initial, const IntegratorSpec& spec,
                               const ShootOptions& opt) {
    Eigen::Vector2d q(initial.x, initial.y);
    auto R = displacement(p, q, spec);
    if (!R) throw ShootingDiverged("initial section point does not return to the section");
    double norm = R->norm();
    int iterations = 0;
    while (norm >= opt.shoot_tol && iterations < opt.max_iterations) {
        ++iterations;
        const double h = opt.fd_step * (1.0 + q.norm());
        Eigen::Matrix2d J;
        for (int i = 0; i < 2; ++i) {
            Eigen::Vector2d qp = q;
            Eigen::Vector2d qm = q;
            qp[i] += h;
            qm[i] -= h;
            const auto Rp = displacement(p, qp, spec);
            const auto Rm = displacement(p, qm, spec);
            if (!Rp || !Rm) throw ShootingDiverged("finite-difference probe left the section");
            J.col(i) = (*Rp - *Rm) / (2.0 * h);
        }
        const Eigen::Vector2d step = J.fullPivLu().solve(-*R);
        if (!step.allFinite()) throw ShootingDiverged("singular shooting Jacobian");
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
            const Eigen::Vector2d trial = q + lambda * step;
            const auto Rt = displacement(p, trial, spec);
            if (Rt && Rt->norm() < norm) {
                q = trial;
                R = Rt;
                norm = Rt->norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (!(norm < opt.shoot_tol)) {
        throw ShootingDiverged("shooting stalled at residual " + std::to_string(norm));
    }

    PeriodicOrbitRecord rec;
    rec.section_point = {q[0], q[1]};
    const ReturnResult ret = poincare_return(p, rec.section_point, spec);
    rec.period = ret.flight_time;
    rec.residual = norm;
    rec.newton_iterations = iterations;

    const MonodromyResult mono = monodromy(p, {q[0], q[1], 0.0}, rec.period, spec);
    rec.max_abs_coordinate = mono.max_abs_coordinate;
    auto mult = eigenvalues3(mono.matrix);
    std::size_t trivial = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(mult[i] - 1.0) < std::abs(mult[trivial] - 1.0)) trivial = i;
    }
    rec.trivial_multiplier = mult[trivial];
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i != trivial) rec.floquet[j++] = mult[i];
    }
    return rec;
}

SectionPoint consistent_seed(const RootRW& root, double eps) { return {eps * root.w, eps * root.r}; }

SectionPoint printed_seed(const RootRW& root, double eps, double delta) {
    return {eps * (root.w + root.r / delta), eps * root.r};
}

PeriodicOrbitRecord shoot_orbit(const UnfoldingParams& u, double eps, const RootRW& seed, const IntegratorSpec& spec,
                                const ShootOptions& opt) {
    validate(u);
    if (!(seed.r > 0.0)) throw SeedInvalid("seed radius must be positive");
    if (eps == 0.0 || std::abs(eps) > opt.max_eps) throw std::invalid_argument("eps outside (0, max_eps]");
    const SystemParams p = unfold(u, eps);

    std::optional<PeriodicOrbitRecord> primary;
    std::optional<PeriodicOrbitRecord> fallback;
    std::string failures;
    try {
        primary = shoot_from(p, consistent_seed(seed, eps), spec, opt);
    } catch (const Error& e) {
        failures += std::string("consistent seed: ") + e.what() + "; ";
    }
    try {
        fallback = shoot_from(p, printed_seed(seed, eps, u.delta), spec, opt);
        fallback->seed_used = SeedKind::Printed;
    } catch (const Error& e) {
        failures += std::string("printed seed: ") + e.what();
    }
    if (!primary && !fallback) throw ShootingDiverged("both seeds failed (" + failures + ")");

    PeriodicOrbitRecord rec = primary ? *primary : *fallback;
    if (primary && fallback) {
        rec.seed_disagreement = std::hypot(primary->section_point.x - fallback->section_point.x,
                                           primary->section_point.y - fallback->section_point.y);
    }
    rec.eps = eps;
    rec.seed = seed;
    return rec;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 pairs");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult sweep_epsilon(const UnfoldingParams& u, const std::vector<double>& eps_list, const IntegratorSpec& spec,
                          const ShootOptions& opt) {
    validate(u);
    if (eps_list.empty()) throw std::invalid_argument("sweep_epsilon: empty eps list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1]))) {
            throw std::invalid_argument("sweep_epsilon: eps list must be positive and decreasing");
        }
    }

    SweepResult out;
    out.prediction = predicted_roots(u.a2, u.b2, u.delta);
    for (std::size_t orbit = 0; orbit < out.prediction.roots.size(); ++orbit) {
        const RootRW root = out.prediction.roots[orbit];
        std::optional<PeriodicOrbitRecord> previous;
        for (double eps : eps_list) {
            SweepEntry entry{eps, orbit, std::nullopt, {}};
            if (previous) {
                const double ratio = eps / previous->eps;
                const SectionPoint warm{previous->section_point.x * ratio, previous->section_point.y * ratio};
                try {
                    PeriodicOrbitRecord rec = shoot_from(unfold(u, eps), warm, spec, opt);
                    rec.eps = eps;
                    rec.seed = root;
                    rec.seed_used = SeedKind::WarmStart;
                    entry.record = rec;
                } catch (const Error&) {
                    // fall through to the averaged seeds
                }
            }
            if (!entry.record) {
                try {
                    entry.record = shoot_orbit(u, eps, root, spec, opt);
                } catch (const std::exception& e) {
                    entry.error = e.what();
                }
            }
            previous = entry.record;
            out.entries.push_back(std::move(entry));
        }

        OrbitSweepFit fit;
        fit.orbit = orbit;
        fit.seed = root;
        std::vector<double> eps_ok, amplitude, seed_error, max_coord;
        for (const SweepEntry& e : out.entries) {
            if (e.orbit != orbit || !e.record) continue;
            const PeriodicOrbitRecord& r = *e.record;
            const SectionPoint s = consistent_seed(root, e.eps);
            eps_ok.push_back(e.eps);
            amplitude.push_back(std::hypot(r.section_point.x, r.section_point.y));
            seed_error.push_back(std::hypot(r.section_point.x - s.x, r.section_point.y - s.y));
            max_coord.push_back(r.max_abs_coordinate);
            fit.period_constant =
                std::max(fit.period_constant, std::abs(r.period - 2.0 * std::numbers::pi / u.delta) / e.eps);
        }
        fit.converged = static_cast<int>(eps_ok.size());
        if (eps_ok.size() >= 2) {
            fit.amplitude_slope = loglog_slope(eps_ok, amplitude);
            fit.seed_error_slope = loglog_slope(eps_ok, seed_error);
        }
        fit.max_coordinate_decreasing = fit.converged == static_cast<int>(eps_list.size());
        for (std::size_t i = 1; i < max_coord.size(); ++i) {
            if (!(max_coord[i] < max_coord[i - 1])) fit.max_coordinate_decreasing = false;
        }
        out.fits.push_back(fit);
    }
    return out;
}

const char* to_string(SeedKind k) noexcept {
    switch (k) {
    case SeedKind::Consistent: return "consistent";
    case SeedKind::Printed: return "printed";
    case SeedKind::WarmStart: return "warm_start";
    }
    return "unknown";
}

} // namespace zerohopf
