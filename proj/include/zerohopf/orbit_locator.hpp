#pragma once

#include "zerohopf/closed_form.hpp"
#include "zerohopf/jerk_model.hpp"
#include "zerohopf/normal_form.hpp"
#include "zerohopf/ode.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace zerohopf {

struct TrajectoryPoint {
    double t = 0.0;
    State3 s;
    State3 dsdt;
};

// Accepted integration points with their derivatives; at() interpolates with
// cubic Hermite polynomials between them.
struct Trajectory {
    std::vector<TrajectoryPoint> points;

    [[nodiscard]] State3 at(double t) const;
    [[nodiscard]] const State3& back() const { return points.back().s; }
};

[[nodiscard]] Trajectory integrate(const SystemParams& p, const State3& s0, double t_end,
                                   const IntegratorSpec& spec);

// Integrates to each of the (increasing, non-negative) sample times and returns
// the states there. Samples are produced by stepping exactly onto each time.
[[nodiscard]] std::vector<State3> sample_flow(const SystemParams& p, const State3& s0,
                                              const std::vector<double>& times, const IntegratorSpec& spec);

// A point (x, y) of the plane z = 0.
struct SectionPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const SectionPoint&, const SectionPoint&) = default;
};

enum class SectionSide {
    Upper, // y > 0, crossed with z' < 0
    Lower  // y < 0, crossed with z' > 0 (mirror image of Upper)
};

struct ReturnResult {
    SectionPoint point;
    double flight_time = 0.0;
};

// Next crossing from (q.x, q.y, 0) through the requested half-plane of z = 0.
// Throws NoReturn when none occurs within `t_max`.
[[nodiscard]] ReturnResult section_crossing(const SystemParams& p, const SectionPoint& q, SectionSide side,
                                            const IntegratorSpec& spec, double t_max = 100.0);

// First return to {z = 0, y > 0} with z' < 0.
[[nodiscard]] ReturnResult poincare_return(const SystemParams& p, const SectionPoint& q,
                                           const IntegratorSpec& spec, double t_max = 100.0);

struct MonodromyResult {
    Matrix3 matrix{};
    State3 end;
    double max_abs_coordinate = 0.0; // over accepted points along the integration
};

// Fundamental matrix of the variational equations along the flow from s0 for
// time `duration`, using the analytic Jacobian.
[[nodiscard]] MonodromyResult monodromy(const SystemParams& p, const State3& s0, double duration,
                                        const IntegratorSpec& spec);

// Eigenvalues of a real 3x3 matrix, sorted by real then imaginary part.
[[nodiscard]] std::array<std::complex<double>, 3> eigenvalues3(const Matrix3& m);

struct ShootOptions {
    double shoot_tol = 1e-10;
    int max_iterations = 40;
    int max_halvings = 30;
    double fd_step = 1e-7; // relative: h = fd_step (1 + ||q||)
    double max_eps = 0.2;
};

enum class SeedKind {
    Consistent, // eps (w, r): the theta = 0 slice mapped through the linear change
    Printed,    // eps (w + r / delta, r): the initial condition as printed with the proof
    WarmStart   // scaled fixed point from a neighbouring eps
};

struct PeriodicOrbitRecord {
    double eps = 0.0;
    SectionPoint section_point;
    double period = 0.0;
    double residual = 0.0;
    std::array<std::complex<double>, 2> floquet{};
    std::complex<double> trivial_multiplier;
    RootRW seed;
    SeedKind seed_used = SeedKind::Consistent;
    std::optional<double> seed_disagreement; // distance between fixed points reached from both seeds
    int newton_iterations = 0;
    double max_abs_coordinate = 0.0;
};

// Newton on R(q) = P(q) - q from a single initial section point.
[[nodiscard]] PeriodicOrbitRecord shoot_from(const SystemParams& p, const SectionPoint& initial,
                                             const IntegratorSpec& spec, const ShootOptions& opt = {});

[[nodiscard]] SectionPoint consistent_seed(const RootRW& root, double eps);
[[nodiscard]] SectionPoint printed_seed(const RootRW& root, double eps, double delta);

// Shoots from both candidate seeds and keeps the consistent one when it
// converges. Throws SeedInvalid for r <= 0 and ShootingDiverged if both fail.
[[nodiscard]] PeriodicOrbitRecord shoot_orbit(const UnfoldingParams& u, double eps, const RootRW& seed,
                                              const IntegratorSpec& spec, const ShootOptions& opt = {});

struct SweepEntry {
    double eps = 0.0;
    std::size_t orbit = 0;
    std::optional<PeriodicOrbitRecord> record;
    std::string error;
};

struct OrbitSweepFit {
    std::size_t orbit = 0;
    RootRW seed;
    double amplitude_slope = 0.0;  // log-log slope of ||section point|| against eps
    double seed_error_slope = 0.0; // log-log slope of ||section point - eps (w, r)||
    double period_constant = 0.0;  // max |period - 2 pi / delta| / eps
    bool max_coordinate_decreasing = false;
    int converged = 0;
};

struct SweepResult {
    OrbitPrediction prediction;
    std::vector<SweepEntry> entries;
    std::vector<OrbitSweepFit> fits;
};

// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

[[nodiscard]] SweepResult sweep_epsilon(const UnfoldingParams& u, const std::vector<double>& eps_list,
                                        const IntegratorSpec& spec, const ShootOptions& opt = {});

[[nodiscard]] const char* to_string(SeedKind k) noexcept;

} // namespace zerohopf
