#include "zerohopf/commands.hpp"

#include "zerohopf/averaging_engine.hpp"
#include "zerohopf/closed_form.hpp"
#include "zerohopf/errors.hpp"
#include "zerohopf/orbit_locator.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace zerohopf {

using nlohmann::json;
namespace fs = std::filesystem;

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json state_json(const State3& s) { return json::array({s.x, s.y, s.z}); }

json prediction_json(const OrbitPrediction& pred) {
    json roots = json::array();
    for (std::size_t i = 0; i < pred.roots.size(); ++i) {
        roots.push_back({{"r", pred.roots[i].r}, {"w", pred.roots[i].w}, {"jac_det", pred.jac_dets[i]}});
    }
    json out = {{"count", to_string(pred.count)}, {"roots", roots}};
    if (!pred.degenerate_reason.empty()) out["degenerate_reason"] = pred.degenerate_reason;
    return out;
}

json record_json(const PeriodicOrbitRecord& r) {
    json out = {{"eps", r.eps},
                {"section_point", json::array({r.section_point.x, r.section_point.y})},
                {"period", r.period},
                {"residual", r.residual},
                {"floquet", json::array({complex_json(r.floquet[0]), complex_json(r.floquet[1])})},
                {"trivial_multiplier", complex_json(r.trivial_multiplier)},
                {"seed", {{"r", r.seed.r}, {"w", r.seed.w}}},
                {"seed_used", to_string(r.seed_used)},
                {"newton_iterations", r.newton_iterations},
                {"max_abs_coordinate", r.max_abs_coordinate}};
    out["seed_disagreement"] = r.seed_disagreement ? json(*r.seed_disagreement) : json(nullptr);
    return out;
}

void write_summary(const fs::path& dir, const json& summary) {
    fs::create_directories(dir);
    std::ofstream out(dir / "summary.json", std::ios::binary);
    out << summary.dump(2) << '\n';
}

const UnfoldingParams& require_unfolding(const RunConfig& config) {
    if (!config.unfolding) throw ConfigError("this command needs an 'unfolding' section");
    return *config.unfolding;
}

// Trace of one period sampled at 1024 equal intervals.
void write_orbit_trace(const fs::path& file, const SystemParams& p, const PeriodicOrbitRecord& rec,
                       const IntegratorSpec& spec) {
    constexpr int kSamples = 1024;
    std::vector<double> times(kSamples + 1);
    for (int k = 0; k <= kSamples; ++k) times[k] = rec.period * k / kSamples;
    const State3 start{rec.section_point.x, rec.section_point.y, 0.0};
    write_trace_csv(file, times, sample_flow(p, start, times, spec));
}

} // namespace

void write_trace_csv(const fs::path& file, const std::vector<double>& times, const std::vector<State3>& states) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    out << "t,x,y,z\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << sig17(times[i]) << ',' << sig17(states[i].x) << ',' << sig17(states[i].y) << ','
            << sig17(states[i].z) << '\n';
    }
}

CommandResult cmd_classify(const RunConfig& config) {
    CommandResult res;
    std::ostringstream text;
    text.precision(12);

    SystemParams p;
    std::string mode;
    if (config.params) {
        p = *config.params;
        mode = "direct";
    } else if (config.unfolding) {
        p = unfold(*config.unfolding, config.eps.value_or(0.0));
        mode = "unfolded";
    } else {
        throw ConfigError("classify needs 'params' or 'unfolding'");
    }

    json eqs = json::array();
    bool zero_hopf = false;
    text << "system (a, b, c) = (" << p.a << ", " << p.b << ", " << p.c << ")\n";
    for (const State3& s : equilibria(p)) {
        const EquilibriumClass cls = classify_equilibrium(p, s);
        json ev = json::array();
        for (const auto& l : cls.eigenvalues) ev.push_back(complex_json(l));
        eqs.push_back({{"point", state_json(s)}, {"eigenvalues", ev}, {"kind", to_string(cls.kind)}});
        zero_hopf = zero_hopf || cls.kind == EquilibriumKind::ZeroHopf;
        text << "equilibrium (" << s.x << ", " << s.y << ", " << s.z << "): " << to_string(cls.kind)
             << ", eigenvalues";
        for (const auto& l : cls.eigenvalues) text << ' ' << l;
        text << '\n';
    }
    text << (zero_hopf ? "zero-Hopf equilibrium at the origin\n" : "no zero-Hopf equilibrium\n");

    res.summary = {{"command", "classify"},
                   {"config", config_to_json(config)},
                   {"mode", mode},
                   {"system", {{"a", p.a}, {"b", p.b}, {"c", p.c}}},
                   {"equilibria", eqs},
                   {"zero_hopf", zero_hopf}};

    if (config.unfolding) {
        const UnfoldingParams& u = *config.unfolding;
        const OrbitPrediction pred = predicted_roots(u.a2, u.b2, u.delta);
        res.summary["prediction"] = prediction_json(pred);
        if (pred.count == OrbitCount::Degenerate) {
            res.summary["case"] = "Degenerate";
            res.exit_code = kExitHypothesis;
            text << "hypothesis violated: " << pred.degenerate_reason << '\n';
        } else {
            const CaseQuantities q = case_quantities(u.a2, u.b2, u.delta);
            res.summary["case"] = to_string(classify(u.a2, u.b2, u.delta));
            res.summary["theorem_region"] = to_string(theorem_region(u.a2, u.b2, u.delta));
            res.summary["case_quantities"] = {{"q_plus", q.q_plus}, {"q_minus", q.q_minus}, {"w_factor", q.w_factor}};
            text << "case: " << to_string(pred.count) << " (quadrant " << to_string(theorem_region(u.a2, u.b2, u.delta))
                 << ")\n";
            for (std::size_t i = 0; i < pred.roots.size(); ++i) {
                text << "  root " << i + 1 << ": r = " << pred.roots[i].r << ", w = " << pred.roots[i].w
                     << ", jac_det = " << pred.jac_dets[i] << '\n';
            }
        }
    }
    if (!config.output_dir.empty()) write_summary(config.output_dir, res.summary);
    res.text = text.str();
    return res;
}

namespace {

struct DeviationStats {
    double f_max = 0.0;      // |numeric f - closed f|
    double g_max = 0.0;      // |numeric g - closed g|, only when a1 = b1 = 0
    double f_abs_max = 0.0;  // max |numeric f|
    bool g_applicable = false;
};

DeviationStats compare_on_grid(const UnfoldingParams& u, const AverageGrid& grid, const QuadratureSpec& q,
                               std::ostream* csv) {
    const StandardFormSystem sys = jerk_standard_form(u);
    DeviationStats st;
    st.g_applicable = u.a1 == 0.0 && u.b1 == 0.0;
    for (int i = 0; i < grid.r_points; ++i) {
        const double r =
            grid.r_points == 1 ? grid.r_min : grid.r_min + (grid.r_max - grid.r_min) * i / (grid.r_points - 1);
        for (int j = 0; j < grid.w_points; ++j) {
            const double w =
                grid.w_points == 1 ? grid.w_min : grid.w_min + (grid.w_max - grid.w_min) * j / (grid.w_points - 1);
            Vec z(2);
            z << r, w;
            const Vec f = average_first(sys, z, q).value;
            const Vec g = average_second(sys, z, q).value;
            const auto fc = f_closed(r, w, u.a1, u.b1, u.delta);
            const auto gc = g_closed(r, w, u.a2, u.b2, u.delta);
            const double df = std::max(std::abs(f[0] - fc[0]), std::abs(f[1] - fc[1]));
            const double dg = std::max(std::abs(g[0] - gc[0]), std::abs(g[1] - gc[1]));
            st.f_max = std::max(st.f_max, df);
            st.f_abs_max = std::max(st.f_abs_max, f.cwiseAbs().maxCoeff());
            if (st.g_applicable) st.g_max = std::max(st.g_max, dg);
            if (csv) {
                *csv << sig17(r) << ',' << sig17(w) << ',' << sig17(f[0]) << ',' << sig17(f[1]) << ','
                     << sig17(fc[0]) << ',' << sig17(fc[1]) << ',' << sig17(g[0]) << ',' << sig17(g[1]) << ','
                     << sig17(gc[0]) << ',' << sig17(gc[1]) << ',' << sig17(st.g_applicable ? std::max(df, dg) : df)
                     << '\n';
            }
        }
    }
    return st;
}

} // namespace

CommandResult cmd_average(const RunConfig& config) {
    const UnfoldingParams& u = require_unfolding(config);
    CommandResult res;
    std::ostringstream text;
    text.precision(6);

    std::ostringstream csv;
    csv << "r,w,f1,f2,f1_closed,f2_closed,g1,g2,g1_closed,g2_closed,deviation\n";
    const DeviationStats main = compare_on_grid(u, config.grid, config.quadrature, &csv);
    double worst = std::max(main.f_max, main.g_max);

    json draws = json::array();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    for (int k = 0; k < config.random_draws; ++k) {
        UnfoldingParams d;
        do {
            d.delta = freq(rng);
        } while (std::abs(d.delta - std::sqrt(3.0)) < 0.05);
        d.a2 = coef(rng);
        d.b2 = coef(rng);
        d.c1 = coef(rng);
        d.c2 = coef(rng);
        const DeviationStats st = compare_on_grid(d, config.grid, config.quadrature, nullptr);
        worst = std::max({worst, st.f_max, st.g_max});
        draws.push_back({{"a2", d.a2}, {"b2", d.b2}, {"c1", d.c1}, {"c2", d.c2}, {"delta", d.delta},
                         {"max_f_deviation", st.f_max}, {"max_g_deviation", st.g_max}});
    }

    res.exit_code = worst > 1e-8 ? kExitOracleMismatch : kExitOk;
    res.summary = {{"command", "average"},
                   {"config", config_to_json(config)},
                   {"max_f_deviation", main.f_max},
                   {"max_g_deviation", main.g_max},
                   {"g_oracle_applicable", main.g_applicable},
                   {"max_abs_f", main.f_abs_max},
                   {"f_identically_zero", main.f_abs_max < 1e-12},
                   {"random_draws", draws},
                   {"max_deviation", worst},
                   {"oracle_match", res.exit_code == kExitOk}};

    text << "max |f - f_closed| = " << main.f_max << '\n';
    if (main.g_applicable) {
        text << "max |g - g_closed| = " << main.g_max << '\n';
    } else {
        text << "g oracle not applicable (a1, b1 not both zero)\n";
    }
    if (main.f_abs_max < 1e-12) text << "f vanishes identically on the grid\n";
    if (config.random_draws > 0) text << "random draws: " << config.random_draws << '\n';
    text << (res.exit_code == kExitOk ? "oracle match\n" : "ORACLE MISMATCH\n");

    if (!config.output_dir.empty()) {
        write_summary(config.output_dir, res.summary);
        std::ofstream(fs::path(config.output_dir) / "average.csv", std::ios::binary) << csv.str();
    }
    res.text = text.str();
    return res;
}

CommandResult cmd_orbits(const RunConfig& config) {
    const UnfoldingParams& u = require_unfolding(config);
    if (!config.eps) throw ConfigError("orbits needs 'eps'");
    const double eps = *config.eps;
    CommandResult res;
    std::ostringstream text;
    text.precision(10);

    const OrbitPrediction pred = predicted_roots(u.a2, u.b2, u.delta);
    res.summary = {{"command", "orbits"}, {"config", config_to_json(config)}, {"prediction", prediction_json(pred)}};
    if (pred.count == OrbitCount::Degenerate) {
        res.exit_code = kExitHypothesis;
        res.summary["orbits"] = json::array();
        text << "hypothesis violated: " << pred.degenerate_reason << '\n';
        if (!config.output_dir.empty()) write_summary(config.output_dir, res.summary);
        res.text = text.str();
        return res;
    }

    const SystemParams p = unfold(u, eps);
    json orbits = json::array();
    int located = 0;
    for (std::size_t i = 0; i < pred.roots.size(); ++i) {
        json entry = {{"index", i + 1}, {"seed", {{"r", pred.roots[i].r}, {"w", pred.roots[i].w}}}};
        try {
            const PeriodicOrbitRecord rec = shoot_orbit(u, eps, pred.roots[i], config.integrator);
            entry["record"] = record_json(rec);
            ++located;
            if (!config.output_dir.empty()) {
                const std::string name = "orbit_" + std::to_string(i + 1) + ".csv";
                write_orbit_trace(fs::path(config.output_dir) / name, p, rec, config.integrator);
                entry["trace"] = name;
            }
            text << "orbit " << i + 1 << ": section point (" << rec.section_point.x << ", " << rec.section_point.y
                 << "), period " << rec.period << ", residual " << rec.residual << '\n';
        } catch (const std::exception& e) {
            entry["error"] = e.what();
            text << "orbit " << i + 1 << ": FAILED (" << e.what() << ")\n";
        }
        orbits.push_back(entry);
    }
    const int expected = static_cast<int>(pred.count);
    res.exit_code = located >= expected ? kExitOk : kExitShootingShortfall;
    res.summary["orbits"] = orbits;
    res.summary["located"] = located;
    res.summary["expected"] = expected;
    text << "located " << located << " of " << expected << " predicted orbits (case " << to_string(pred.count)
         << ")\n";
    if (!config.output_dir.empty()) write_summary(config.output_dir, res.summary);
    res.text = text.str();
    return res;
}

CommandResult cmd_sweep(const RunConfig& config) {
    const UnfoldingParams& u = require_unfolding(config);
    if (config.eps_list.empty()) throw ConfigError("sweep needs 'eps_list'");
    CommandResult res;
    std::ostringstream text;
    text.precision(6);

    const SweepResult sweep = [&] {
        try {
            return sweep_epsilon(u, config.eps_list, config.integrator);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    res.summary = {{"command", "sweep"}, {"config", config_to_json(config)},
                   {"prediction", prediction_json(sweep.prediction)}};
    if (sweep.prediction.count == OrbitCount::Degenerate) {
        res.exit_code = kExitHypothesis;
        text << "hypothesis violated: " << sweep.prediction.degenerate_reason << '\n';
        if (!config.output_dir.empty()) write_summary(config.output_dir, res.summary);
        res.text = text.str();
        return res;
    }

    json entries = json::array();
    bool all_ok = true;
    for (const SweepEntry& e : sweep.entries) {
        json entry = {{"eps", e.eps}, {"orbit", e.orbit + 1}};
        if (e.record) {
            entry["record"] = record_json(*e.record);
            if (!config.output_dir.empty()) {
                const fs::path file = fs::path(config.output_dir) / "sweep" / shortest(e.eps) /
                                      ("orbit_" + std::to_string(e.orbit + 1) + ".csv");
                write_orbit_trace(file, unfold(u, e.eps), *e.record, config.integrator);
            }
        } else {
            entry["error"] = e.error;
            all_ok = false;
        }
        entries.push_back(entry);
    }
    json fits = json::array();
    for (const OrbitSweepFit& f : sweep.fits) {
        fits.push_back({{"orbit", f.orbit + 1},
                        {"seed", {{"r", f.seed.r}, {"w", f.seed.w}}},
                        {"converged", f.converged},
                        {"amplitude_slope", f.amplitude_slope},
                        {"seed_error_slope", f.seed_error_slope},
                        {"period_constant", f.period_constant},
                        {"max_coordinate_decreasing", f.max_coordinate_decreasing}});
        text << "orbit " << f.orbit + 1 << ": amplitude slope " << f.amplitude_slope << ", seed-error slope "
             << f.seed_error_slope << ", |T - 2pi/delta| <= " << f.period_constant << " eps"
             << (f.max_coordinate_decreasing ? ", shrinking to the origin" : ", NOT monotone") << '\n';
    }
    res.summary["entries"] = entries;
    res.summary["fits"] = fits;
    res.exit_code = all_ok ? kExitOk : kExitShootingShortfall;
    if (!config.output_dir.empty()) write_summary(config.output_dir, res.summary);
    res.text = text.str();
    return res;
}

} // namespace zerohopf
