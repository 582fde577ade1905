#include "zerohopf/run_config.hpp"

#include "zerohopf/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace zerohopf {

using nlohmann::json;

bool operator==(const RunConfig& a, const RunConfig& b) {
    auto same_params = [](const std::optional<SystemParams>& x, const std::optional<SystemParams>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || (x->a == y->a && x->b == y->b && x->c == y->c);
    };
    return a.unfolding == b.unfolding && same_params(a.params, b.params) && a.eps == b.eps &&
           a.eps_list == b.eps_list && a.quadrature == b.quadrature && a.integrator == b.integrator &&
           a.grid == b.grid && a.random_draws == b.random_draws && a.output_dir == b.output_dir &&
           a.seed == b.seed;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const std::string& key, const std::string& where, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
    return d;
}

long integer(const json& obj, const std::string& key, const std::string& where, long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return v.get<long>();
}

template <typename Fn>
auto checked(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

RunConfig parse_config(const json& doc) {
    reject_unknown(doc, {"unfolding", "params", "eps", "eps_list", "quadrature", "integrator", "grid",
                         "random_draws", "output_dir", "seed"},
                   "config");
    RunConfig c;

    if (doc.contains("unfolding")) {
        const json& u = doc.at("unfolding");
        reject_unknown(u, {"a1", "a2", "b1", "b2", "c1", "c2", "delta"}, "unfolding");
        if (!u.contains("delta")) throw ConfigError("unfolding.delta is required");
        UnfoldingParams p;
        p.a1 = number(u, "a1", "unfolding", 0.0);
        p.a2 = number(u, "a2", "unfolding", 0.0);
        p.b1 = number(u, "b1", "unfolding", 0.0);
        p.b2 = number(u, "b2", "unfolding", 0.0);
        p.c1 = number(u, "c1", "unfolding", 0.0);
        p.c2 = number(u, "c2", "unfolding", 0.0);
        p.delta = number(u, "delta", "unfolding", 1.0);
        checked([&] { validate(p); return 0; });
        c.unfolding = p;
    }
    if (doc.contains("params")) {
        const json& p = doc.at("params");
        reject_unknown(p, {"a", "b", "c"}, "params");
        c.params = SystemParams{number(p, "a", "params", 0.0), number(p, "b", "params", 0.0),
                                number(p, "c", "params", 0.0)};
    }
    if (doc.contains("eps")) c.eps = number(doc, "eps", "config", 0.0);
    if (doc.contains("eps_list")) {
        const json& list = doc.at("eps_list");
        if (!list.is_array()) throw ConfigError("eps_list must be an array");
        for (const json& v : list) {
            if (!v.is_number()) throw ConfigError("eps_list entries must be numbers");
            c.eps_list.push_back(v.get<double>());
        }
    }
    if (doc.contains("quadrature")) {
        const json& q = doc.at("quadrature");
        reject_unknown(q, {"nodes", "inner_nodes", "rule"}, "quadrature");
        c.quadrature.nodes = static_cast<int>(integer(q, "nodes", "quadrature", c.quadrature.nodes));
        c.quadrature.inner_nodes =
            static_cast<int>(integer(q, "inner_nodes", "quadrature", c.quadrature.inner_nodes));
        if (q.contains("rule")) {
            if (!q.at("rule").is_string()) throw ConfigError("quadrature.rule must be a string");
            c.quadrature.rule = checked([&] { return quadrature_rule_from_string(q.at("rule").get<std::string>()); });
        }
        checked([&] { validate(c.quadrature); return 0; });
    }
    if (doc.contains("integrator")) {
        const json& s = doc.at("integrator");
        reject_unknown(s, {"method", "abs_tol", "rel_tol", "max_step", "max_steps"}, "integrator");
        if (s.contains("method")) {
            if (!s.at("method").is_string()) throw ConfigError("integrator.method must be a string");
            c.integrator.method =
                checked([&] { return integrator_method_from_string(s.at("method").get<std::string>()); });
        }
        c.integrator.abs_tol = number(s, "abs_tol", "integrator", c.integrator.abs_tol);
        c.integrator.rel_tol = number(s, "rel_tol", "integrator", c.integrator.rel_tol);
        c.integrator.max_step = number(s, "max_step", "integrator", c.integrator.max_step);
        c.integrator.max_steps = integer(s, "max_steps", "integrator", c.integrator.max_steps);
        checked([&] { validate(c.integrator); return 0; });
    }
    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        reject_unknown(g, {"r_min", "r_max", "w_min", "w_max", "r_points", "w_points"}, "grid");
        c.grid.r_min = number(g, "r_min", "grid", c.grid.r_min);
        c.grid.r_max = number(g, "r_max", "grid", c.grid.r_max);
        c.grid.w_min = number(g, "w_min", "grid", c.grid.w_min);
        c.grid.w_max = number(g, "w_max", "grid", c.grid.w_max);
        c.grid.r_points = static_cast<int>(integer(g, "r_points", "grid", c.grid.r_points));
        c.grid.w_points = static_cast<int>(integer(g, "w_points", "grid", c.grid.w_points));
        if (c.grid.r_points < 1 || c.grid.w_points < 1) throw ConfigError("grid needs at least one point per axis");
        if (!(c.grid.r_min > 0.0) || c.grid.r_max < c.grid.r_min || c.grid.w_max < c.grid.w_min) {
            throw ConfigError("grid ranges must be ordered with r_min > 0");
        }
    }
    c.random_draws = static_cast<int>(integer(doc, "random_draws", "config", 0));
    if (c.random_draws < 0) throw ConfigError("random_draws must be non-negative");
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
        c.output_dir = doc.at("output_dir").get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const RunConfig& c) {
    json doc = json::object();
    if (c.unfolding) {
        const UnfoldingParams& u = *c.unfolding;
        doc["unfolding"] = {{"a1", u.a1}, {"a2", u.a2}, {"b1", u.b1}, {"b2", u.b2},
                            {"c1", u.c1}, {"c2", u.c2}, {"delta", u.delta}};
    }
    if (c.params) doc["params"] = {{"a", c.params->a}, {"b", c.params->b}, {"c", c.params->c}};
    if (c.eps) doc["eps"] = *c.eps;
    if (!c.eps_list.empty()) doc["eps_list"] = c.eps_list;
    doc["quadrature"] = {{"nodes", c.quadrature.nodes},
                         {"inner_nodes", c.quadrature.inner_nodes},
                         {"rule", to_string(c.quadrature.rule)}};
    doc["integrator"] = {{"method", to_string(c.integrator.method)},
                         {"abs_tol", c.integrator.abs_tol},
                         {"rel_tol", c.integrator.rel_tol},
                         {"max_step", c.integrator.max_step},
                         {"max_steps", c.integrator.max_steps}};
    doc["grid"] = {{"r_min", c.grid.r_min},       {"r_max", c.grid.r_max},       {"w_min", c.grid.w_min},
                   {"w_max", c.grid.w_max},       {"r_points", c.grid.r_points}, {"w_points", c.grid.w_points}};
    doc["random_draws"] = c.random_draws;
    if (!c.output_dir.empty()) doc["output_dir"] = c.output_dir;
    doc["seed"] = c.seed;
    return doc;
}

} // namespace zerohopf
