#include "zerohopf/averaging_engine.hpp"

#include "zerohopf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace zerohopf {

namespace {

// Trigonometric interpolant of a T-periodic F1(z, .) from M equispaced samples,
// integrated in closed form so that int_0^s F1 can be read off at any s.
class CumulativeIntegral {
public:
    CumulativeIntegral(const StandardFormSystem& sys, const Vec& z, int samples)
        : omega_(2.0 * std::numbers::pi / sys.period), harmonics_((samples - 1) / 2) {
        const int n = sys.dim;
        const int M = samples;
        Mat values(n, M);
        for (int j = 0; j < M; ++j) values.col(j) = sys.F1(z, sys.period * j / M);

        std::vector<double> cos_table(M);
        std::vector<double> sin_table(M);
        for (int m = 0; m < M; ++m) {
            cos_table[m] = std::cos(2.0 * std::numbers::pi * m / M);
            sin_table[m] = std::sin(2.0 * std::numbers::pi * m / M);
        }

        mean_ = values.rowwise().sum() / M;
        cos_coef_ = Mat::Zero(n, harmonics_ + 1);
        sin_coef_ = Mat::Zero(n, harmonics_ + 1);
        for (int k = 1; k <= harmonics_; ++k) {
            for (int j = 0; j < M; ++j) {
                const int m = static_cast<int>((static_cast<long>(j) * k) % M);
                cos_coef_.col(k) += values.col(j) * cos_table[m];
                sin_coef_.col(k) += values.col(j) * sin_table[m];
            }
        }
        cos_coef_ *= 2.0 / M;
        sin_coef_ *= 2.0 / M;

        if (M % 2 == 0) {
            nyquist_ = Vec::Zero(n);
            for (int j = 0; j < M; ++j) nyquist_ += (j % 2 == 0 ? 1.0 : -1.0) * values.col(j);
            nyquist_ /= M;
            nyquist_k_ = M / 2;
        }
    }

    [[nodiscard]] Vec at(double s) const {
        Vec out = mean_ * s;
        const std::complex<double> step = std::polar(1.0, omega_ * s);
        std::complex<double> e = 1.0;
        for (int k = 1; k <= harmonics_; ++k) {
            e *= step;
            const double kw = k * omega_;
            out += (cos_coef_.col(k) * e.imag() + sin_coef_.col(k) * (1.0 - e.real())) / kw;
        }
        if (nyquist_k_ > 0) out += nyquist_ * (std::sin(nyquist_k_ * omega_ * s) / (nyquist_k_ * omega_));
        return out;
    }

private:
    double omega_;
    int harmonics_;
    Vec mean_;
    Mat cos_coef_;
    Mat sin_coef_;
    Vec nyquist_;
    int nyquist_k_ = 0;
};

Mat fd_field_jacobian(const StandardFormSystem::Field& field, const Vec& z, double t) {
    const int n = static_cast<int>(z.size());
    Mat J(n, n);
    for (int i = 0; i < n; ++i) {
        const double h = 1e-5 * (1.0 + std::abs(z[i]));
        Vec zp = z;
        Vec zm = z;
        zp[i] += h;
        zm[i] -= h;
        J.col(i) = (field(zp, t) - field(zm, t)) / (2.0 * h);
    }
    return J;
}

Vec first_order(const StandardFormSystem& sys, const Vec& z, QuadratureRule rule, int nodes) {
    const QuadratureNodes q = make_rule(rule, nodes, 0.0, sys.period);
    Vec sum = Vec::Zero(sys.dim);
    for (std::size_t i = 0; i < q.points.size(); ++i) sum += q.weights[i] * sys.F1(z, q.points[i]);
    return sum / sys.period;
}

Vec second_order(const StandardFormSystem& sys, const Vec& z, QuadratureRule rule, int nodes, int inner) {
    const QuadratureNodes q = make_rule(rule, nodes, 0.0, sys.period);
    const CumulativeIntegral cumulative(sys, z, inner);
    Vec sum = Vec::Zero(sys.dim);
    for (std::size_t i = 0; i < q.points.size(); ++i) {
        const double s = q.points[i];
        const Mat D = sys.dF1 ? (*sys.dF1)(z, s) : fd_field_jacobian(sys.F1, z, s);
        sum += q.weights[i] * (D * cumulative.at(s) + sys.F2(z, s));
    }
    return sum / sys.period;
}

template <typename Eval>
Averaged with_refinement(const QuadratureSpec& q, Eval&& eval) {
    validate(q);
    const Vec coarse = eval(q.nodes, q.inner_nodes);
    Averaged out;
    out.value = eval(2 * q.nodes, 2 * q.inner_nodes);
    out.error_estimate = (out.value - coarse).cwiseAbs().maxCoeff();
    if (!(out.error_estimate <= 1e-6)) {
        throw QuadratureNotConverged("averaged function: N and 2N rules differ by " +
                                     std::to_string(out.error_estimate));
    }
    out.accuracy_warning = out.error_estimate > 1e-12;
    return out;
}

} // namespace

Averaged average_first(const StandardFormSystem& sys, const Vec& z, const QuadratureSpec& q) {
    return with_refinement(q, [&](int n, int) { return first_order(sys, z, q.rule, n); });
}

Averaged average_second(const StandardFormSystem& sys, const Vec& z, const QuadratureSpec& q) {
    return with_refinement(q, [&](int n, int m) { return second_order(sys, z, q.rule, n, m); });
}

Vec averaged_function(const StandardFormSystem& sys, const Vec& z, double eps, const QuadratureSpec& q) {
    return average_first(sys, z, q).value + eps * average_second(sys, z, q).value;
}

Mat fd_jacobian(const VectorFunction& fun, const Vec& z) {
    const int n = static_cast<int>(z.size());
    Mat J(n, n);
    for (int i = 0; i < n; ++i) {
        const double h = 1e-6 * (1.0 + std::abs(z[i]));
        Vec zp = z;
        Vec zm = z;
        zp[i] += h;
        zm[i] -= h;
        J.col(i) = (fun(zp) - fun(zm)) / (2.0 * h);
    }
    return J;
}

namespace {

bool inside(const Box& box, const Vec& z) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (!std::isfinite(z[i]) || z[i] < box.lower[i] || z[i] > box.upper[i]) return false;
    }
    return true;
}

// Damped Newton; returns true when ||fun|| < root_tol was reached. Inside the
// tolerance, undamped steps continue while each one at least halves the residual.
bool damped_newton(const VectorFunction& fun, Vec& z, const RootSearchOptions& opt) {
    Vec f = fun(z);
    double norm = f.norm();
    for (int it = 0; it < opt.max_newton; ++it) {
        const bool converged = norm < opt.root_tol;
        if (norm == 0.0) break;
        const Mat J = fd_jacobian(fun, z);
        const Vec step = J.completeOrthogonalDecomposition().solve(-f);
        if (!step.allFinite()) break;
        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h <= (converged ? 0 : opt.max_halvings); ++h, lambda *= 0.5) {
            const Vec trial = z + lambda * step;
            const Vec ft = fun(trial);
            const double nt = ft.norm();
            if (std::isfinite(nt) && nt < (converged ? 0.5 * norm : norm)) {
                z = trial;
                f = ft;
                norm = nt;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return norm < opt.root_tol;
}

} // namespace

std::vector<AveragedRoot> find_roots(const VectorFunction& fun, const Box& box, const RootSearchOptions& opt) {
    const int n = static_cast<int>(box.lower.size());
    if (n == 0 || box.upper.size() != n) throw std::invalid_argument("find_roots: malformed box");
    for (int i = 0; i < n; ++i) {
        if (!(box.lower[i] < box.upper[i])) throw std::invalid_argument("find_roots: empty box");
    }
    std::vector<int> cells = opt.grid.empty() ? std::vector<int>(n, 32) : opt.grid;
    if (static_cast<int>(cells.size()) != n) throw std::invalid_argument("find_roots: grid size mismatch");

    // Node lattice with cells[i] + 1 points per axis, row-major with axis 0 slowest.
    std::vector<long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * (cells[i + 1] + 1);
    const long total = stride[0] * (cells[0] + 1);

    auto node_index = [&](long flat) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) {
            idx[i] = static_cast<int>(flat / stride[i]);
            flat %= stride[i];
        }
        return idx;
    };
    auto node_point = [&](const std::vector<int>& idx) {
        Vec z(n);
        for (int i = 0; i < n; ++i) {
            z[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * idx[i] / cells[i];
        }
        return z;
    };

    std::vector<Vec> values(total);
    std::vector<double> norms(total);
    for (long k = 0; k < total; ++k) {
        values[k] = fun(node_point(node_index(k)));
        norms[k] = values[k].allFinite() ? values[k].norm() : INFINITY;
    }

    std::vector<Vec> seeds;
    for (long k = 0; k < total; ++k) {
        const std::vector<int> idx = node_index(k);

        // grid-local minimum of ||fun||
        bool minimum = std::isfinite(norms[k]);
        for (int i = 0; i < n && minimum; ++i) {
            if (idx[i] > 0 && norms[k - stride[i]] < norms[k]) minimum = false;
            if (idx[i] < cells[i] && norms[k + stride[i]] < norms[k]) minimum = false;
        }
        if (minimum) seeds.push_back(node_point(idx));

        // cell with this node as its lower corner
        bool is_cell = true;
        for (int i = 0; i < n; ++i) is_cell = is_cell && idx[i] < cells[i];
        if (!is_cell) continue;
        Vec lo = Vec::Constant(n, INFINITY);
        Vec hi = Vec::Constant(n, -INFINITY);
        for (int corner = 0; corner < (1 << n); ++corner) {
            long flat = k;
            for (int i = 0; i < n; ++i) {
                if (corner & (1 << i)) flat += stride[i];
            }
            lo = lo.cwiseMin(values[flat]);
            hi = hi.cwiseMax(values[flat]);
        }
        if ((lo.array() <= 0.0).all() && (hi.array() >= 0.0).all()) {
            Vec centre = node_point(idx);
            for (int i = 0; i < n; ++i) centre[i] += 0.5 * (box.upper[i] - box.lower[i]) / cells[i];
            seeds.push_back(centre);
        }
    }

    std::vector<AveragedRoot> roots;
    for (Vec z : seeds) {
        if (!damped_newton(fun, z, opt) || !inside(box, z)) continue;
        const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const AveragedRoot& r) {
            return (r.z - z).norm() < opt.dedupe_radius;
        });
        if (duplicate) continue;
        AveragedRoot root;
        root.z = z;
        root.residual = fun(z).norm();
        root.jac_det = fd_jacobian(fun, z).determinant();
        root.degree_sign = std::abs(root.jac_det) < opt.det_tol ? DegreeSign::Degenerate
                           : root.jac_det > 0.0                 ? DegreeSign::Plus
                                                                : DegreeSign::Minus;
        roots.push_back(std::move(root));
    }
    std::sort(roots.begin(), roots.end(), [](const AveragedRoot& a, const AveragedRoot& b) {
        return std::lexicographical_compare(a.z.begin(), a.z.end(), b.z.begin(), b.z.end());
    });
    return roots;
}

const char* to_string(DegreeSign s) noexcept {
    switch (s) {
    case DegreeSign::Plus: return "plus";
    case DegreeSign::Minus: return "minus";
    case DegreeSign::Degenerate: return "degenerate";
    }
    return "unknown";
}

} // namespace zerohopf
