#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature, root finding or integrators.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

// 5-point Gauss-Legendre on [-1, 1], tabulated.
inline constexpr std::array<double, 5> kGL5Nodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                    0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGL5Weights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                      0.4786286704993665, 0.2369268850561891};

// Composite 5-point Gauss-Legendre of a vector-valued integrand over [a, b].
inline Eigen::VectorXd integrate(const std::function<Eigen::VectorXd(double)>& fn, double a, double b, int panels,
                                 int dim) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    if (b == a) return sum;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int k = 0; k < 5; ++k) sum += kGL5Weights[k] * 0.5 * h * fn(mid + 0.5 * h * kGL5Nodes[k]);
    }
    return sum;
}

using Field = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

// Brute-force second-order average: the inner integral is recomputed from
// scratch at every outer node and D_z F1 is a central difference.
inline Eigen::VectorXd nested_second_average(const Field& F1, const Field& F2, const Eigen::VectorXd& z, double T,
                                             int outer_panels = 48, int inner_panels = 24) {
    const int n = static_cast<int>(z.size());
    auto integrand = [&](double s) {
        Eigen::MatrixXd D(n, n);
        for (int i = 0; i < n; ++i) {
            const double h = 1e-5 * (1.0 + std::abs(z[i]));
            Eigen::VectorXd zp = z, zm = z;
            zp[i] += h;
            zm[i] -= h;
            D.col(i) = (F1(zp, s) - F1(zm, s)) / (2.0 * h);
        }
        const Eigen::VectorXd inner =
            integrate([&](double t) { return F1(z, t); }, 0.0, s, inner_panels, n);
        return Eigen::VectorXd(D * inner + F2(z, s));
    };
    return integrate(integrand, 0.0, T, outer_panels, n) / T;
}

// Classical RK4 with a fixed number of steps.
template <typename Rhs>
Eigen::Vector3d rk4(Rhs&& f, Eigen::Vector3d y, double t_end, int steps) {
    const double h = t_end / steps;
    for (int i = 0; i < steps; ++i) {
        const Eigen::Vector3d k1 = f(y);
        const Eigen::Vector3d k2 = f(y + 0.5 * h * k1);
        const Eigen::Vector3d k3 = f(y + 0.5 * h * k2);
        const Eigen::Vector3d k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return y;
}

// Central-difference Jacobian determinant of a planar map.
template <typename Fn>
double fd_det2(Fn&& fn, double x, double y, double h = 1e-5) {
    const auto fxp = fn(x + h, y), fxm = fn(x - h, y);
    const auto fyp = fn(x, y + h), fym = fn(x, y - h);
    const double a = (fxp[0] - fxm[0]) / (2 * h), b = (fyp[0] - fym[0]) / (2 * h);
    const double c = (fxp[1] - fxm[1]) / (2 * h), d = (fyp[1] - fym[1]) / (2 * h);
    return a * d - b * c;
}

} // namespace oracle
