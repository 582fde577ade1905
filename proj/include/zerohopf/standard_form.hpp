#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <random>

namespace zerohopf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A T-periodic field in averaging standard form
//   z' = eps F1(z, t) + eps^2 F2(z, t) + O(eps^3).
// Evaluators are immutable after construction and may be shared between threads.
struct StandardFormSystem {
    using Field = std::function<Vec(const Vec&, double)>;
    using Jacobian = std::function<Mat(const Vec&, double)>;

    int dim = 0;
    double period = 0.0;
    Field F1;
    Field F2;
    std::optional<Jacobian> dF1; // analytic D_z F1 when available
};

// Largest ||F(z, t) - F(z, t + T)|| over random samples of z in [-scale, scale]^n
// and t in [0, T], taken over both F1 and F2.
inline double periodicity_defect(const StandardFormSystem& sys, std::mt19937_64& rng,
                                 int samples = 64, double scale = 5.0) {
    std::uniform_real_distribution<double> coord(-scale, scale);
    std::uniform_real_distribution<double> time(0.0, sys.period);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Vec z(sys.dim);
        for (int i = 0; i < sys.dim; ++i) z[i] = coord(rng);
        const double t = time(rng);
        worst = std::max(worst, (sys.F1(z, t) - sys.F1(z, t + sys.period)).norm());
        worst = std::max(worst, (sys.F2(z, t) - sys.F2(z, t + sys.period)).norm());
    }
    return worst;
}

} // namespace zerohopf
