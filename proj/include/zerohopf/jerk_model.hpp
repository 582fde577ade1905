#pragma once

#include <array>
#include <complex>
#include <vector>

namespace zerohopf {

// Parameters of x''' = -a x'' + x x'^2 - x^3 - b x + c x'.
struct SystemParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct State3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const State3&, const State3&) = default;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Coefficients of c3*l^3 + c2*l^2 + c1*l + c0, highest degree first.
struct Cubic {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    [[nodiscard]] std::complex<double> operator()(std::complex<double> l) const {
        return ((c3 * l + c2) * l + c1) * l + c0;
    }
};

enum class EquilibriumKind { ZeroHopf, Hyperbolic, OtherNonHyperbolic };

struct EquilibriumClass {
    State3 point;
    std::array<std::complex<double>, 3> eigenvalues;
    EquilibriumKind kind = EquilibriumKind::Hyperbolic;
};

inline constexpr double kDefaultEigTol = 1e-10;
inline constexpr double kDefaultEquilibriumTol = 1e-9;

[[nodiscard]] State3 vector_field(const SystemParams& p, const State3& s) noexcept;

[[nodiscard]] Matrix3 jacobian_at(const SystemParams& p, const State3& s) noexcept;

// Always contains the origin first; (+-sqrt(-b), 0, 0) follow when b < 0.
[[nodiscard]] std::vector<State3> equilibria(const SystemParams& p);

// p(l) = -l^3 - a l^2 + c l - b - 3 x^2, the characteristic polynomial of the
// linearization at (x, 0, 0).
[[nodiscard]] Cubic char_poly(const SystemParams& p, double x) noexcept;

// Roots of a genuine cubic (c3 != 0), Newton-polished, sorted by real part
// then imaginary part.
[[nodiscard]] std::array<std::complex<double>, 3> cubic_roots(const Cubic& poly);

[[nodiscard]] EquilibriumClass classify_equilibrium(const SystemParams& p, const State3& s,
                                                    double tol_eig = kDefaultEigTol,
                                                    double tol_equilibrium = kDefaultEquilibriumTol);

[[nodiscard]] const char* to_string(EquilibriumKind kind) noexcept;

} // namespace zerohopf
