#pragma once

// Closed-form auxiliary field estimates for the square root potential.
//
// With the harmonic auxiliary function the surrogate Hamiltonian has the
// spectrum E(nu) = sqrt(2 N^2 nu / m) + a^2/(4 nu) + b nu / a^2. Its minimum
// over nu is governed by the quartic 4 x^4 - 8 x - 3 Y = 0 whose positive
// root G(Y) is available in closed form via the resolvent cubic
// V^3 + 3 Y V - 4 = 0. The energy at the minimum is
//
//     E = 1/2 (2 a^2 N^2 / m)^{1/3} [G(Y)^2 + 1/G(Y)],
//
// which is regular at b = 0. The choice of N decides whether the result is
// an upper bound (N = 2n + l + 3/2), a lower bound (N = n + l + 1) or an
// approximation.

#include "sqrtwell/core.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

namespace sqrtwell::afm {

/// Below this Y the resolvent root is taken from Cardano's formula, above
/// it Newton iteration avoids the cancellation between two ~Y^{1/2} terms
/// (Cardano loses about Y^{3/2} ulps).
inline constexpr double cardano_newton_switch = 10.0;

/// Hyperbolic fits of the coefficients of N = A(beta) n + l + C(beta).
inline double fitted_A(double beta) { return (8.0 * beta + 102.0) / (4.0 * beta + 57.0); }
inline double fitted_C(double beta) { return (30.0 * beta + 53.0) / (20.0 * beta + 39.0); }

/// How the principal quantum number N(n, l, beta) is formed.
class PrincipalN {
  public:
    enum class Variant { Harmonic, Coulomb, LinearApprox, Fitted };

    static PrincipalN harmonic() { return PrincipalN(Variant::Harmonic); }
    static PrincipalN coulomb() { return PrincipalN(Variant::Coulomb); }
    static PrincipalN linear_approx() { return PrincipalN(Variant::LinearApprox); }

    /// Fitted N using the built-in hyperbolic A(beta), C(beta).
    static PrincipalN fitted() { return PrincipalN(Variant::Fitted); }

    /// Fitted N with fixed user-supplied coefficients.
    static PrincipalN fitted(double A, double C)
    {
        detail::require(std::isfinite(A) && A > 0.0, "fitted coefficient A must be positive");
        detail::require(std::isfinite(C) && C > 0.0, "fitted coefficient C must be positive");
        PrincipalN result(Variant::Fitted);
        result.coefficients_ = std::pair{A, C};
        return result;
    }

    Variant variant() const { return variant_; }
    const std::optional<std::pair<double, double>>& coefficients() const { return coefficients_; }

    double value(const QuantumNumbers& qn, double beta) const
    {
        qn.validate();
        const double n = qn.n;
        const double l = qn.l;
        switch (variant_) {
            case Variant::Harmonic:
                return 2.0 * n + l + 1.5;
            case Variant::Coulomb:
                return n + l + 1.0;
            case Variant::LinearApprox: {
                const double s3 = std::numbers::sqrt3;
                return (std::numbers::pi / s3) * n + l + s3 * std::numbers::pi / 4.0;
            }
            case Variant::Fitted: {
                if (coefficients_) {
                    return coefficients_->first * n + l + coefficients_->second;
                }
                detail::require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
                return fitted_A(beta) * n + l + fitted_C(beta);
            }
        }
        return 0.0;
    }

    /// Bound direction guaranteed by the choice of auxiliary function.
    EstimateKind kind() const
    {
        switch (variant_) {
            case Variant::Harmonic:
                return EstimateKind::UpperBound;
            case Variant::Coulomb:
                return EstimateKind::LowerBound;
            default:
                return EstimateKind::Approximation;
        }
    }

  private:
    explicit PrincipalN(Variant variant)
        : variant_(variant)
    {}

    Variant variant_;
    std::optional<std::pair<double, double>> coefficients_;
};

inline std::string_view to_string(PrincipalN::Variant variant)
{
    switch (variant) {
        case PrincipalN::Variant::Harmonic:
            return "harmonic";
        case PrincipalN::Variant::Coulomb:
            return "coulomb";
        case PrincipalN::Variant::LinearApprox:
            return "linear";
        case PrincipalN::Variant::Fitted:
            return "fitted";
    }
    return "unknown";
}

/// Intermediates of the closed-form quartic solution.
struct QuarticSolution {
    double Y = 0.0;
    double V = 0.0;
    double G = 0.0;
    double residual = 0.0; ///< |4G^4 - 8G - 3Y|
};

namespace detail {

inline void require_positive_N(double N)
{
    sqrtwell::detail::require(std::isfinite(N) && N > 0.0, "N must be finite and positive");
}

} // namespace detail

inline double compute_Y(const PotentialParams& params, double N)
{
    params.validate();
    detail::require_positive_N(N);
    return 16.0 * params.b / 3.0 * std::pow(params.m / (2.0 * params.a * params.a * N * N), 2.0 / 3.0);
}

inline double compute_Y_reduced(double beta, double N)
{
    sqrtwell::detail::require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
    detail::require_positive_N(N);
    return 16.0 * beta / (3.0 * std::pow(N, 4.0 / 3.0));
}

/// Positive real root of V^3 + 3 Y V - 4 = 0.
inline double cardano_V(double Y)
{
    sqrtwell::detail::require(std::isfinite(Y) && Y >= 0.0, "Y must be finite and non-negative");
    if (Y <= cardano_newton_switch) {
        const double s = std::cbrt(2.0 + std::sqrt(4.0 + Y * Y * Y));
        return s - Y / s;
    }
    // f is convex and increasing for V > 0 and f(4/(3Y)) > 0, so Newton
    // converges monotonically from above.
    double v = 4.0 / (3.0 * Y);
    for (int iter = 0; iter < 50; ++iter) {
        const double f = v * v * v + 3.0 * Y * v - 4.0;
        const double step = f / (3.0 * v * v + 3.0 * Y);
        v -= step;
        if (std::abs(step) <= 1e-16 * v) {
            break;
        }
    }
    return v;
}

/// Unique positive root x0 = G(Y) of 4 x^4 - 8 x - 3 Y = 0.
inline QuarticSolution solve_G(double Y)
{
    sqrtwell::detail::require(std::isfinite(Y), "Y must be finite");
    sqrtwell::detail::require(Y >= 0.0, "Y must be non-negative");
    const double v = cardano_V(Y);
    const double radicand = 4.0 / std::sqrt(v) - v;
    if (!(v > 0.0) || !(radicand > 0.0)) {
        throw numerical_failure("quartic root: radicand 4/sqrt(V) - V is not positive");
    }
    const double g = 0.5 * std::sqrt(v) + 0.5 * std::sqrt(radicand);
    const double g2 = g * g;
    return {Y, v, g, std::abs(4.0 * g2 * g2 - 8.0 * g - 3.0 * Y)};
}

/// Eigenvalue of the surrogate Hamiltonian at a fixed auxiliary field nu.
inline double energy_of_nu(double nu, const PotentialParams& params, double N)
{
    params.validate();
    detail::require_positive_N(N);
    sqrtwell::detail::require(std::isfinite(nu) && nu > 0.0, "nu must be strictly positive");
    const auto& [m, a, b] = params;
    return std::sqrt(2.0 * N * N * nu / m) + a * a / (4.0 * nu) + b * nu / (a * a);
}

/// Auxiliary field nu0 corresponding to the quartic root x0.
inline double nu_from_x0(double x0, const PotentialParams& params, double N)
{
    // x0 = a^{2/3} (m / 2N^2)^{1/6} nu0^{-1/2}
    return std::pow(params.a, 4.0 / 3.0) * std::cbrt(params.m / (2.0 * N * N)) / (x0 * x0);
}

/// Full record of one closed-form evaluation.
struct AfmEvaluation {
    EnergyEstimate estimate;
    double N;
    QuarticSolution quartic;
    double nu0;
};

inline AfmEvaluation afm_evaluate(const PotentialParams& params, const QuantumNumbers& qn, const PrincipalN& N)
{
    params.validate();
    qn.validate();
    const double beta = reduce(params).beta;
    const double n_value = N.value(qn, beta);
    const QuarticSolution quartic = solve_G(compute_Y(params, n_value));
    const double g = quartic.G;
    // 2 sqrt(b / 3Y) == 1/2 (2 a^2 N^2 / m)^{1/3}
    const double prefactor = 0.5 * std::cbrt(2.0 * params.a * params.a * n_value * n_value / params.m);
    return {EnergyEstimate(prefactor * (g * g + 1.0 / g), N.kind()), n_value, quartic,
            nu_from_x0(g, params, n_value)};
}

inline EnergyEstimate afm_energy(const PotentialParams& params, const QuantumNumbers& qn, const PrincipalN& N)
{
    return afm_evaluate(params, qn, N).estimate;
}

/// Dimensionless energy epsilon(beta) for a given value of N.
inline double afm_energy_reduced(double beta, double N)
{
    const QuarticSolution quartic = solve_G(compute_Y_reduced(beta, N));
    const double g = quartic.G;
    return 0.5 * std::cbrt(N * N) * (g * g + 1.0 / g);
}

inline EnergyEstimate afm_energy_reduced(double beta, const QuantumNumbers& qn, const PrincipalN& N)
{
    return {afm_energy_reduced(beta, N.value(qn, beta)), N.kind()};
}

/// Interpolating form that avoids G(Y); exact at both Y -> 0 and Y -> infinity
/// to lowest order. Within 2% of afm_energy for eta = 1.
inline EnergyEstimate afm_energy_simple(const PotentialParams& params, const QuantumNumbers& qn, const PrincipalN& N,
                                        double eta = 1.0)
{
    params.validate();
    sqrtwell::detail::require_finite(eta, "eta");
    const double n_value = N.value(qn, reduce(params).beta);
    const double Y = compute_Y(params, n_value);
    // sqrt(b / 3Y) == 1/4 (2 a^2 N^2 / m)^{1/3}
    const double prefactor = 0.25 * std::cbrt(2.0 * params.a * params.a * n_value * n_value / params.m);
    const double shift = 3.0 * std::cbrt(4.0) - eta;
    return {prefactor * (std::sqrt(3.0 * Y + shift * shift) + eta), EstimateKind::Approximation};
}

/// b -> 0 limit: E = 3/2 (a^2/m)^{1/3} N^{2/3}.
inline double asymptotic_linear(const PotentialParams& params, double N)
{
    params.validate();
    detail::require_positive_N(N);
    return 1.5 * std::cbrt(params.a * params.a / params.m) * std::cbrt(N * N);
}

/// b -> infinity limit: harmonic oscillator plus the constant sqrt(b).
inline double harmonic_limit(const PotentialParams& params, const QuantumNumbers& qn)
{
    params.validate();
    qn.validate();
    sqrtwell::detail::require(params.b > 0.0, "harmonic limit requires b > 0");
    const double sqrt_b = std::sqrt(params.b);
    return params.a / std::sqrt(params.m * sqrt_b) * (2.0 * qn.n + qn.l + 1.5) + sqrt_b;
}

struct Bounds {
    EnergyEstimate lower;
    EnergyEstimate upper;
};

inline Bounds bounds(const PotentialParams& params, const QuantumNumbers& qn)
{
    return {afm_energy(params, qn, PrincipalN::coulomb()), afm_energy(params, qn, PrincipalN::harmonic())};
}

} // namespace sqrtwell::afm
