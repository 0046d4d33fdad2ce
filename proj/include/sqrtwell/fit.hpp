#pragma once

// Fitting the coefficients of N = A n + l + C so that the closed-form
// energies reproduce a reference spectrum, and global hyperbolic forms
// (p beta + q) / (r beta + s) for A(beta) and C(beta).

#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"
#include "sqrtwell/exact.hpp"
#include "sqrtwell/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sqrtwell::fit {

/// Best (A, C) at one beta and the residual at the minimum.
struct FitSample {
    double beta = 0.0;
    double A = 0.0;
    double C = 0.0;
    double chi = 0.0;
};

/// f(beta) = (p beta + q) / (r beta + s)
struct RationalForm {
    double p = 0.0;
    double q = 0.0;
    double r = 1.0;
    double s = 1.0;

    double operator()(double beta) const { return (p * beta + q) / (r * beta + s); }
    double limit() const { return p / r; }
    /// Sign of df/dbeta everywhere the form is regular.
    double derivative_numerator() const { return p * s - q * r; }
};

struct HyperbolicCoefficients {
    RationalForm A;
    RationalForm C;

    /// A = (8 beta + 102) / (4 beta + 57), C = (30 beta + 53) / (20 beta + 39).
    static HyperbolicCoefficients reference() { return {{8.0, 102.0, 4.0, 57.0}, {30.0, 53.0, 20.0, 39.0}}; }
};

/// Asymptotes imposed on the hyperbolic forms (harmonic oscillator values).
inline constexpr double A_limit = 2.0;
inline constexpr double C_limit = 1.5;

inline std::pair<double, double> hyperbolic_AC(double beta)
{
    detail::require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
    return {afm::fitted_A(beta), afm::fitted_C(beta)};
}

/// Mean squared deviation between two equally shaped grids.
inline double chi_square(std::span<const double> reference, std::span<const double> approx)
{
    detail::require(reference.size() == approx.size() && !reference.empty(), "grid mismatch in chi-square");
    double sum = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference[i] - approx[i];
        sum += d * d;
    }
    return sum / static_cast<double>(reference.size());
}

/// Closed-form grid for N = A n + l + C, multiplied by `energy_scale`.
inline std::vector<double> afm_grid(double beta, double A, double C, int n_max, int l_max, double energy_scale = 1.0)
{
    detail::require(A > 0.0 && C > 0.0, "A and C must be positive");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>((n_max + 1) * (l_max + 1)));
    for (int n = 0; n <= n_max; ++n) {
        for (int l = 0; l <= l_max; ++l) {
            grid.push_back(energy_scale * afm::afm_energy_reduced(beta, A * n + l + C));
        }
    }
    return grid;
}

inline std::vector<double> values_of(const exact::SpectrumResult& exact, double energy_scale = 1.0)
{
    std::vector<double> values;
    values.reserve(exact.entries.size());
    for (const auto& e : exact.entries) {
        values.push_back(energy_scale * e.value);
    }
    return values;
}

/// Deviation between the reference spectrum and the closed form with
/// N = A n + l + C, both grids multiplied by `energy_scale`.
inline double chi_square(double beta, double A, double C, const exact::SpectrumResult& exact,
                         double energy_scale = 1.0)
{
    detail::require(std::abs(exact.beta - beta) <= 1e-12 * std::max(1.0, beta), "grid was computed at another beta");
    detail::require(exact.entries.size() == static_cast<std::size_t>((exact.n_max + 1) * (exact.l_max + 1)),
                    "grid mismatch in chi-square");
    const auto reference = values_of(exact, energy_scale);
    const auto approx = afm_grid(beta, A, C, exact.n_max, exact.l_max, energy_scale);
    return chi_square(reference, approx);
}

struct FitStart {
    double A;
    double C;
};

/// Starting point followed by the restart.
inline constexpr std::array<FitStart, 2> fit_starts{{{2.0, 1.5}, {1.8, 1.36}}};

/// Minimizes chi_square over (A, C). The minimum is accepted only if the
/// central-difference Hessian there is positive definite.
inline FitSample fit_AC(double beta, const exact::SpectrumResult& exact, double energy_scale = 1.0)
{
    detail::require(exact.all_converged(), "reference spectrum contains unconverged levels");
    const auto reference = values_of(exact, energy_scale);
    auto objective = [&](const simplex::Point<2>& x) {
        if (!(x[0] > 0.0) || !(x[1] > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        return chi_square(reference, afm_grid(beta, x[0], x[1], exact.n_max, exact.l_max, energy_scale));
    };
    // validates beta against the grid
    (void)chi_square(beta, fit_starts[0].A, fit_starts[0].C, exact, energy_scale);

    std::optional<simplex::Result<2>> best;
    for (const auto& start : fit_starts) {
        const auto run = simplex::minimize<2>(objective, {start.A, start.C});
        if (run.converged && (!best || run.value < best->value)) {
            best = run;
        }
    }
    if (!best) {
        throw numerical_failure("simplex search for (A, C) did not converge at beta = " + std::to_string(beta));
    }

    const auto [A, C] = best->argmin;
    constexpr double h = 1e-3;
    auto f = [&](double a, double c) { return objective({a, c}); };
    const double f0 = f(A, C);
    const double haa = (f(A + h, C) - 2.0 * f0 + f(A - h, C)) / (h * h);
    const double hcc = (f(A, C + h) - 2.0 * f0 + f(A, C - h)) / (h * h);
    const double hac = (f(A + h, C + h) - f(A + h, C - h) - f(A - h, C + h) + f(A - h, C - h)) / (4.0 * h * h);
    if (!(haa > 0.0) || !(haa * hcc - hac * hac > 0.0)) {
        throw numerical_failure("fitted (A, C) is not a strict local minimum at beta = " + std::to_string(beta));
    }
    return {beta, A, C, best->value};
}

/// Outcome of one per-beta fit in a batch.
struct FitOutcome {
    double beta = 0.0;
    std::optional<FitSample> sample;
    std::string error;
};

/// Reference spectrum and fit for every beta, evaluated concurrently.
inline std::vector<FitOutcome> fit_betas(const std::vector<double>& betas, int n_max = 4, int l_max = 4,
                                         const exact::MeshConfig& cfg = {})
{
    std::vector<std::future<FitOutcome>> jobs;
    jobs.reserve(betas.size());
    for (double beta : betas) {
        jobs.push_back(std::async(std::launch::async, [=] {
            FitOutcome outcome{beta, std::nullopt, {}};
            try {
                outcome.sample = fit_AC(beta, exact::spectrum(beta, n_max, l_max, cfg));
            } catch (const std::exception& e) {
                outcome.error = e.what();
            }
            return outcome;
        }));
    }
    std::vector<FitOutcome> outcomes;
    outcomes.reserve(jobs.size());
    for (auto& job : jobs) {
        outcomes.push_back(job.get());
    }
    return outcomes;
}

namespace detail {

/// Least-squares (L beta + q) / (beta + s) through the points.
inline RationalForm fit_constrained_form(std::span<const double> betas, std::span<const double> values, double limit)
{
    const auto count = static_cast<Eigen::Index>(betas.size());

    // f (beta + s) = L beta + q is linear in (s, q); use it as the start.
    Eigen::MatrixXd design(count, 2);
    Eigen::VectorXd target(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        design(i, 0) = values[i];
        design(i, 1) = -1.0;
        target[i] = (limit - values[i]) * betas[i];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 2) {
        throw invalid_input("samples are degenerate for a hyperbolic fit");
    }
    Eigen::Vector2d sq = qr.solve(target);
    double s = sq[0];
    double q = sq[1];

    auto sse = [&](double qq, double ss) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < count; ++i) {
            const double d = values[i] - (limit * betas[i] + qq) / (betas[i] + ss);
            total += d * d;
        }
        return total;
    };

    // Gauss-Newton on the true residuals, with step halving.
    double current = sse(q, s);
    for (int iter = 0; iter < 100; ++iter) {
        Eigen::MatrixXd jac(count, 2);
        Eigen::VectorXd res(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            const double den = betas[i] + s;
            const double model = (limit * betas[i] + q) / den;
            res[i] = values[i] - model;
            jac(i, 0) = 1.0 / den;
            jac(i, 1) = -model / den;
        }
        const Eigen::Vector2d step = jac.colPivHouseholderQr().solve(res);
        double t = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving) {
            const double trial = sse(q + t * step[0], s + t * step[1]);
            if (trial <= current && std::isfinite(trial)) {
                q += t * step[0];
                s += t * step[1];
                improved = current - trial > 1e-30;
                current = trial;
                break;
            }
            t *= 0.5;
        }
        if (!improved || step.norm() <= 1e-15 * (1.0 + std::abs(q) + std::abs(s))) {
            break;
        }
    }
    if (!(s > 0.0) || !std::isfinite(q)) {
        throw numerical_failure("hyperbolic fit has a pole on beta >= 0");
    }
    return {limit, q, 1.0, s};
}

} // namespace detail

/// Global hyperbolic forms with the asymptotes A -> 2 and C -> 3/2 imposed.
/// Requires at least four samples spanning two decades of beta.
inline HyperbolicCoefficients fit_hyperbolic(const std::vector<FitSample>& samples)
{
    sqrtwell::detail::require(samples.size() >= 4, "hyperbolic fit needs at least four samples");
    double smallest_positive = std::numeric_limits<double>::infinity();
    double largest = 0.0;
    std::vector<double> betas;
    std::vector<double> a_values;
    std::vector<double> c_values;
    for (const auto& sample : samples) {
        sqrtwell::detail::require(std::isfinite(sample.beta) && sample.beta >= 0.0, "sample beta must be non-negative");
        sqrtwell::detail::require(sample.A > 0.0 && sample.C > 0.0, "sample coefficients must be positive");
        if (sample.beta > 0.0) {
            smallest_positive = std::min(smallest_positive, sample.beta);
        }
        largest = std::max(largest, sample.beta);
        betas.push_back(sample.beta);
        a_values.push_back(sample.A);
        c_values.push_back(sample.C);
    }
    sqrtwell::detail::require(std::isfinite(smallest_positive) && largest >= 100.0 * smallest_positive,
                              "samples must span at least two decades of beta");
    return {detail::fit_constrained_form(betas, a_values, A_limit),
            detail::fit_constrained_form(betas, c_values, C_limit)};
}

} // namespace sqrtwell::fit
