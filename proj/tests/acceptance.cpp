// Acceptance suite. Run without arguments for every criterion, or pass
// criterion numbers to run a subset. Prints one PASS/FAIL line each and
// exits non-zero if anything failed.

#include "oracles.hpp"
#include "table1.hpp"

#include "sqrtwell/afm.hpp"
#include "sqrtwell/exact.hpp"
#include "sqrtwell/fit.hpp"
#include "sqrtwell/relmap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace sqrtwell;
using afm::PrincipalN;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds; // 0 means no limit
    std::function<Verdict()> check;
};

std::string fmt(const char* format, auto... args)
{
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

const PotentialParams unit{2.0, 1.0, 1.0};

std::vector<double> y_grid()
{
    std::vector<double> ys{0.0};
    const int points = 901; // 100 per decade
    for (int i = 0; i < points; ++i) {
        ys.push_back(std::pow(10.0, -3.0 + 9.0 * i / (points - 1)));
    }
    return ys;
}

Verdict table_exact()
{
    double worst = 0.0;
    const auto s = exact::spectrum(1.0, 4, 4);
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const double v = exact::solve_reduced(1.0, {n, l}).value();
            worst = std::max(worst, std::abs(v - testdata::table1_exact[n][l]));
            worst = std::max(worst, std::abs(s.at(n, l).value - testdata::table1_exact[n][l]));
        }
    }
    return {worst <= 1e-5, fmt("max |exact - printed| = %.2e", worst)};
}

Verdict table_closed_form()
{
    const double tolerance = 1e-5 + 5e-6;
    double worst = 0.0;
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const QuantumNumbers qn{n, l};
            worst = std::max(worst, std::abs(afm::afm_energy(unit, qn, PrincipalN::harmonic()).value() -
                                             testdata::table1_upper[n][l]));
            worst = std::max(worst, std::abs(afm::afm_energy(unit, qn, PrincipalN::fitted()).value() -
                                             testdata::table1_fitted[n][l]));
            worst = std::max(worst, std::abs(afm::afm_energy(unit, qn, PrincipalN::coulomb()).value() -
                                             testdata::table1_lower[n][l]));
        }
    }
    return {worst <= tolerance, fmt("max deviation over 75 values = %.2e", worst)};
}

Verdict sandwich()
{
    int violations = 0;
    double tightest = 1e300;
    for (double beta : {0.0, 0.1, 1.0, 10.0, 100.0}) {
        const auto s = exact::spectrum(beta, 4, 4);
        if (!s.all_converged()) {
            return {false, fmt("unconverged reference at beta = %g", beta)};
        }
        for (int n = 0; n < 5; ++n) {
            for (int l = 0; l < 5; ++l) {
                const double e = s.at(n, l).value;
                const double lo = afm::afm_energy_reduced(beta, {n, l}, PrincipalN::coulomb()).value();
                const double up = afm::afm_energy_reduced(beta, {n, l}, PrincipalN::harmonic()).value();
                if (!(lo <= e && e <= up)) {
                    ++violations;
                }
                tightest = std::min({tightest, e - lo, up - e});
            }
        }
    }
    return {violations == 0, fmt("%d violations in 125 states, smallest margin %.2e", violations, tightest)};
}

Verdict fitted_accuracy()
{
    const auto s = exact::spectrum(1.0, 4, 4);
    double worst = 0.0;
    QuantumNumbers at{0, 0};
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const double e = s.at(n, l).value;
            const double rel = std::abs(afm::afm_energy_reduced(1.0, {n, l}, PrincipalN::fitted()).value() - e) / e;
            if (rel > worst) {
                worst = rel;
                at = {n, l};
            }
        }
    }
    // for comparison: the same N with coefficients fitted at this beta
    const auto sample = fit::fit_AC(1.0, s);
    double worst_local = 0.0;
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const double e = s.at(n, l).value;
            worst_local = std::max(
                worst_local,
                std::abs(afm::afm_energy_reduced(1.0, {n, l}, PrincipalN::fitted(sample.A, sample.C)).value() - e) /
                    e);
        }
    }
    return {worst <= 0.01, fmt("max relative error %.4f at (n,l)=(%d,%d); per-beta fit gives %.4f", worst, at.n, at.l,
                               worst_local)};
}

Verdict simple_formula()
{
    double worst = 0.0;
    double worst_y = 0.0;
    const double N = 1.5;
    for (double y : y_grid()) {
        // choose b so that the ground state (N = 3/2) sits at this Y
        const PotentialParams p{2.0, 1.0, 3.0 * y / 16.0 * std::pow(N, 4.0 / 3.0)};
        const double e = afm::afm_energy(p, {0, 0}, PrincipalN::harmonic()).value();
        const double s = afm::afm_energy_simple(p, {0, 0}, PrincipalN::harmonic(), 1.0).value();
        const double rel = std::abs(s - e) / e;
        if (rel > worst) {
            worst = rel;
            worst_y = y;
        }
    }
    return {worst <= 0.02, fmt("max relative deviation %.4f at Y = %.3g", worst, worst_y)};
}

Verdict residuals()
{
    double worst_quartic = 0.0;
    double worst_cubic = 0.0;
    for (double y : y_grid()) {
        const auto q = afm::solve_G(y);
        const double cubic = std::abs(q.V * q.V * q.V + 3.0 * y * q.V - 4.0);
        worst_quartic = std::max(worst_quartic, q.residual / (1e-10 * std::max(1.0, y)));
        worst_cubic = std::max(worst_cubic, cubic / (1e-10 * std::max(1.0, std::pow(y, 1.5))));
    }
    return {worst_quartic <= 1.0 && worst_cubic <= 1.0,
            fmt("worst residual / allowance: quartic %.2e, cubic %.2e", worst_quartic, worst_cubic)};
}

Verdict airy()
{
    const auto zeros = oracle::airy_zeros(3);
    double worst = 0.0;
    for (int n = 0; n < 3; ++n) {
        const double expected = zeros[n] / std::cbrt(4.0);
        worst = std::max(worst, std::abs(exact::solve_reduced(0.0, {n, 0}).value() - expected));
    }
    return {worst <= 1e-5, fmt("max deviation from Airy energies = %.2e", worst)};
}

Verdict asymptotics()
{
    bool decreasing = true;
    bool positive = true;
    std::string gaps;
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            double previous = INFINITY;
            for (double beta : {1e2, 1e4, 1e6}) {
                const PotentialParams p{2.0, 1.0, beta};
                const double limit = afm::harmonic_limit(p, {n, l});
                const double e = afm::afm_energy(p, {n, l}, PrincipalN::harmonic()).value();
                // the closed form approaches the limit from below
                const double gap = (limit - e) / e;
                positive = positive && gap > 0.0;
                decreasing = decreasing && gap < previous;
                previous = gap;
                if (n == 0 && l == 0) {
                    gaps += fmt("%.2e ", gap);
                }
            }
        }
    }
    double worst_linear = 0.0;
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const PotentialParams p{2.0, 1.0, 1e-12};
            const auto eval = afm::afm_evaluate(p, {n, l}, PrincipalN::harmonic());
            const double lin = afm::asymptotic_linear(p, eval.N);
            worst_linear = std::max(worst_linear, std::abs(eval.estimate.value() - lin) / lin);
        }
    }
    return {positive && decreasing && worst_linear <= 1e-8,
            fmt("ground-state gaps %s(positive %s, decreasing %s); linear limit rel %.2e", gaps.c_str(),
                positive ? "yes" : "no", decreasing ? "yes" : "no", worst_linear)};
}

Verdict scaling_law()
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> log_u(-2.0, 2.0);
    std::uniform_int_distribution<int> q(0, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const PotentialParams p{std::pow(10.0, log_u(rng)), std::pow(10.0, log_u(rng)),
                                trial == 0 ? 0.0 : std::pow(10.0, 1.5 * log_u(rng))};
        const auto reduced = reduce(p);
        const QuantumNumbers qn{q(rng), q(rng)};
        for (const auto& N : {PrincipalN::harmonic(), PrincipalN::coulomb(), PrincipalN::linear_approx(),
                              PrincipalN::fitted()}) {
            const double direct = afm::afm_energy(p, qn, N).value();
            const double via = unreduce(afm::afm_energy_reduced(reduced.beta, qn, N), reduced).value();
            worst = std::max(worst, std::abs(direct - via) / direct);
        }
    }
    return {worst <= 1e-12, fmt("max relative difference over 20 triples x 4 variants = %.2e", worst)};
}

Verdict fit_pipeline()
{
    const std::vector<double> betas{0.0, 1.0, 100.0};
    const auto outcomes = fit::fit_betas(betas);
    double worst = 0.0;
    std::string values;
    for (const auto& outcome : outcomes) {
        if (!outcome.sample) {
            return {false, fmt("fit failed at beta = %g: %s", outcome.beta, outcome.error.c_str())};
        }
        const auto [a, c] = fit::hyperbolic_AC(outcome.beta);
        worst = std::max({worst, std::abs(outcome.sample->A - a), std::abs(outcome.sample->C - c)});
        values += fmt("beta=%g A=%.4f C=%.4f; ", outcome.beta, outcome.sample->A, outcome.sample->C);
    }
    const auto& zero = *outcomes.front().sample;
    const double stated = std::max(std::abs(zero.A - 1.789), std::abs(zero.C - 1.359));
    return {worst <= 0.05 && stated <= 0.05,
            values + fmt("max dev from curves %.4f, from A(0),C(0) %.4f", worst, stated)};
}

Verdict salpeter()
{
    const relmap::SalpeterParams sp{1.0, 1.0, 0.25};
    bool identical = true;
    double worst_print = 0.0;
    for (int n = 0; n < 5; ++n) {
        for (int l = 0; l < 5; ++l) {
            const double v = relmap::salpeter_spectrum(sp, {n, l}, PrincipalN::harmonic()).value();
            identical = identical && v == afm::afm_energy(unit, {n, l}, PrincipalN::harmonic()).value();
            worst_print = std::max(worst_print, std::abs(v - testdata::table1_upper[n][l]));
        }
    }
    double worst_round_trip = 0.0;
    for (double m : {0.01, 0.3, 2.0, 17.0, 400.0}) {
        for (double a : {0.02, 0.5, 1.0, 9.0, 250.0}) {
            for (double b : {0.0, 1e-3, 1.0, 1e4}) {
                const auto back = relmap::from_salpeter(relmap::to_salpeter({m, a, b}));
                worst_round_trip = std::max({worst_round_trip, std::abs(back.m - m) / m, std::abs(back.a - a) / a,
                                             b > 0.0 ? std::abs(back.b - b) / b : std::abs(back.b)});
            }
        }
    }
    return {identical && worst_print <= 5e-6 && worst_round_trip <= 1e-12,
            fmt("same values as the closed form: %s, vs printed %.1e; round trip rel %.2e on 100 points",
                identical ? "yes" : "no", worst_print, worst_round_trip)};
}

const std::vector<Criterion> criteria{
    {1, "exact spectrum at beta = 1 reproduces the reference table", 30.0, table_exact},
    {2, "closed-form upper, fitted and lower values reproduce the table", 1.0, table_closed_form},
    {3, "lower <= exact <= upper for five offsets", 120.0, sandwich},
    {4, "fitted N within 1% of exact at beta = 1", 0.0, fitted_accuracy},
    {5, "simplified formula within 2% over the Y grid", 0.0, simple_formula},
    {6, "quartic and cubic residuals over the Y grid", 0.0, residuals},
    {7, "linear potential matches Airy zeros", 0.0, airy},
    {8, "harmonic and linear asymptotic limits", 0.0, asymptotics},
    {9, "scaling law on random parameters", 0.0, scaling_law},
    {10, "per-offset fit lands on the hyperbolic curves", 120.0, fit_pipeline},
    {11, "Salpeter mapping and round trip", 0.0, salpeter},
};

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    int failures = 0;
    int ran = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
            v.pass = false;
            v.detail += fmt(" [over the %.0f s budget]", c.budget_seconds);
        }
        std::printf("criterion %2d: %s  %s -- %s (%.2f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.title,
                    v.detail.c_str(), seconds);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no such criterion\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
