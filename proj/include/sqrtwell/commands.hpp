#pragma once

// Report builders behind the command-line subcommands. Each returns a
// Report that the caller renders as CSV or JSON.

#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"
#include "sqrtwell/exact.hpp"
#include "sqrtwell/fit.hpp"
#include "sqrtwell/relmap.hpp"
#include "sqrtwell/report.hpp"

#include <string>
#include <vector>

namespace sqrtwell::commands {

using report::Cell;
using report::Diagnostic;
using report::Report;

inline nlohmann::ordered_json describe(const afm::PrincipalN& N)
{
    nlohmann::ordered_json out = std::string(afm::to_string(N.variant()));
    if (N.coefficients()) {
        out = nlohmann::ordered_json{
            {"variant", afm::to_string(N.variant())}, {"A", N.coefficients()->first}, {"C", N.coefficients()->second}};
    }
    return out;
}

inline nlohmann::ordered_json describe(const exact::MeshConfig& cfg)
{
    nlohmann::ordered_json out{{"mesh_size", cfg.size}};
    out["mesh_scale"] = cfg.scale ? nlohmann::ordered_json(*cfg.scale) : nlohmann::ordered_json(nullptr);
    return out;
}

inline Report eval(const PotentialParams& params, const QuantumNumbers& qn, const afm::PrincipalN& N, double eta)
{
    const auto evaluation = afm::afm_evaluate(params, qn, N);
    const auto simple = afm::afm_energy_simple(params, qn, N, eta);

    Report out;
    out.command = "eval";
    out.parameters = {{"m", params.m}, {"a", params.a}, {"b", params.b}, {"n", qn.n}, {"l", qn.l},
                      {"N", describe(N)}, {"eta", eta}};
    out.columns = {"n", "l", "value", "kind", "N_used", "Y", "G", "simple"};
    out.rows.push_back({Cell{static_cast<long long>(qn.n)}, Cell{static_cast<long long>(qn.l)},
                        Cell{evaluation.estimate.value()}, Cell{std::string(to_string(evaluation.estimate.kind()))},
                        Cell{evaluation.N}, Cell{evaluation.quartic.Y}, Cell{evaluation.quartic.G},
                        Cell{simple.value()}});
    return out;
}

/// Exact level of the reduced problem, or of the physical one when `params` is set.
inline Report exact_level(double beta, const std::optional<PotentialParams>& params, const QuantumNumbers& qn,
                          const exact::MeshConfig& cfg)
{
    Report out;
    out.command = "exact";
    double scale = 1.0;
    if (params) {
        const auto reduced = reduce(*params);
        beta = reduced.beta;
        scale = reduced.scale;
        out.parameters = {{"m", params->m}, {"a", params->a}, {"b", params->b}};
    } else {
        out.parameters = {{"beta", beta}};
    }
    out.parameters["n"] = qn.n;
    out.parameters["l"] = qn.l;
    out.parameters["mesh"] = describe(cfg);

    const auto level = exact::solve_reduced_detailed(beta, qn, cfg);
    out.columns = {"n", "l", "beta", "value", "mesh_size", "refinement_delta"};
    out.rows.push_back({Cell{static_cast<long long>(qn.n)}, Cell{static_cast<long long>(qn.l)}, Cell{beta},
                        Cell{unreduce(level.value, {beta, scale})}, Cell{static_cast<long long>(level.mesh_size)},
                        Cell{Diagnostic{scale * level.refinement_delta}}});
    return out;
}

namespace detail {

inline exact::SpectrumResult converged_spectrum(double beta, int n_max, int l_max, const exact::MeshConfig& cfg)
{
    auto spectrum = exact::spectrum(beta, n_max, l_max, cfg);
    for (const auto& level : spectrum.entries) {
        if (!level.converged) {
            throw exact::refinement_failure(level.qn, level.coarser_value, level.value);
        }
    }
    return spectrum;
}

inline nlohmann::ordered_json grid_parameters(double beta, int n_max, int l_max, const exact::MeshConfig& cfg)
{
    return {{"beta", beta}, {"nmax", n_max}, {"lmax", l_max}, {"mesh", describe(cfg)}};
}

} // namespace detail

/// Per state: upper (harmonic N), exact, fitted and lower (Coulomb N).
inline Report table(double beta, int n_max, int l_max, const exact::MeshConfig& cfg)
{
    const auto spectrum = detail::converged_spectrum(beta, n_max, l_max, cfg);
    Report out;
    out.command = "table";
    out.parameters = detail::grid_parameters(beta, n_max, l_max, cfg);
    out.columns = {"n", "l", "upper", "exact", "fitted", "lower"};
    for (const auto& level : spectrum.entries) {
        const auto& qn = level.qn;
        out.rows.push_back({Cell{static_cast<long long>(qn.n)}, Cell{static_cast<long long>(qn.l)},
                            Cell{afm::afm_energy_reduced(beta, qn, afm::PrincipalN::harmonic()).value()},
                            Cell{level.value},
                            Cell{afm::afm_energy_reduced(beta, qn, afm::PrincipalN::fitted()).value()},
                            Cell{afm::afm_energy_reduced(beta, qn, afm::PrincipalN::coulomb()).value()}});
    }
    return out;
}

/// Lower bound, fitted approximation, exact value, upper bound and
/// whether the exact value lies between the bounds.
inline Report bounds(double beta, int n_max, int l_max, const exact::MeshConfig& cfg)
{
    const auto spectrum = detail::converged_spectrum(beta, n_max, l_max, cfg);
    Report out;
    out.command = "bounds";
    out.parameters = detail::grid_parameters(beta, n_max, l_max, cfg);
    out.columns = {"n", "l", "lower", "approx", "exact", "upper", "sandwich"};
    for (const auto& level : spectrum.entries) {
        const auto& qn = level.qn;
        const double lower = afm::afm_energy_reduced(beta, qn, afm::PrincipalN::coulomb()).value();
        const double upper = afm::afm_energy_reduced(beta, qn, afm::PrincipalN::harmonic()).value();
        out.rows.push_back({Cell{static_cast<long long>(qn.n)}, Cell{static_cast<long long>(qn.l)}, Cell{lower},
                            Cell{afm::afm_energy_reduced(beta, qn, afm::PrincipalN::fitted()).value()},
                            Cell{level.value}, Cell{upper}, Cell{lower <= level.value && level.value <= upper}});
    }
    return out;
}

inline nlohmann::ordered_json describe(const fit::RationalForm& form)
{
    return {{"p", form.p}, {"q", form.q}, {"r", form.r}, {"s", form.s}};
}

struct FitRun {
    Report report;
    bool complete = true; ///< false when some per-beta fit failed
};

/// Per-beta fitted coefficients beside the reference hyperbolic curves,
/// plus a global hyperbolic fit when the samples allow one.
inline FitRun fit(const std::vector<double>& betas, int n_max, int l_max, const exact::MeshConfig& cfg)
{
    sqrtwell::detail::require(!betas.empty(), "at least one beta is required");
    for (double beta : betas) {
        sqrtwell::detail::require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
    }
    const auto outcomes = fit::fit_betas(betas, n_max, l_max, cfg);

    FitRun run;
    std::vector<fit::FitSample> samples;
    for (const auto& outcome : outcomes) {
        if (outcome.sample) {
            samples.push_back(*outcome.sample);
        } else {
            run.complete = false;
            run.report.warnings.push_back("fit failed at beta = " + std::to_string(outcome.beta) + ": " +
                                          outcome.error);
        }
    }

    std::optional<fit::HyperbolicCoefficients> global;
    try {
        global = fit::fit_hyperbolic(samples);
    } catch (const std::exception& e) {
        run.report.warnings.push_back(std::string("no global hyperbolic fit: ") + e.what());
    }

    Report& out = run.report;
    out.command = "fit";
    out.parameters = {{"betas", betas}, {"nmax", n_max}, {"lmax", l_max}, {"mesh", describe(cfg)}};
    const auto reference = fit::HyperbolicCoefficients::reference();
    out.extra["reference_curves"] = {{"A", describe(reference.A)}, {"C", describe(reference.C)}};
    out.extra["hyperbolic_fit"] = global ? nlohmann::ordered_json{{"A", describe(global->A)}, {"C", describe(global->C)}}
                                         : nlohmann::ordered_json(nullptr);
    out.extra["complete"] = run.complete;

    out.columns = {"beta", "A", "C", "chi", "A_reference", "C_reference"};
    if (global) {
        out.columns.insert(out.columns.end(), {"A_global", "C_global"});
    }
    out.columns.push_back("converged");
    for (const auto& outcome : outcomes) {
        const auto [a_ref, c_ref] = fit::hyperbolic_AC(outcome.beta);
        const auto& s = outcome.sample;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        std::vector<Cell> row{Cell{outcome.beta}, Cell{s ? s->A : nan}, Cell{s ? s->C : nan},
                              Cell{Diagnostic{s ? s->chi : nan}}, Cell{a_ref}, Cell{c_ref}};
        if (global) {
            row.emplace_back(global->A(outcome.beta));
            row.emplace_back(global->C(outcome.beta));
        }
        row.emplace_back(s.has_value());
        out.rows.push_back(std::move(row));
    }
    return run;
}

inline Report salpeter(const relmap::SalpeterParams& sp, const QuantumNumbers& qn, const afm::PrincipalN& N)
{
    const PotentialParams params = relmap::from_salpeter(sp);
    const auto energy = relmap::salpeter_spectrum(sp, qn, N);
    Report out;
    out.command = "salpeter";
    out.parameters = {{"omega", sp.omega}, {"M", sp.M}, {"sigma", sp.sigma}, {"n", qn.n}, {"l", qn.l},
                      {"N", describe(N)}};
    out.columns = {"n", "l", "m", "a", "b", "value", "kind"};
    out.rows.push_back({Cell{static_cast<long long>(qn.n)}, Cell{static_cast<long long>(qn.l)}, Cell{params.m},
                        Cell{params.a}, Cell{params.b}, Cell{energy.value()},
                        Cell{std::string(to_string(energy.kind()))}});
    if (!sp.physical_omega()) {
        out.warnings.push_back("omega = " + std::to_string(sp.omega) +
                               " does not describe one (1) or two (2) particles of mass M");
    }
    return out;
}

} // namespace sqrtwell::commands
