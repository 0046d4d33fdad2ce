// Command-line front end: closed-form estimates, reference eigenvalues,
// comparison tables, coefficient fits and the Salpeter mapping.
//
// Exit codes: 0 success, 2 input or validation error, 3 numerical failure.

#include "sqrtwell/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace sqrtwell;

constexpr int exit_input = 2;
constexpr int exit_numerical = 3;

struct GlobalFlags {
    std::string config_path;
    std::optional<std::string> format;
    std::optional<int> precision;
    std::optional<int> mesh_size;
    std::optional<double> mesh_scale;
    std::string out_path;
};

struct StateFlags {
    int n = 0;
    int l = 0;
    std::optional<std::string> variant;
    std::optional<double> A;
    std::optional<double> C;
};

void add_state_flags(CLI::App* cmd, StateFlags& flags, bool with_variant)
{
    cmd->add_option("--n", flags.n, "radial quantum number")->required();
    cmd->add_option("--l", flags.l, "orbital quantum number")->required();
    if (with_variant) {
        cmd->add_option("--N", flags.variant, "principal quantum number: harmonic, coulomb, linear or fitted");
        cmd->add_option("--A", flags.A, "fixed coefficient A for --N fitted");
        cmd->add_option("--C", flags.C, "fixed coefficient C for --N fitted");
    }
}

afm::PrincipalN make_principal(const StateFlags& flags, const report::RunConfig& config)
{
    using V = afm::PrincipalN::Variant;
    const V variant = flags.variant ? report::parse_variant(*flags.variant) : config.variant;
    if ((flags.A || flags.C) && variant != V::Fitted) {
        throw invalid_input("--A and --C apply only to --N fitted");
    }
    switch (variant) {
        case V::Harmonic:
            return afm::PrincipalN::harmonic();
        case V::Coulomb:
            return afm::PrincipalN::coulomb();
        case V::LinearApprox:
            return afm::PrincipalN::linear_approx();
        case V::Fitted:
            if (flags.A.has_value() != flags.C.has_value()) {
                throw invalid_input("--A and --C must be given together");
            }
            return flags.A ? afm::PrincipalN::fitted(*flags.A, *flags.C) : afm::PrincipalN::fitted();
    }
    return afm::PrincipalN::harmonic();
}

report::RunConfig resolve_config(const GlobalFlags& flags)
{
    report::RunConfig config;
    std::string path = flags.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(report::config_env_var)) {
            path = env;
        }
    }
    if (!path.empty()) {
        config = report::load_config(path, config);
    }
    if (flags.format) {
        config.format = report::parse_format(*flags.format);
    }
    if (flags.precision) {
        config.precision = *flags.precision;
    }
    if (flags.mesh_size) {
        config.mesh.size = *flags.mesh_size;
    }
    if (flags.mesh_scale) {
        config.mesh.scale = *flags.mesh_scale;
    }
    config.validate();
    return config;
}

void emit(const report::Report& result, const report::RunConfig& config, const std::string& out_path)
{
    for (const auto& warning : result.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    const std::string text = report::render(result, config.format, config.precision);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw invalid_input("cannot open output file '" + out_path + "'");
    }
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound states of p^2/2m + sqrt(a^2 r^2 + b): closed-form estimates and reference eigenvalues"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags global;
    app.add_option("--config", global.config_path,
                   std::string("JSON configuration file (default: $") + report::config_env_var + ")");
    app.add_option("--format", global.format, "output format: csv or json");
    app.add_option("--precision", global.precision, "decimal digits in CSV output");
    app.add_option("--out", global.out_path, "write output to this file instead of stdout");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "closed-form energy of one state");
    PotentialParams eval_params;
    StateFlags eval_state;
    std::optional<double> eta;
    eval_cmd->add_option("--m", eval_params.m, "reduced mass")->required();
    eval_cmd->add_option("--a", eval_params.a, "slope of the potential")->required();
    eval_cmd->add_option("--b", eval_params.b, "offset under the square root")->required();
    add_state_flags(eval_cmd, eval_state, true);
    eval_cmd->add_option("--eta", eta, "parameter of the simplified formula");

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "reference eigenvalue from the Lagrange mesh");
    std::optional<double> exact_beta;
    std::optional<double> exact_m;
    std::optional<double> exact_a;
    std::optional<double> exact_b;
    StateFlags exact_state;
    auto* beta_opt = exact_cmd->add_option("--beta", exact_beta, "dimensionless offset");
    auto* m_opt = exact_cmd->add_option("--m", exact_m, "reduced mass");
    auto* a_opt = exact_cmd->add_option("--a", exact_a, "slope of the potential");
    auto* b_opt = exact_cmd->add_option("--b", exact_b, "offset under the square root");
    beta_opt->excludes(m_opt)->excludes(a_opt)->excludes(b_opt);
    add_state_flags(exact_cmd, exact_state, false);

    // grid commands
    double grid_beta = 1.0;
    int n_max = 4;
    int l_max = 4;
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--beta", grid_beta, "dimensionless offset")->capture_default_str();
        cmd->add_option("--nmax", n_max, "largest radial quantum number")->capture_default_str();
        cmd->add_option("--lmax", l_max, "largest orbital quantum number")->capture_default_str();
    };
    auto* table_cmd = app.add_subcommand("table", "upper, exact, fitted and lower values per state");
    add_grid(table_cmd);
    auto* bounds_cmd = app.add_subcommand("bounds", "bounds, approximation and exact value per state");
    add_grid(bounds_cmd);

    auto* fit_cmd = app.add_subcommand("fit", "fit A(beta), C(beta) of N = A n + l + C");
    std::vector<double> fit_betas{0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
    fit_cmd->add_option("--betas", fit_betas, "beta values to fit")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::Validator(
            [](std::string& value) { return value.empty() ? std::string("empty beta value") : std::string(); },
            "", "non-empty"));
    fit_cmd->add_option("--nmax", n_max, "largest radial quantum number")->capture_default_str();
    fit_cmd->add_option("--lmax", l_max, "largest orbital quantum number")->capture_default_str();

    auto* salpeter_cmd = app.add_subcommand("salpeter", "spectrum of omega sqrt(p^2 + M^2) + sigma r^2");
    relmap::SalpeterParams sp;
    StateFlags salpeter_state;
    salpeter_cmd->add_option("--omega", sp.omega, "kinetic prefactor")->required();
    salpeter_cmd->add_option("--M", sp.M, "particle mass")->required();
    salpeter_cmd->add_option("--sigma", sp.sigma, "harmonic coefficient")->required();
    add_state_flags(salpeter_cmd, salpeter_state, true);

    for (auto* cmd : {exact_cmd, table_cmd, bounds_cmd, fit_cmd}) {
        cmd->add_option("--mesh-size", global.mesh_size, "mesh points (at least 20)");
        cmd->add_option("--scale", global.mesh_scale, "mesh scaling (automatic when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }

    try {
        const report::RunConfig config = resolve_config(global);
        if (*eval_cmd) {
            emit(commands::eval(eval_params, {eval_state.n, eval_state.l}, make_principal(eval_state, config),
                                eta.value_or(config.eta)),
                 config, global.out_path);
        } else if (*exact_cmd) {
            std::optional<PotentialParams> params;
            if (exact_m || exact_a || exact_b) {
                if (!(exact_m && exact_a && exact_b)) {
                    throw invalid_input("--m, --a and --b must be given together");
                }
                params = PotentialParams{*exact_m, *exact_a, *exact_b};
            } else if (!exact_beta) {
                throw invalid_input("either --beta or --m, --a, --b is required");
            }
            emit(commands::exact_level(exact_beta.value_or(0.0), params, {exact_state.n, exact_state.l}, config.mesh),
                 config, global.out_path);
        } else if (*table_cmd) {
            emit(commands::table(grid_beta, n_max, l_max, config.mesh), config, global.out_path);
        } else if (*bounds_cmd) {
            emit(commands::bounds(grid_beta, n_max, l_max, config.mesh), config, global.out_path);
        } else if (*fit_cmd) {
            const auto run = commands::fit(fit_betas, n_max, l_max, config.mesh);
            emit(run.report, config, global.out_path);
            if (!run.complete) {
                return exit_numerical;
            }
        } else if (*salpeter_cmd) {
            emit(commands::salpeter(sp, {salpeter_state.n, salpeter_state.l}, make_principal(salpeter_state, config)),
                 config, global.out_path);
        }
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const numerical_failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return 0;
}
