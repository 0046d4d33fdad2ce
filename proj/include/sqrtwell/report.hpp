#pragma once

// Tabular results and their CSV / JSON renderings, plus the run
// configuration shared by all command-line subcommands.

#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"
#include "sqrtwell/exact.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace sqrtwell::report {

inline constexpr const char* artifact_version = "1.0.0";
inline constexpr const char* config_env_var = "AFM_SQRTWELL_CONFIG";

enum class Format { Csv, Json };

/// Fixed-point decimal string rounded half-to-even at `digits` decimals.
inline std::string round_half_even(double value, int digits)
{
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    // Decide the rounding on the exact decimal expansion of the double.
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits + 30, std::abs(value));
    std::string text(buffer);
    const auto point = text.find('.');
    std::string kept = text.substr(0, point) + text.substr(point + 1, static_cast<std::size_t>(digits));
    const std::string rest = text.substr(point + 1 + static_cast<std::size_t>(digits));

    const char first = rest.empty() ? '0' : rest.front();
    const bool tail_nonzero = rest.find_first_not_of('0', 1) != std::string::npos;
    const bool last_odd = ((kept.back() - '0') % 2) == 1;
    const bool round_up = first > '5' || (first == '5' && (tail_nonzero || last_odd));
    if (round_up) {
        int i = static_cast<int>(kept.size()) - 1;
        while (i >= 0 && kept[static_cast<std::size_t>(i)] == '9') {
            kept[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i < 0) {
            kept.insert(kept.begin(), '1');
        } else {
            ++kept[static_cast<std::size_t>(i)];
        }
    }
    const std::size_t int_digits = kept.size() - static_cast<std::size_t>(digits);
    std::string out = kept.substr(0, int_digits);
    if (digits > 0) {
        out += '.' + kept.substr(int_digits);
    }
    if (std::signbit(value) && out.find_first_not_of("0.") != std::string::npos) {
        out.insert(out.begin(), '-');
    }
    return out;
}

/// Diagnostic quantity printed in scientific notation regardless of precision.
struct Diagnostic {
    double value;
};

using Cell = std::variant<double, long long, std::string, bool, Diagnostic>;

struct Report {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    nlohmann::ordered_json extra = nlohmann::ordered_json::object(); ///< merged into `meta`
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> warnings;
};

inline std::string csv_cell(const Cell& cell, int precision)
{
    struct Visitor {
        int precision;
        std::string operator()(double v) const { return round_half_even(v, precision); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(Diagnostic d) const
        {
            char buffer[64];
            std::snprintf(buffer, sizeof buffer, "%.3e", d.value);
            return buffer;
        }
    };
    return std::visit(Visitor{precision}, cell);
}

inline std::string to_csv(const Report& report, int precision)
{
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out += (i ? "," : "") + report.columns[i];
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_cell(row[i], precision);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json json_cell(const Cell& cell)
{
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Diagnostic>) {
                return v.value;
            } else {
                return v;
            }
        },
        cell);
}

/// JSON numbers keep full precision; `precision` is recorded for reference.
inline std::string to_json(const Report& report, int precision)
{
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    meta["command"] = report.command;
    meta["parameters"] = report.parameters;
    meta["artifact_version"] = artifact_version;
    meta["display_precision"] = precision;
    for (const auto& [key, value] : report.extra.items()) {
        meta[key] = value;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json object = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
            object[report.columns[i]] = json_cell(row[i]);
        }
        rows.push_back(std::move(object));
    }
    nlohmann::ordered_json document = nlohmann::ordered_json::object();
    document["meta"] = std::move(meta);
    document["rows"] = std::move(rows);
    return document.dump(2) + "\n";
}

inline std::string render(const Report& report, Format format, int precision)
{
    return format == Format::Csv ? to_csv(report, precision) : to_json(report, precision);
}

/// Defaults shared by all subcommands; command-line flags override them.
struct RunConfig {
    exact::MeshConfig mesh;
    double eta = 1.0;
    afm::PrincipalN::Variant variant = afm::PrincipalN::Variant::Harmonic;
    Format format = Format::Csv;
    int precision = 5;

    void validate() const
    {
        mesh.validate();
        detail::require_finite(eta, "eta");
        detail::require(precision >= 1 && precision <= 15, "precision must lie in [1, 15]");
    }
};

inline Format parse_format(const std::string& text)
{
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "json") {
        return Format::Json;
    }
    throw invalid_input("unknown output format '" + text + "' (expected csv or json)");
}

inline afm::PrincipalN::Variant parse_variant(const std::string& text)
{
    using V = afm::PrincipalN::Variant;
    for (V v : {V::Harmonic, V::Coulomb, V::LinearApprox, V::Fitted}) {
        if (text == afm::to_string(v)) {
            return v;
        }
    }
    throw invalid_input("unknown N variant '" + text + "' (expected harmonic, coulomb, linear or fitted)");
}

/// Applies a JSON configuration document on top of `base`.
inline RunConfig apply_config(RunConfig base, const nlohmann::json& doc)
{
    detail::require(doc.is_object(), "configuration must be a JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "mesh_size") {
                base.mesh.size = value.get<int>();
            } else if (key == "mesh_scale") {
                base.mesh.scale = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
            } else if (key == "eta") {
                base.eta = value.get<double>();
            } else if (key == "N") {
                base.variant = parse_variant(value.get<std::string>());
            } else if (key == "format") {
                base.format = parse_format(value.get<std::string>());
            } else if (key == "precision") {
                base.precision = value.get<int>();
            } else {
                throw invalid_input("unknown configuration key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed configuration: ") + e.what());
    }
    base.validate();
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {})
{
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "cannot open configuration file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input("configuration file '" + path + "' is not valid JSON: " + e.what());
    }
    return apply_config(std::move(base), doc);
}

} // namespace sqrtwell::report
