#pragma once

// Domain types for the two-body problem H = p^2/2m + sqrt(a^2 r^2 + b) and the
// scaling reduction to the dimensionless Hamiltonian q^2/4 + sqrt(x^2 + beta).
// Natural units (hbar = c = 1) throughout.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sqrtwell {

/// Raised when an input violates a domain invariant (maps to CLI exit code 2).
class invalid_input : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails to reach its accuracy target
/// (maps to CLI exit code 3).
class numerical_failure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw invalid_input(message);
    }
}

inline void require_finite(double value, std::string_view name)
{
    require(std::isfinite(value), std::string(name) + " must be finite");
}

} // namespace detail

/// Reduced mass m, linear slope a and squared offset b of sqrt(a^2 r^2 + b).
struct PotentialParams {
    double m = 2.0;
    double a = 1.0;
    double b = 0.0;

    void validate() const
    {
        detail::require_finite(m, "m");
        detail::require_finite(a, "a");
        detail::require_finite(b, "b");
        detail::require(m > 0.0, "m must be strictly positive");
        detail::require(a > 0.0, "a must be strictly positive");
        detail::require(b >= 0.0, "b must be non-negative");
    }

    /// The parameter set whose physical problem is the dimensionless one.
    static PotentialParams reduced(double beta) { return {2.0, 1.0, beta}; }
};

struct QuantumNumbers {
    int n = 0;
    int l = 0;

    void validate() const
    {
        detail::require(n >= 0, "n must be non-negative");
        detail::require(l >= 0, "l must be non-negative");
    }

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Dimensionless offset beta and the energy unit (2a^2/m)^{1/3}.
struct ReducedProblem {
    double beta = 0.0;
    double scale = 1.0;
};

enum class EstimateKind { UpperBound, LowerBound, Approximation, Exact };

inline std::string_view to_string(EstimateKind kind)
{
    switch (kind) {
        case EstimateKind::UpperBound:
            return "UpperBound";
        case EstimateKind::LowerBound:
            return "LowerBound";
        case EstimateKind::Approximation:
            return "Approximation";
        case EstimateKind::Exact:
            return "Exact";
    }
    return "Unknown";
}

/// An energy together with what is known about it relative to the exact value.
class EnergyEstimate {
  public:
    EnergyEstimate(double value, EstimateKind kind)
        : value_(value)
        , kind_(kind)
    {
        if (!std::isfinite(value)) {
            throw numerical_failure("energy estimate is not finite");
        }
    }

    double value() const { return value_; }
    EstimateKind kind() const { return kind_; }

    EnergyEstimate scaled(double factor) const { return {value_ * factor, kind_}; }

  private:
    double value_;
    EstimateKind kind_;
};

inline ReducedProblem reduce(const PotentialParams& params)
{
    params.validate();
    const double scale = std::cbrt(2.0 * params.a * params.a / params.m);
    // b (m/2a^2)^{2/3} == b / scale^2
    const double beta = params.b / (scale * scale);
    if (!std::isfinite(scale) || !std::isfinite(beta) || scale <= 0.0) {
        throw invalid_input("parameters lead to a non-finite reduced problem");
    }
    return {beta, scale};
}

inline double unreduce(double epsilon, const ReducedProblem& reduced)
{
    detail::require_finite(epsilon, "epsilon");
    detail::require_finite(reduced.scale, "scale");
    return reduced.scale * epsilon;
}

inline EnergyEstimate unreduce(const EnergyEstimate& epsilon, const ReducedProblem& reduced)
{
    return {unreduce(epsilon.value(), reduced), epsilon.kind()};
}

} // namespace sqrtwell
