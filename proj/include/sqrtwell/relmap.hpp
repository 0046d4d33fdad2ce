#pragma once

// Fourier duality with the spinless Salpeter Hamiltonian
//
//   H_S = omega sqrt(p^2 + M^2) + sigma r^2,
//
// related to p^2/2m + sqrt(a^2 r^2 + b) by
// omega = (4a/m^2)^{1/3}, M = sqrt(b)/omega, sigma = m a omega / 8.
// Both Hamiltonians share their spectrum.

#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"

#include <cmath>

namespace sqrtwell::relmap {

struct SalpeterParams {
    double omega = 1.0;
    double M = 0.0;
    double sigma = 0.25;

    void validate() const
    {
        detail::require_finite(omega, "omega");
        detail::require_finite(M, "M");
        detail::require_finite(sigma, "sigma");
        detail::require(omega > 0.0, "omega must be strictly positive");
        detail::require(M >= 0.0, "M must be non-negative");
        detail::require(sigma > 0.0, "sigma must be strictly positive");
    }

    /// Kinetic prefactors describing one (1) or two (2) particles of mass M.
    bool physical_omega() const { return omega == 1.0 || omega == 2.0; }
};

inline SalpeterParams to_salpeter(const PotentialParams& params)
{
    params.validate();
    const double omega = std::cbrt(4.0 * params.a / (params.m * params.m));
    return {omega, std::sqrt(params.b) / omega, params.m * params.a * omega / 8.0};
}

inline PotentialParams from_salpeter(const SalpeterParams& sp)
{
    sp.validate();
    const double omega2 = sp.omega * sp.omega;
    const double m = std::cbrt(32.0 * sp.sigma / (omega2 * omega2));
    const double a = omega2 * sp.omega * m * m / 4.0;
    const double b = sp.M * sp.M * omega2;
    PotentialParams params{m, a, b};
    params.validate();
    return params;
}

inline EnergyEstimate salpeter_spectrum(const SalpeterParams& sp, const QuantumNumbers& qn, const afm::PrincipalN& N)
{
    return afm::afm_energy(from_salpeter(sp), qn, N);
}

} // namespace sqrtwell::relmap
