#pragma once

// Reference eigenvalues of the reduced radial problem
//
//   -(1/4) u'' + [ l(l+1) / (4 x^2) + sqrt(x^2 + beta) ] u = eps u,  u(0) = u(inf) = 0,
//
// on a regularized Lagrange-Laguerre mesh. Every eigenvalue is checked
// against a finer mesh before it is reported.

#include "sqrtwell/afm.hpp"
#include "sqrtwell/core.hpp"
#include "sqrtwell/lagrange_mesh.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <future>
#include <optional>
#include <sstream>
#include <vector>

namespace sqrtwell::exact {

/// Outermost node is placed at this multiple of the classical turning point.
inline constexpr double turning_point_coverage = 4.0;
/// Mesh points added per refinement step.
inline constexpr int refinement_step = 20;
/// Largest accepted change of an eigenvalue under refinement.
inline constexpr double refinement_tolerance = 1e-6;

struct MeshConfig {
    int size = 100;
    /// Radial length per unit of mesh coordinate; chosen from the turning
    /// point of the highest requested state when empty.
    std::optional<double> scale;

    void validate() const
    {
        detail::require(size >= 20, "mesh size must be at least 20");
        if (scale) {
            detail::require(std::isfinite(*scale) && *scale > 0.0, "mesh scale must be strictly positive");
        }
    }
};

/// Raised when the refinement gate cannot confirm an eigenvalue.
class refinement_failure : public numerical_failure {
  public:
    refinement_failure(QuantumNumbers qn, double coarse, double fine)
        : numerical_failure(describe(qn, coarse, fine))
        , qn_(qn)
        , coarse_(coarse)
        , fine_(fine)
    {}

    QuantumNumbers quantum_numbers() const { return qn_; }
    double coarse() const { return coarse_; }
    double fine() const { return fine_; }

  private:
    static std::string describe(QuantumNumbers qn, double coarse, double fine)
    {
        std::ostringstream os;
        os.precision(12);
        os << "eigenvalue (n=" << qn.n << ", l=" << qn.l << ") not converged under mesh refinement: " << coarse
           << " vs " << fine;
        return os.str();
    }

    QuantumNumbers qn_;
    double coarse_;
    double fine_;
};

/// One eigenvalue with its refinement record.
struct ExactLevel {
    QuantumNumbers qn;
    double value = 0.0;
    int mesh_size = 0;          ///< size of the finest mesh used
    double refinement_delta = 0.0;
    double coarser_value = 0.0; ///< same level on the previous mesh
    bool converged = false;

    EnergyEstimate estimate() const { return {value, EstimateKind::Exact}; }
};

struct SpectrumResult {
    int n_max = 0;
    int l_max = 0;
    double beta = 0.0;
    MeshConfig config;
    std::vector<ExactLevel> entries; ///< row-major in n, then l

    const ExactLevel& at(int n, int l) const
    {
        detail::require(n >= 0 && n <= n_max && l >= 0 && l <= l_max, "spectrum index out of range");
        return entries[static_cast<std::size_t>(n * (l_max + 1) + l)];
    }

    bool all_converged() const
    {
        for (const auto& e : entries) {
            if (!e.converged) {
                return false;
            }
        }
        return true;
    }
};

namespace detail {

inline void require_beta(double beta)
{
    sqrtwell::detail::require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and non-negative");
}

/// Classical turning point of the reduced potential at energy eps.
inline double turning_point(double beta, double eps)
{
    const double root_beta = std::sqrt(beta);
    return std::sqrt(std::max((eps - root_beta) * (eps + root_beta), 0.0));
}

inline double mesh_scale(double beta, int n_top, int l, const MeshConfig& cfg, const mesh::LaguerreMesh& mesh)
{
    if (cfg.scale) {
        return *cfg.scale;
    }
    const double upper = afm::afm_energy_reduced(beta, {n_top, l}, afm::PrincipalN::harmonic()).value();
    return turning_point_coverage * turning_point(beta, upper) / mesh.outermost();
}

/// Lowest `count` eigenvalues for orbital momentum l on a mesh of `size` points.
inline std::vector<double> lowest_eigenvalues(double beta, int l, int count, int size, const MeshConfig& cfg)
{
    const mesh::LaguerreMesh mesh(size);
    const double h = mesh_scale(beta, count - 1, l, cfg, mesh);
    const double root_beta = std::sqrt(beta);
    const double centrifugal = l * (l + 1.0) / 4.0;

    // Diagonalize H - sqrt(beta), with sqrt(r^2 + beta) - sqrt(beta)
    // written without cancellation.
    Eigen::MatrixXd hamiltonian = mesh.kinetic / (4.0 * h * h);
    for (int i = 0; i < size; ++i) {
        const double r = h * mesh.nodes[static_cast<std::size_t>(i)];
        const double r2 = r * r;
        hamiltonian(i, i) += centrifugal / r2 + r2 / (std::sqrt(r2 + beta) + root_beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numerical_failure("mesh eigenvalue decomposition failed");
    }
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        values[static_cast<std::size_t>(k)] = solver.eigenvalues()[k] + root_beta;
    }
    return values;
}

/// Levels n = 0..n_max at fixed l, each passed through the refinement gate.
/// The k-th lowest eigenvalue is assigned n = k.
inline std::vector<ExactLevel> refined_levels(double beta, int l, int n_max, const MeshConfig& cfg)
{
    const int count = n_max + 1;
    const int base = cfg.size;
    const auto coarse = lowest_eigenvalues(beta, l, count, base, cfg);
    const auto fine = lowest_eigenvalues(beta, l, count, base + refinement_step, cfg);

    std::optional<std::vector<double>> finest;
    std::vector<ExactLevel> levels(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        const auto k = static_cast<std::size_t>(n);
        ExactLevel& level = levels[k];
        level.qn = {n, l};
        level.refinement_delta = std::abs(fine[k] - coarse[k]);
        level.value = fine[k];
        level.coarser_value = coarse[k];
        level.mesh_size = base + refinement_step;
        if (level.refinement_delta > refinement_tolerance) {
            if (!finest) {
                finest = lowest_eigenvalues(beta, l, count, base + 2 * refinement_step, cfg);
            }
            level.refinement_delta = std::abs((*finest)[k] - fine[k]);
            level.value = (*finest)[k];
            level.coarser_value = fine[k];
            level.mesh_size = base + 2 * refinement_step;
        }
        level.converged = level.refinement_delta <= refinement_tolerance && std::isfinite(level.value);
    }
    return levels;
}

} // namespace detail

/// Validated single level with its refinement record; throws
/// refinement_failure when the gate is not passed.
inline ExactLevel solve_reduced_detailed(double beta, const QuantumNumbers& qn, const MeshConfig& cfg = {})
{
    detail::require_beta(beta);
    qn.validate();
    cfg.validate();
    sqrtwell::detail::require(qn.n < cfg.size / 2, "n too large for the mesh size");
    const auto levels = detail::refined_levels(beta, qn.l, qn.n, cfg);
    const ExactLevel& level = levels.back();
    if (!level.converged) {
        throw refinement_failure(qn, level.coarser_value, level.value);
    }
    return level;
}

inline EnergyEstimate solve_reduced(double beta, const QuantumNumbers& qn, const MeshConfig& cfg = {})
{
    return solve_reduced_detailed(beta, qn, cfg).estimate();
}

inline EnergyEstimate solve_physical(const PotentialParams& params, const QuantumNumbers& qn,
                                     const MeshConfig& cfg = {})
{
    const ReducedProblem reduced = reduce(params);
    return unreduce(solve_reduced(reduced.beta, qn, cfg), reduced);
}

/// All levels 0 <= n <= n_max, 0 <= l <= l_max. Orbital momenta are solved
/// concurrently; entries failing the refinement gate are flagged, not thrown.
inline SpectrumResult spectrum(double beta, int n_max, int l_max, const MeshConfig& cfg = {})
{
    detail::require_beta(beta);
    cfg.validate();
    sqrtwell::detail::require(n_max >= 0 && l_max >= 0, "n_max and l_max must be non-negative");
    sqrtwell::detail::require(n_max < cfg.size / 2, "n_max too large for the mesh size");

    std::vector<std::future<std::vector<ExactLevel>>> jobs;
    jobs.reserve(static_cast<std::size_t>(l_max + 1));
    for (int l = 0; l <= l_max; ++l) {
        jobs.push_back(std::async(std::launch::async, [=] { return detail::refined_levels(beta, l, n_max, cfg); }));
    }
    std::vector<std::vector<ExactLevel>> by_l;
    by_l.reserve(jobs.size());
    for (auto& job : jobs) {
        by_l.push_back(job.get());
    }

    SpectrumResult result{n_max, l_max, beta, cfg, {}};
    result.entries.reserve(static_cast<std::size_t>((n_max + 1) * (l_max + 1)));
    for (int n = 0; n <= n_max; ++n) {
        for (int l = 0; l <= l_max; ++l) {
            result.entries.push_back(by_l[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)]);
        }
    }
    return result;
}

} // namespace sqrtwell::exact
