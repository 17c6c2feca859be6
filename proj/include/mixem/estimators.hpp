#ifndef MIXEM_ESTIMATORS_HPP
#define MIXEM_ESTIMATORS_HPP

#include "mixem/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixem {

enum class Algorithm { EM, CEMM, SAGE };

enum class StopReason { ToleranceReached, MaxCycles, NumericalFailure };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name); // throws InvalidConfig

struct RunConfig {
    Algorithm algorithm = Algorithm::EM;
    double tol = 1e-8;       // relative Lambda-change stopping threshold
    int max_cycles = 1000;
    // Smallest admissible covariance eigenvalue. Unset means the data-driven
    // default 1e-6 * trace(sample covariance) / d.
    std::optional<double> variance_floor;
    bool record_params = false;
};

void validate(const RunConfig& cfg); // throws InvalidConfig

double auto_variance_floor(const Dataset& data);
double resolved_variance_floor(const RunConfig& cfg, const Dataset& data);

// Cache of per-component log-density columns, kept in sync with the current
// iterate by the cycle operations. density_evals counts scalar t_ij
// refreshes (n per recomputed column), the benchmark's unit of cycle cost:
// one cycle of any of the three algorithms costs exactly J*n.
struct DensityCache {
    Eigen::MatrixXd log_phi; // n x J
    std::uint64_t density_evals = 0;

    void reset(const MixtureParams& theta, const Dataset& data);
    void refresh_column(const MixtureParams& theta, const Dataset& data, int j0);
    bool empty() const { return log_phi.size() == 0; }
};

// Cyclic component order 1,2,...,J,1,2,... starting at k=0; 1-based index.
int component_schedule(std::int64_t k, int J);

// One EM cycle: E-step at theta, then simultaneous M-step for all
// components. Requires sum p = 1 within 1e-9 and preserves it within 1e-12.
MixtureParams em_cycle(const MixtureParams& theta, const Dataset& data,
                       const RunConfig& cfg, DensityCache& cache);
MixtureParams em_cycle(const MixtureParams& theta, const Dataset& data,
                       const RunConfig& cfg);

// One CEMM iteration: recompute responsibilities column j (1-based) against
// all current components and update only block (p_j, mu_j, sigma_j). The
// other blocks are returned bit-identical; proportions are not renormalized.
MixtureParams cemm_iteration(const MixtureParams& theta, const Dataset& data,
                             int j, const RunConfig& cfg, DensityCache& cache);
MixtureParams cemm_iteration(const MixtureParams& theta, const Dataset& data,
                             int j, const RunConfig& cfg);

// J chained CEMM iterations following the cyclic schedule from k0.
MixtureParams cemm_cycle(const MixtureParams& theta, const Dataset& data,
                         std::int64_t k0, const RunConfig& cfg, DensityCache& cache);
MixtureParams cemm_cycle(const MixtureParams& theta, const Dataset& data,
                         std::int64_t k0, const RunConfig& cfg);

// One SAGE cycle: J per-component (mu, sigma) iterations, each with a fresh
// responsibilities column at the current iterate, then one joint proportions
// update. Requires and restores sum p = 1.
MixtureParams sage_cycle(const MixtureParams& theta, const Dataset& data,
                         const RunConfig& cfg, DensityCache& cache);
MixtureParams sage_cycle(const MixtureParams& theta, const Dataset& data,
                         const RunConfig& cfg);

struct Trajectory {
    std::vector<DiagnosticsRecord> records; // length cycles_run + 1, cycle 0 first
    std::vector<MixtureParams> snapshots;   // per cycle iff cfg.record_params
    MixtureParams final_params;
    int cycles_run = 0;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxCycles;
    std::string failure_message; // set when stop_reason == NumericalFailure
    int failure_cycle = -1;
    std::uint64_t density_evals = 0;
};

// Runs the selected algorithm from theta0 until the relative Lambda change
// per cycle drops below cfg.tol or max_cycles is hit. The Kullback penalty
// recorded at cycle k is D between the endpoints of cycles k and k-1.
// Deterministic: identical inputs give bit-identical trajectories.
Trajectory run(const MixtureParams& theta0, const Dataset& data, const RunConfig& cfg);

} // namespace mixem

#endif
