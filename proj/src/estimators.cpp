#include "mixem/estimators.hpp"

#include "mixem/mixture.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mixem {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::EM: return "EM";
        case Algorithm::CEMM: return "CEMM";
        case Algorithm::SAGE: return "SAGE";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "EM" || name == "em") return Algorithm::EM;
    if (name == "CEMM" || name == "cemm") return Algorithm::CEMM;
    if (name == "SAGE" || name == "sage") return Algorithm::SAGE;
    throw InvalidConfig("unknown algorithm '" + name + "' (expected EM, CEMM or SAGE)");
}

void validate(const RunConfig& cfg) {
    if (!(cfg.tol > 0.0)) {
        throw InvalidConfig("tol must be > 0");
    }
    if (cfg.max_cycles < 1) {
        throw InvalidConfig("max_cycles must be >= 1");
    }
    if (cfg.variance_floor && !(*cfg.variance_floor >= 0.0)) {
        throw InvalidConfig("variance_floor must be >= 0");
    }
}

double auto_variance_floor(const Dataset& data) {
    const Eigen::MatrixXd& y = data.observations;
    const Eigen::RowVectorXd mean = y.colwise().mean();
    const Eigen::MatrixXd centered = y.rowwise() - mean;
    const double trace = centered.squaredNorm() / static_cast<double>(y.rows());
    return 1e-6 * trace / static_cast<double>(y.cols());
}

double resolved_variance_floor(const RunConfig& cfg, const Dataset& data) {
    return cfg.variance_floor ? *cfg.variance_floor : auto_variance_floor(data);
}

void DensityCache::reset(const MixtureParams& theta, const Dataset& data) {
    const int J = theta.components();
    log_phi.resize(data.size(), J);
    for (int j = 0; j < J; ++j) {
        refresh_column(theta, data, j);
    }
}

void DensityCache::refresh_column(const MixtureParams& theta, const Dataset& data, int j0) {
    log_phi.col(j0) = gaussian_log_density_column(
        theta.means[j0], theta.covariances[j0], data,
        "component " + std::to_string(j0 + 1));
    density_evals += static_cast<std::uint64_t>(data.size());
}

int component_schedule(std::int64_t k, int J) {
    return static_cast<int>(k % J) + 1;
}

namespace {

// log(p_j phi_ij) from the cached densities, row-normalized to
// responsibilities. The proportions may be unnormalized; the row
// normalization absorbs the common factor.
Responsibilities responsibilities_from_cache(const DensityCache& cache,
                                             const MixtureParams& theta) {
    Eigen::MatrixXd lw = cache.log_phi;
    lw.array().rowwise() += theta.proportions.array().log().transpose();
    Responsibilities t(lw.rows(), lw.cols());
    for (int i = 0; i < lw.rows(); ++i) {
        const double lse = log_sum_exp(lw.row(i).transpose());
        t.row(i) = (lw.row(i).array() - lse).exp();
        t.row(i) /= t.row(i).sum();
    }
    return t;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

// Projects the symmetric part onto {smallest eigenvalue >= floor}.
Eigen::MatrixXd apply_variance_floor(const Eigen::MatrixXd& sigma, double floor) {
    Eigen::MatrixXd sym = symmetrize(sigma);
    if (floor <= 0.0) {
        return sym;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.eigenvalues().minCoeff() >= floor) {
        return sym;
    }
    const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(floor);
    return symmetrize(es.eigenvectors() * clamped.asDiagonal() *
                      es.eigenvectors().transpose());
}

struct BlockUpdate {
    double p;
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
};

// Weighted-mean / weighted-scatter update for one component from its
// responsibility column; the scatter is taken about the new mean.
BlockUpdate update_block(const Eigen::VectorXd& tcol, const Dataset& data,
                         double floor, int j0) {
    const double s = tcol.sum();
    if (!(s >= 1e-300)) {
        throw EmptyComponent("component " + std::to_string(j0 + 1) +
                             " received (near-)zero total responsibility");
    }
    BlockUpdate out;
    out.p = s / static_cast<double>(data.size());
    out.mu = (data.observations.transpose() * tcol) / s;
    const Eigen::MatrixXd centered =
        data.observations.rowwise() - out.mu.transpose();
    out.sigma = apply_variance_floor(
        (centered.transpose() * tcol.asDiagonal() * centered) / s, floor);
    return out;
}

void require_constrained(const MixtureParams& theta, const char* op) {
    if (std::abs(constraint_residual(theta)) > 1e-9) {
        throw InvalidProportions(std::string(op) +
                                 ": proportions must sum to 1 within 1e-9, residual " +
                                 std::to_string(constraint_residual(theta)));
    }
}

} // namespace

MixtureParams em_cycle(const MixtureParams& theta, const Dataset& data,
                       const RunConfig& cfg, DensityCache& cache) {
    require_constrained(theta, "em_cycle");
    const double floor = resolved_variance_floor(cfg, data);
    const Responsibilities t = responsibilities_from_cache(cache, theta);

    MixtureParams next = theta;
    for (int j = 0; j < theta.components(); ++j) {
        const BlockUpdate b = update_block(t.col(j), data, floor, j);
        next.proportions[j] = b.p;
        next.means[j] = b.mu;
        next.covariances[j] = b.sigma;
    }
    for (int j = 0; j < theta.components(); ++j) {
        cache.refresh_column(next, data, j);
    }
    return next;
}

MixtureParams em_cycle(const MixtureParams& theta, const Dataset& data,
                       const RunConfig& cfg) {
    DensityCache cache;
    cache.reset(theta, data);
    return em_cycle(theta, data, cfg, cache);
}

MixtureParams cemm_iteration(const MixtureParams& theta, const Dataset& data,
                             int j, const RunConfig& cfg, DensityCache& cache) {
    if (j < 1 || j > theta.components()) {
        throw InvalidConfig("cemm_iteration: component index out of range");
    }
    const int j0 = j - 1;
    const double floor = resolved_variance_floor(cfg, data);
    const Responsibilities t = responsibilities_from_cache(cache, theta);
    const BlockUpdate b = update_block(t.col(j0), data, floor, j0);

    MixtureParams next = theta;
    next.proportions[j0] = b.p;
    next.means[j0] = b.mu;
    next.covariances[j0] = b.sigma;
    cache.refresh_column(next, data, j0);
    return next;
}

MixtureParams cemm_iteration(const MixtureParams& theta, const Dataset& data,
                             int j, const RunConfig& cfg) {
    DensityCache cache;
    cache.reset(theta, data);
    return cemm_iteration(theta, data, j, cfg, cache);
}

MixtureParams cemm_cycle(const MixtureParams& theta, const Dataset& data,
                         std::int64_t k0, const RunConfig& cfg, DensityCache& cache) {
    MixtureParams current = theta;
    for (int m = 0; m < theta.components(); ++m) {
        const int j = component_schedule(k0 + m, theta.components());
        current = cemm_iteration(current, data, j, cfg, cache);
    }
    return current;
}

MixtureParams cemm_cycle(const MixtureParams& theta, const Dataset& data,
                         std::int64_t k0, const RunConfig& cfg) {
    DensityCache cache;
    cache.reset(theta, data);
    return cemm_cycle(theta, data, k0, cfg, cache);
}

MixtureParams sage_cycle(const MixtureParams& theta, const Dataset& data,
                         const RunConfig& cfg, DensityCache& cache) {
    require_constrained(theta, "sage_cycle");
    const double floor = resolved_variance_floor(cfg, data);
    const int J = theta.components();

    MixtureParams current = theta;
    for (int j0 = 0; j0 < J; ++j0) {
        const Responsibilities t = responsibilities_from_cache(cache, current);
        const BlockUpdate b = update_block(t.col(j0), data, floor, j0);
        current.means[j0] = b.mu;
        current.covariances[j0] = b.sigma;
        cache.refresh_column(current, data, j0);
    }
    // Iteration J+1: joint proportions update. The densities are all
    // current, so this costs no new t_ij evaluations.
    const Responsibilities t = responsibilities_from_cache(cache, current);
    current.proportions = t.colwise().sum().transpose() / static_cast<double>(data.size());
    for (int j0 = 0; j0 < J; ++j0) {
        if (!(t.col(j0).sum() >= 1e-300)) {
            throw EmptyComponent("component " + std::to_string(j0 + 1) +
                                 " received (near-)zero total responsibility");
        }
    }
    return current;
}

MixtureParams sage_cycle(const MixtureParams& theta, const Dataset& data,
                         const RunConfig& cfg) {
    DensityCache cache;
    cache.reset(theta, data);
    return sage_cycle(theta, data, cfg, cache);
}

Trajectory run(const MixtureParams& theta0, const Dataset& data, const RunConfig& cfg) {
    validate(cfg);
    validate(theta0);
    if (theta0.dim() != data.dim()) {
        throw InvalidConfig("run: parameter dimension " + std::to_string(theta0.dim()) +
                            " does not match data dimension " + std::to_string(data.dim()));
    }
    RunConfig local = cfg;
    local.variance_floor = resolved_variance_floor(cfg, data);
    if (local.algorithm != Algorithm::CEMM) {
        require_constrained(theta0, "run");
    }

    Trajectory traj;
    DensityCache cache;
    cache.reset(theta0, data);

    traj.records.push_back(diagnostics(theta0, data, 0.0));
    if (local.record_params) {
        traj.snapshots.push_back(theta0);
    }

    MixtureParams prev = theta0;
    traj.stop_reason = StopReason::MaxCycles;
    for (int k = 1; k <= local.max_cycles; ++k) {
        MixtureParams next;
        try {
            switch (local.algorithm) {
                case Algorithm::EM:
                    next = em_cycle(prev, data, local, cache);
                    break;
                case Algorithm::CEMM:
                    next = cemm_cycle(prev, data,
                                      static_cast<std::int64_t>(k - 1) * theta0.components(),
                                      local, cache);
                    break;
                case Algorithm::SAGE:
                    next = sage_cycle(prev, data, local, cache);
                    break;
            }
            const double d_val = kullback_penalty(next, prev, data);
            traj.records.push_back(diagnostics(next, data, d_val));
        } catch (const MixtureError& err) {
            traj.stop_reason = StopReason::NumericalFailure;
            traj.failure_message = err.what();
            traj.failure_cycle = k;
            break;
        }
        traj.cycles_run = k;
        if (local.record_params) {
            traj.snapshots.push_back(next);
        }
        const double lambda_prev = traj.records[k - 1].modified_loglik;
        const double lambda_new = traj.records[k].modified_loglik;
        prev = next;
        if (std::abs(lambda_new - lambda_prev) <= local.tol * (1.0 + std::abs(lambda_prev))) {
            traj.converged = true;
            traj.stop_reason = StopReason::ToleranceReached;
            break;
        }
    }
    traj.final_params = prev;
    traj.density_evals = cache.density_evals;
    return traj;
}

} // namespace mixem
