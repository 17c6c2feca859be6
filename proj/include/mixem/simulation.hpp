#ifndef MIXEM_SIMULATION_HPP
#define MIXEM_SIMULATION_HPP

#include "mixem/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixem {

struct Scenario {
    std::string name;
    MixtureParams true_params; // sum p = 1 exactly
    int default_n = 300;
};

// "well_separated": p=(1/3,1/3,1/3), mu=(0,3,6), var=(1,1,1).
// "overlapping":    p=(1/3,1/3,1/3), mu=(0,3,3), var=(1,1,4).
// Throws UnknownScenario otherwise.
Scenario benchmark_scenario(const std::string& name);
std::vector<std::string> scenario_names();

struct Seed {
    std::uint64_t value = 0;
};

// Draws n points from the mixture: label z_i ~ Categorical(p) by CDF walk,
// then y_i = mu_z + L_z xi with L_z the Cholesky factor of sigma_z and xi
// standard normal. All randomness comes from one std::mt19937_64 seeded with
// seed.value; uniforms are the top 53 bits of successive outputs and normals
// come from Box-Muller (pairwise, cached spare), consumed in observation
// order: one uniform for the label, then d normals. Same seed, same dataset.
Dataset sample_mixture(const MixtureParams& theta, int n, Seed seed);

// Moment-matching initializer for univariate data: p_j = 1/J, means equally
// spaced across [xbar - s, xbar + s], all variances s^2 (empirical moments,
// 1/n-normalized). Throws DimensionUnsupported for d > 1.
MixtureParams init_moment(const Dataset& data, int J);

// Validated construction from explicit values.
MixtureParams init_explicit(const Eigen::VectorXd& proportions,
                            const std::vector<Eigen::VectorXd>& means,
                            const std::vector<Eigen::MatrixXd>& covariances);

// CSV dataset I/O. Header y_1,...,y_d with an optional trailing z column;
// values serialized with 17 significant digits so read(write(x)) == x.
// Malformed input is reported with its line number.
void write_dataset(const Dataset& data, const std::string& path);
Dataset read_dataset(const std::string& path);

} // namespace mixem

#endif
