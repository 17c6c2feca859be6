#ifndef MIXEM_TESTS_SUPPORT_HPP
#define MIXEM_TESTS_SUPPORT_HPP

#include "mixem/types.hpp"

#include <random>
#include <vector>

namespace testsup {

inline bool same_bits(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           (a.array() == b.array()).all();
}

inline mixem::MixtureParams params_1d(const std::vector<double>& p,
                                      const std::vector<double>& mu,
                                      const std::vector<double>& var) {
    mixem::MixtureParams theta;
    const int J = static_cast<int>(p.size());
    theta.proportions.resize(J);
    theta.means.resize(J);
    theta.covariances.resize(J);
    for (int j = 0; j < J; ++j) {
        theta.proportions[j] = p[j];
        theta.means[j] = Eigen::VectorXd::Constant(1, mu[j]);
        theta.covariances[j] = Eigen::MatrixXd::Constant(1, 1, var[j]);
    }
    return theta;
}

inline mixem::Dataset dataset_1d(const std::vector<double>& y) {
    mixem::Dataset data;
    data.observations.resize(static_cast<int>(y.size()), 1);
    for (std::size_t i = 0; i < y.size(); ++i) {
        data.observations(static_cast<int>(i), 0) = y[i];
    }
    return data;
}

// The fixed toy instance used throughout: d=1, J=2, n=4.
inline mixem::Dataset toy_data() { return dataset_1d({-1.0, 0.0, 1.0, 4.0}); }
inline mixem::MixtureParams toy_init() {
    return params_1d({0.5, 0.5}, {0.0, 3.0}, {1.0, 1.0});
}

// Random valid instance: J components in R^d with normalized proportions,
// means in [-3,3]^d, covariances A A^T + 0.5 I.
inline mixem::MixtureParams random_params(std::mt19937_64& rng, int J, int d) {
    std::uniform_real_distribution<double> unif(0.2, 1.0);
    std::uniform_real_distribution<double> mud(-3.0, 3.0);
    mixem::MixtureParams theta;
    theta.proportions.resize(J);
    for (int j = 0; j < J; ++j) {
        theta.proportions[j] = unif(rng);
    }
    theta.proportions /= theta.proportions.sum();
    theta.means.resize(J);
    theta.covariances.resize(J);
    for (int j = 0; j < J; ++j) {
        theta.means[j] = Eigen::VectorXd::NullaryExpr(d, [&](int) { return mud(rng); });
        Eigen::MatrixXd a =
            Eigen::MatrixXd::NullaryExpr(d, d, [&](int, int) { return mud(rng) / 3.0; });
        theta.covariances[j] = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
    }
    return theta;
}

inline mixem::Dataset random_data(std::mt19937_64& rng, int n, int d) {
    std::normal_distribution<double> g(0.0, 2.0);
    mixem::Dataset data;
    data.observations =
        Eigen::MatrixXd::NullaryExpr(n, d, [&](int, int) { return g(rng); });
    return data;
}

} // namespace testsup

#endif
