#ifndef MIXEM_MIXTURE_HPP
#define MIXEM_MIXTURE_HPP

#include "mixem/types.hpp"

namespace mixem {

// log(sum_i exp(v_i)), stabilized by the usual max shift.
double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v);

// log phi(y | mu, sigma) for a Gaussian with SPD covariance sigma.
// Throws DegenerateCovariance when the Cholesky factorization fails.
double gaussian_log_density(const Eigen::Ref<const Eigen::VectorXd>& y,
                            const Eigen::Ref<const Eigen::VectorXd>& mu,
                            const Eigen::Ref<const Eigen::MatrixXd>& sigma);

// n-vector of log phi(y_i | mu_j, sigma_j) for one component over a dataset.
// One Cholesky factorization, n quadratic forms.
Eigen::VectorXd gaussian_log_density_column(const Eigen::VectorXd& mu,
                                            const Eigen::MatrixXd& sigma,
                                            const Dataset& data,
                                            const std::string& context = {});

// n x J matrix of log phi(y_i | mu_j, sigma_j).
Eigen::MatrixXd component_log_densities(const MixtureParams& theta, const Dataset& data);

// log sum_j p_j phi(y | mu_j, sigma_j), evaluated with the raw (possibly
// unnormalized) proportions.
double mixture_log_density(const Eigen::Ref<const Eigen::VectorXd>& y,
                           const MixtureParams& theta);

// log t_ij: log-domain posterior membership, rows normalized by log-sum-exp.
Eigen::MatrixXd log_responsibilities(const MixtureParams& theta, const Dataset& data);

// t_ij = p_j phi_ij / sum_l p_l phi_il; rows sum to 1.
Responsibilities responsibilities(const MixtureParams& theta, const Dataset& data);

// L(theta | y) = sum_i log sum_j p_j phi(y_i | mu_j, sigma_j).
double observed_log_likelihood(const MixtureParams& theta, const Dataset& data);

// Q(theta | theta_prev) = sum_i sum_l t_il(theta_prev) {log p_l + log phi_il(theta)}.
// Diagnostic only; the iteration engines never call it.
double q_function(const MixtureParams& theta, const MixtureParams& theta_prev,
                  const Dataset& data);

// D(theta, theta_prev | y) = sum_i sum_j t_ij(theta_prev) log{t_ij(theta_prev)/t_ij(theta)},
// with 0 log 0 = 0. Nonnegative; values in (-1e-12, 0) from rounding are
// clamped to 0. Throws InfinitePenalty when t_ij(theta) vanishes while
// t_ij(theta_prev) is materially positive.
double kullback_penalty(const MixtureParams& theta, const MixtureParams& theta_prev,
                        const Dataset& data);

// Lambda(theta | y) = L(theta | y) - n (sum_l p_l - 1).
double modified_log_likelihood(const MixtureParams& theta, const Dataset& data);

// L, Lambda and the constraint residual at theta; the penalty slot is filled
// by the caller (0 at cycle 0).
DiagnosticsRecord diagnostics(const MixtureParams& theta, const Dataset& data,
                              double kullback = 0.0);

} // namespace mixem

#endif
