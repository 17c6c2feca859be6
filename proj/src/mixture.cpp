#include "mixem/mixture.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

namespace mixem {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

std::string component_tag(const std::string& context) {
    return context.empty() ? std::string("covariance") : context;
}

} // namespace

void validate(const MixtureParams& theta) {
    const int J = theta.components();
    if (J < 1) {
        throw MixtureError("MixtureParams: component count must be >= 1");
    }
    if (static_cast<int>(theta.means.size()) != J ||
        static_cast<int>(theta.covariances.size()) != J) {
        throw MixtureError("MixtureParams: proportions, means and covariances "
                           "must all have length J=" + std::to_string(J));
    }
    const int d = theta.dim();
    if (d < 1) {
        throw MixtureError("MixtureParams: dimension must be >= 1");
    }
    for (int j = 0; j < J; ++j) {
        const std::string tag = "component " + std::to_string(j + 1);
        if (!(theta.proportions[j] > 0.0) || !std::isfinite(theta.proportions[j])) {
            throw InvalidProportions(tag + ": proportion must be strictly positive, got " +
                                     std::to_string(theta.proportions[j]));
        }
        if (theta.means[j].size() != d) {
            throw MixtureError(tag + ": mean has dimension " +
                               std::to_string(theta.means[j].size()) + ", expected " +
                               std::to_string(d));
        }
        const Eigen::MatrixXd& sigma = theta.covariances[j];
        if (sigma.rows() != d || sigma.cols() != d) {
            throw MixtureError(tag + ": covariance is " + std::to_string(sigma.rows()) +
                               "x" + std::to_string(sigma.cols()) + ", expected " +
                               std::to_string(d) + "x" + std::to_string(d));
        }
        const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
        const double scale = 1.0 + sigma.cwiseAbs().maxCoeff();
        if (asym > 1e-10 * scale) {
            throw MixtureError(tag + ": covariance is not symmetric (max asymmetry " +
                               std::to_string(asym) + ")");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success) {
            throw DegenerateCovariance(tag + ": covariance is not positive definite");
        }
    }
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
    const double m = v.maxCoeff();
    if (!std::isfinite(m)) {
        return m; // all -inf (or a stray +inf/nan) dominates
    }
    return m + std::log((v.array() - m).exp().sum());
}

double gaussian_log_density(const Eigen::Ref<const Eigen::VectorXd>& y,
                            const Eigen::Ref<const Eigen::VectorXd>& mu,
                            const Eigen::Ref<const Eigen::MatrixXd>& sigma) {
    const int d = static_cast<int>(y.size());
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw DegenerateCovariance("covariance is not positive definite");
    }
    const double log_det =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const Eigen::VectorXd half = llt.matrixL().solve(y - mu);
    return -0.5 * (d * kLog2Pi + log_det + half.squaredNorm());
}

Eigen::VectorXd gaussian_log_density_column(const Eigen::VectorXd& mu,
                                            const Eigen::MatrixXd& sigma,
                                            const Dataset& data,
                                            const std::string& context) {
    const int n = data.size();
    const int d = data.dim();
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw DegenerateCovariance(component_tag(context) + ": not positive definite");
    }
    const double log_det =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double base = -0.5 * (d * kLog2Pi + log_det);

    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd half =
            llt.matrixL().solve(data.observations.row(i).transpose() - mu);
        out[i] = base - 0.5 * half.squaredNorm();
    }
    return out;
}

Eigen::MatrixXd component_log_densities(const MixtureParams& theta, const Dataset& data) {
    const int J = theta.components();
    Eigen::MatrixXd log_phi(data.size(), J);
    for (int j = 0; j < J; ++j) {
        log_phi.col(j) = gaussian_log_density_column(
            theta.means[j], theta.covariances[j], data,
            "component " + std::to_string(j + 1));
    }
    return log_phi;
}

double mixture_log_density(const Eigen::Ref<const Eigen::VectorXd>& y,
                           const MixtureParams& theta) {
    const int J = theta.components();
    Eigen::VectorXd terms(J);
    for (int j = 0; j < J; ++j) {
        terms[j] = std::log(theta.proportions[j]) +
                   gaussian_log_density(y, theta.means[j], theta.covariances[j]);
    }
    return log_sum_exp(terms);
}

Eigen::MatrixXd log_responsibilities(const MixtureParams& theta, const Dataset& data) {
    Eigen::MatrixXd lw = component_log_densities(theta, data);
    const Eigen::ArrayXd log_p = theta.proportions.array().log();
    lw.array().rowwise() += log_p.transpose();
    for (int i = 0; i < lw.rows(); ++i) {
        lw.row(i).array() -= log_sum_exp(lw.row(i).transpose());
    }
    return lw;
}

Responsibilities responsibilities(const MixtureParams& theta, const Dataset& data) {
    Responsibilities t = log_responsibilities(theta, data).array().exp();
    // exp of normalized logs already sums to ~1 per row; pin it exactly.
    for (int i = 0; i < t.rows(); ++i) {
        const double s = t.row(i).sum();
        if (!(s > 0.0)) {
            throw MixtureError("responsibilities: row " + std::to_string(i + 1) +
                               " underflowed to zero");
        }
        t.row(i) /= s;
    }
    return t;
}

double observed_log_likelihood(const MixtureParams& theta, const Dataset& data) {
    Eigen::MatrixXd lw = component_log_densities(theta, data);
    const Eigen::ArrayXd log_p = theta.proportions.array().log();
    lw.array().rowwise() += log_p.transpose();
    double total = 0.0;
    for (int i = 0; i < lw.rows(); ++i) {
        total += log_sum_exp(lw.row(i).transpose());
    }
    return total;
}

double q_function(const MixtureParams& theta, const MixtureParams& theta_prev,
                  const Dataset& data) {
    if (theta.components() != theta_prev.components() || theta.dim() != theta_prev.dim()) {
        throw MixtureError("q_function: parameter sets must share J and d");
    }
    const Responsibilities t = responsibilities(theta_prev, data);
    const Eigen::MatrixXd log_phi = component_log_densities(theta, data);
    const Eigen::ArrayXd log_p = theta.proportions.array().log();

    double q = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
        for (int j = 0; j < t.cols(); ++j) {
            const double tij = t(i, j);
            if (tij > 0.0) {
                q += tij * (log_p[j] + log_phi(i, j));
            }
        }
    }
    return q;
}

double kullback_penalty(const MixtureParams& theta, const MixtureParams& theta_prev,
                        const Dataset& data) {
    if (theta.components() != theta_prev.components() || theta.dim() != theta_prev.dim()) {
        throw MixtureError("kullback_penalty: parameter sets must share J and d");
    }
    const Eigen::MatrixXd lt_new = log_responsibilities(theta, data);
    const Eigen::MatrixXd lt_old = log_responsibilities(theta_prev, data);

    double d_val = 0.0;
    for (int i = 0; i < lt_old.rows(); ++i) {
        for (int j = 0; j < lt_old.cols(); ++j) {
            const double t_old = std::exp(lt_old(i, j));
            if (t_old == 0.0) {
                continue; // 0 log 0 = 0
            }
            if (std::isinf(lt_new(i, j)) && t_old > 1e-300) {
                throw InfinitePenalty(
                    "kullback_penalty: t_" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + " vanishes at theta while positive at theta'");
            }
            d_val += t_old * (lt_old(i, j) - lt_new(i, j));
        }
    }
    if (d_val < 0.0 && d_val > -1e-12) {
        d_val = 0.0;
    }
    return d_val;
}

double modified_log_likelihood(const MixtureParams& theta, const Dataset& data) {
    return observed_log_likelihood(theta, data) -
           static_cast<double>(data.size()) * constraint_residual(theta);
}

DiagnosticsRecord diagnostics(const MixtureParams& theta, const Dataset& data,
                              double kullback) {
    DiagnosticsRecord rec;
    rec.loglik = observed_log_likelihood(theta, data);
    rec.constraint_residual = constraint_residual(theta);
    rec.modified_loglik = rec.loglik - static_cast<double>(data.size()) * rec.constraint_residual;
    rec.kullback_penalty = kullback;
    return rec;
}

} // namespace mixem
