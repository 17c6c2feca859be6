#ifndef MIXEM_TYPES_HPP
#define MIXEM_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixem {

// Error hierarchy. Everything thrown by the library derives from MixtureError
// so drivers can catch one type and report the failure.
class MixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateCovariance : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class EmptyComponent : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class InvalidProportions : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class InfinitePenalty : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class DimensionUnsupported : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class UnknownScenario : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class InvalidConfig : public MixtureError {
public:
    using MixtureError::MixtureError;
};

class IoError : public MixtureError {
public:
    using MixtureError::MixtureError;
};

// Full parameter vector of a J-component Gaussian mixture in R^d.
//
// Proportions are stored unnormalized on purpose: the component-wise
// updates let the sum drift away from 1 between iterations, and no
// operation in this library renormalizes implicitly. Consumers that need
// a probability vector must normalize explicitly.
struct MixtureParams {
    Eigen::VectorXd proportions;              // p_j > 0, sum unconstrained
    std::vector<Eigen::VectorXd> means;       // mu_j in R^d
    std::vector<Eigen::MatrixXd> covariances; // symmetric positive definite

    int components() const { return static_cast<int>(proportions.size()); }
    int dim() const { return means.empty() ? 0 : static_cast<int>(means[0].size()); }
};

// Throws (InvalidProportions / DegenerateCovariance / MixtureError) with a
// field-by-field message when the parameter vector is malformed.
void validate(const MixtureParams& theta);

// Sum of proportions minus one. Zero on the constrained manifold.
inline double constraint_residual(const MixtureParams& theta) {
    return theta.proportions.sum() - 1.0;
}

// n observations in R^d, optionally with the generating component labels
// (1-based) when the data came from a simulator.
struct Dataset {
    Eigen::MatrixXd observations; // n x d, one observation per row
    std::vector<int> labels;      // empty, or size n with values in 1..J

    int size() const { return static_cast<int>(observations.rows()); }
    int dim() const { return static_cast<int>(observations.cols()); }
    bool has_labels() const { return !labels.empty(); }
};

// n x J posterior membership probabilities; every row sums to 1.
using Responsibilities = Eigen::MatrixXd;

// Per-cycle diagnostics recorded along a fit.
struct DiagnosticsRecord {
    double loglik = 0.0;              // L
    double modified_loglik = 0.0;     // Lambda = L - n (sum p - 1)
    double kullback_penalty = 0.0;    // D between consecutive iterates, 0 at cycle 0
    double constraint_residual = 0.0; // sum p - 1
};

} // namespace mixem

#endif
