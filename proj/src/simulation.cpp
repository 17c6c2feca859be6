#include "mixem/simulation.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace mixem {

Scenario benchmark_scenario(const std::string& name) {
    const double third = 1.0 / 3.0;
    Scenario sc;
    sc.name = name;
    sc.default_n = 300;
    sc.true_params.proportions = Eigen::Vector3d(third, third, third);
    // Pin the sum to exactly 1.
    sc.true_params.proportions[2] = 1.0 - sc.true_params.proportions[0] -
                                    sc.true_params.proportions[1];
    auto scalar = [](double v) { return Eigen::VectorXd::Constant(1, v); };
    auto var = [](double v) { return Eigen::MatrixXd::Constant(1, 1, v); };
    if (name == "well_separated") {
        sc.true_params.means = {scalar(0.0), scalar(3.0), scalar(6.0)};
        sc.true_params.covariances = {var(1.0), var(1.0), var(1.0)};
    } else if (name == "overlapping") {
        sc.true_params.means = {scalar(0.0), scalar(3.0), scalar(3.0)};
        sc.true_params.covariances = {var(1.0), var(1.0), var(4.0)};
    } else {
        throw UnknownScenario("unknown scenario '" + name +
                              "' (expected well_separated or overlapping)");
    }
    return sc;
}

std::vector<std::string> scenario_names() {
    return {"well_separated", "overlapping"};
}

namespace {

// Fixed, documented source of randomness: mt19937_64 outputs mapped to
// [0,1) by their top 53 bits, normals by Box-Muller with a cached spare.
// std::*_distribution is implementation-defined, so it is not used here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) {
            u1 = uniform01();
        }
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

Dataset sample_mixture(const MixtureParams& theta, int n, Seed seed) {
    validate(theta);
    if (std::abs(constraint_residual(theta)) > 1e-12) {
        throw InvalidProportions("sample_mixture: proportions must sum to 1 within 1e-12");
    }
    if (n < 1) {
        throw MixtureError("sample_mixture: n must be >= 1");
    }
    const int J = theta.components();
    const int d = theta.dim();

    std::vector<Eigen::MatrixXd> chol(J);
    for (int j = 0; j < J; ++j) {
        Eigen::LLT<Eigen::MatrixXd> llt(theta.covariances[j]);
        if (llt.info() != Eigen::Success) {
            throw DegenerateCovariance("sample_mixture: component " + std::to_string(j + 1) +
                                       " covariance is not positive definite");
        }
        chol[j] = llt.matrixL();
    }

    Rng rng(seed.value);
    Dataset out;
    out.observations.resize(n, d);
    out.labels.resize(n);
    Eigen::VectorXd xi(d);
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        int z = J - 1;
        double cum = 0.0;
        for (int j = 0; j < J; ++j) {
            cum += theta.proportions[j];
            if (u < cum) {
                z = j;
                break;
            }
        }
        for (int a = 0; a < d; ++a) {
            xi[a] = rng.normal();
        }
        out.observations.row(i) = (theta.means[z] + chol[z] * xi).transpose();
        out.labels[i] = z + 1;
    }
    return out;
}

MixtureParams init_moment(const Dataset& data, int J) {
    if (data.dim() != 1) {
        throw DimensionUnsupported("init_moment is defined for univariate data only");
    }
    if (J < 1) {
        throw MixtureError("init_moment: J must be >= 1");
    }
    const double n = static_cast<double>(data.size());
    const double xbar = data.observations.col(0).mean();
    const double s2 = (data.observations.col(0).array() - xbar).square().sum() / n;
    const double s = std::sqrt(s2);

    MixtureParams theta;
    theta.proportions = Eigen::VectorXd::Constant(J, 1.0 / J);
    theta.means.resize(J);
    theta.covariances.resize(J);
    for (int j = 0; j < J; ++j) {
        const double c = (J == 1) ? 0.0 : -1.0 + 2.0 * j / (J - 1.0);
        theta.means[j] = Eigen::VectorXd::Constant(1, xbar + c * s);
        theta.covariances[j] = Eigen::MatrixXd::Constant(1, 1, s2);
    }
    validate(theta);
    return theta;
}

MixtureParams init_explicit(const Eigen::VectorXd& proportions,
                            const std::vector<Eigen::VectorXd>& means,
                            const std::vector<Eigen::MatrixXd>& covariances) {
    MixtureParams theta;
    theta.proportions = proportions;
    theta.means = means;
    theta.covariances = covariances;
    validate(theta);
    return theta;
}

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_dataset(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    for (int a = 0; a < data.dim(); ++a) {
        out << (a ? "," : "") << "y_" << (a + 1);
    }
    if (data.has_labels()) {
        out << ",z";
    }
    out << "\n";
    for (int i = 0; i < data.size(); ++i) {
        for (int a = 0; a < data.dim(); ++a) {
            out << (a ? "," : "") << g17(data.observations(i, a));
        }
        if (data.has_labels()) {
            out << "," << data.labels[i];
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path + ": empty file (missing header)");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            cols.push_back(tok);
        }
    }
    int d = 0;
    bool has_z = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c] == "y_" + std::to_string(c + 1)) {
            ++d;
        } else if (c + 1 == cols.size() && cols[c] == "z") {
            has_z = true;
        } else {
            throw IoError(path + ": line 1: bad header column '" + cols[c] +
                          "' (expected y_1,...,y_d[,z])");
        }
    }
    if (d == 0) {
        throw IoError(path + ": line 1: missing y_1 header column");
    }

    std::vector<double> values;
    std::vector<int> labels;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        int c = 0;
        const int expected = d + (has_z ? 1 : 0);
        while (std::getline(ss, tok, ',')) {
            ++c;
            if (c > expected) {
                break;
            }
            try {
                std::size_t pos = 0;
                if (c <= d) {
                    values.push_back(std::stod(tok, &pos));
                } else {
                    labels.push_back(std::stoi(tok, &pos));
                }
                if (pos != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw IoError(path + ": line " + std::to_string(lineno) +
                              ": cannot parse '" + tok + "'");
            }
        }
        if (c != expected) {
            throw IoError(path + ": line " + std::to_string(lineno) + ": expected " +
                          std::to_string(expected) + " fields, got " + std::to_string(c));
        }
    }
    const int n = static_cast<int>(values.size()) / d;
    if (n == 0) {
        throw IoError(path + ": no data rows");
    }
    Dataset out;
    out.observations.resize(n, d);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a) {
            out.observations(i, a) = values[static_cast<std::size_t>(i) * d + a];
        }
    }
    out.labels = std::move(labels);
    return out;
}

} // namespace mixem
