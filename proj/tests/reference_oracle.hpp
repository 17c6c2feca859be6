#ifndef MIXEM_TESTS_REFERENCE_ORACLE_HPP
#define MIXEM_TESTS_REFERENCE_ORACLE_HPP

// Brute-force univariate reference implementations, written as literal
// transcriptions of the update formulas with plain double arithmetic.
// Deliberately independent of the library code paths (no Eigen, no
// log-sum-exp, no caching) so they can serve as oracles.

#include <cmath>
#include <vector>

namespace oracle {

struct Params1d {
    std::vector<double> p;
    std::vector<double> mu;
    std::vector<double> var;
};

inline double phi(double y, double mu, double var) {
    return std::exp(-0.5 * (y - mu) * (y - mu) / var) / std::sqrt(2.0 * M_PI * var);
}

// t_ij = p_j phi(y_i) / sum_l p_l phi_l(y_i)
inline std::vector<std::vector<double>> resp(const Params1d& th,
                                             const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t J = th.p.size();
    std::vector<std::vector<double>> t(n, std::vector<double>(J));
    for (std::size_t i = 0; i < n; ++i) {
        double denom = 0.0;
        for (std::size_t l = 0; l < J; ++l) {
            denom += th.p[l] * phi(y[i], th.mu[l], th.var[l]);
        }
        for (std::size_t j = 0; j < J; ++j) {
            t[i][j] = th.p[j] * phi(y[i], th.mu[j], th.var[j]) / denom;
        }
    }
    return t;
}

// p_j = (1/n) sum_i t_ij; mu_j = sum t y / sum t; var_j about the new mu_j.
inline void update_component(const std::vector<std::vector<double>>& t,
                             const std::vector<double>& y, std::size_t j,
                             Params1d& th) {
    const std::size_t n = y.size();
    double s = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += t[i][j];
        sy += t[i][j] * y[i];
    }
    const double mu = sy / s;
    double sv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sv += t[i][j] * (y[i] - mu) * (y[i] - mu);
    }
    th.p[j] = s / static_cast<double>(n);
    th.mu[j] = mu;
    th.var[j] = sv / s;
}

inline Params1d em_step(const Params1d& th, const std::vector<double>& y) {
    const auto t = resp(th, y);
    Params1d out = th;
    for (std::size_t j = 0; j < th.p.size(); ++j) {
        update_component(t, y, j, out);
    }
    return out;
}

// Single-column update, everything else frozen.
inline Params1d cemm_step(const Params1d& th, const std::vector<double>& y,
                          std::size_t j) {
    const auto t = resp(th, y);
    Params1d out = th;
    update_component(t, y, j, out);
    return out;
}

// J (mu, var) iterations with fresh responsibilities, then one joint
// proportions update.
inline Params1d sage_step(const Params1d& th, const std::vector<double>& y) {
    Params1d out = th;
    const std::size_t J = th.p.size();
    for (std::size_t j = 0; j < J; ++j) {
        const auto t = resp(out, y);
        const double keep_p = out.p[j];
        update_component(t, y, j, out);
        out.p[j] = keep_p;
    }
    const auto t = resp(out, y);
    for (std::size_t j = 0; j < J; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            s += t[i][j];
        }
        out.p[j] = s / static_cast<double>(y.size());
    }
    return out;
}

inline double loglik(const Params1d& th, const std::vector<double>& y) {
    double total = 0.0;
    for (double yi : y) {
        double g = 0.0;
        for (std::size_t j = 0; j < th.p.size(); ++j) {
            g += th.p[j] * phi(yi, th.mu[j], th.var[j]);
        }
        total += std::log(g);
    }
    return total;
}

} // namespace oracle

#endif
