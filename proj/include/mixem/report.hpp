#ifndef MIXEM_REPORT_HPP
#define MIXEM_REPORT_HPP

#include "mixem/estimators.hpp"

#include <string>

namespace mixem {

// Locale-independent, 17 significant digits.
std::string format_value(double v);

// Header: cycle,loglik,modified_loglik,kullback_penalty,constraint_residual
std::string trajectory_csv(const Trajectory& traj);

// Same rows prefixed with a seed column, for combined multi-seed files.
std::string trajectory_csv_rows(const Trajectory& traj, std::uint64_t seed);

// key=value report: J, d, then p_j, mu_j_a, sigma_j_a_b per component.
std::string params_report(const MixtureParams& theta);

// Human-readable per-component table (p, mu, sigma^2 diagonal).
std::string params_table(const MixtureParams& theta);

// Writes to a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace mixem

#endif
