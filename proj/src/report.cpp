#include "mixem/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mixem {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_row(std::ostringstream& out, int cycle, const DiagnosticsRecord& rec) {
    out << cycle << ',' << format_value(rec.loglik) << ','
        << format_value(rec.modified_loglik) << ','
        << format_value(rec.kullback_penalty) << ','
        << format_value(rec.constraint_residual) << '\n';
}

} // namespace

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "cycle,loglik,modified_loglik,kullback_penalty,constraint_residual\n";
    for (std::size_t k = 0; k < traj.records.size(); ++k) {
        append_row(out, static_cast<int>(k), traj.records[k]);
    }
    return out.str();
}

std::string trajectory_csv_rows(const Trajectory& traj, std::uint64_t seed) {
    std::ostringstream out;
    for (std::size_t k = 0; k < traj.records.size(); ++k) {
        out << seed << ',';
        append_row(out, static_cast<int>(k), traj.records[k]);
    }
    return out.str();
}

std::string params_report(const MixtureParams& theta) {
    std::ostringstream out;
    out << "J=" << theta.components() << "\n";
    out << "d=" << theta.dim() << "\n";
    for (int j = 0; j < theta.components(); ++j) {
        out << "p_" << (j + 1) << "=" << format_value(theta.proportions[j]) << "\n";
        for (int a = 0; a < theta.dim(); ++a) {
            out << "mu_" << (j + 1) << "_" << (a + 1) << "="
                << format_value(theta.means[j][a]) << "\n";
        }
        for (int a = 0; a < theta.dim(); ++a) {
            for (int b = 0; b < theta.dim(); ++b) {
                out << "sigma_" << (j + 1) << "_" << (a + 1) << "_" << (b + 1) << "="
                    << format_value(theta.covariances[j](a, b)) << "\n";
            }
        }
    }
    return out.str();
}

std::string params_table(const MixtureParams& theta) {
    std::ostringstream out;
    out << "component        p            mu          sigma^2 (diag)\n";
    for (int j = 0; j < theta.components(); ++j) {
        char head[64];
        std::snprintf(head, sizeof(head), "%-9d %10.4f   ", j + 1, theta.proportions[j]);
        out << head << "(";
        for (int a = 0; a < theta.dim(); ++a) {
            char v[32];
            std::snprintf(v, sizeof(v), "%s%.4f", a ? " " : "", theta.means[j][a]);
            out << v;
        }
        out << ")   (";
        for (int a = 0; a < theta.dim(); ++a) {
            char v[32];
            std::snprintf(v, sizeof(v), "%s%.4f", a ? " " : "", theta.covariances[j](a, a));
            out << v;
        }
        out << ")\n";
    }
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << contents;
        if (!out) {
            throw IoError("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "': " +
                      ec.message());
    }
}

} // namespace mixem
