// mixem: simulate Gaussian-mixture benchmarks, fit them with EM, CEMM or
// SAGE, and compare convergence speed in cycles.

#include "CLI11.hpp"
#include "checks.hpp"

#include "mixem/estimators.hpp"
#include "mixem/mixture.hpp"
#include "mixem/report.hpp"
#include "mixem/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace mixem;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct InitSpec {
    std::string kind = "moment"; // moment | explicit
    int J = 3;
    std::vector<double> p;
    std::vector<double> mu;
    std::vector<double> var;
};

MixtureParams build_init(const InitSpec& init, const Dataset& data) {
    if (init.kind == "moment") {
        return init_moment(data, init.J);
    }
    if (init.kind != "explicit") {
        throw InvalidConfig("unknown init '" + init.kind + "' (expected moment or explicit)");
    }
    // Defaults reproduce the overlapping-case starting point.
    std::vector<double> p = init.p;
    std::vector<double> mu = init.mu.empty() ? std::vector<double>{0.0, 0.1, 0.2} : init.mu;
    std::vector<double> var = init.var;
    if (p.empty()) {
        p.assign(mu.size(), 1.0 / static_cast<double>(mu.size()));
    }
    if (var.empty()) {
        var.assign(mu.size(), 1.0);
    }
    if (p.size() != mu.size() || var.size() != mu.size()) {
        throw InvalidConfig("--init-p, --init-mu and --init-var must have equal lengths");
    }
    if (data.dim() != 1) {
        throw InvalidConfig("explicit init via flags supports univariate data only");
    }
    Eigen::VectorXd pv(static_cast<int>(p.size()));
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covs;
    for (std::size_t j = 0; j < p.size(); ++j) {
        pv[static_cast<int>(j)] = p[j];
        means.push_back(Eigen::VectorXd::Constant(1, mu[j]));
        covs.push_back(Eigen::MatrixXd::Constant(1, 1, var[j]));
    }
    return init_explicit(pv, means, covs);
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::ToleranceReached: return "tolerance_reached";
        case StopReason::MaxCycles: return "max_cycles";
        case StopReason::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

int cmd_simulate(const std::string& scenario, int n, std::uint64_t seed,
                 const std::string& out) {
    const auto sc = benchmark_scenario(scenario);
    const int count = n > 0 ? n : sc.default_n;
    const auto data = sample_mixture(sc.true_params, count, Seed{seed});
    write_dataset(data, out);

    const double mean = data.observations.col(0).mean();
    const double var = (data.observations.col(0).array() - mean).square().mean();
    std::cout << "wrote " << out << ": n=" << data.size() << " d=" << data.dim()
              << " scenario=" << scenario << " seed=" << seed << "\n"
              << "empirical mean " << mean << ", empirical variance " << var << "\n";
    return kExitOk;
}

int run_and_report(const Dataset& data, const MixtureParams& theta0,
                   const RunConfig& cfg, const std::string& outdir) {
    const auto traj = run(theta0, data, cfg);

    std::filesystem::create_directories(outdir);
    write_file_atomic(outdir + "/trajectory.csv", trajectory_csv(traj));
    write_file_atomic(outdir + "/params.txt", params_report(traj.final_params));

    std::cout << "algorithm " << to_string(cfg.algorithm) << ": " << traj.cycles_run
              << " cycles, stop=" << stop_reason_name(traj.stop_reason) << "\n";
    if (traj.stop_reason == StopReason::NumericalFailure) {
        std::cerr << "numerical failure at cycle " << traj.failure_cycle << ": "
                  << traj.failure_message << "\n";
        return kExitNumerical;
    }
    const auto& last = traj.records.back();
    std::cout << "final loglik " << format_value(last.loglik) << ", Lambda "
              << format_value(last.modified_loglik) << ", |sum p - 1| "
              << std::abs(last.constraint_residual) << "\n"
              << params_table(traj.final_params);
    return kExitOk;
}

int cmd_compare(const std::string& scenario, const std::string& data_path,
                const std::vector<std::string>& algorithms,
                const std::vector<std::uint64_t>& seeds, int n, const InitSpec& init,
                const RunConfig& base_cfg, const std::string& outdir) {
    if (algorithms.size() < 2) {
        throw InvalidConfig("compare needs at least two algorithms");
    }
    std::optional<Scenario> sc;
    if (!scenario.empty()) {
        sc = benchmark_scenario(scenario);
        if (seeds.empty()) {
            throw InvalidConfig("compare with a scenario needs at least one seed");
        }
    } else if (data_path.empty()) {
        throw InvalidConfig("compare needs --scenario or --data");
    }

    std::filesystem::create_directories(outdir);
    std::ostringstream summary;
    summary << "algorithm,seed,cycles,converged,final_loglik,final_modified_loglik,"
               "final_constraint_residual\n";
    std::map<std::string, std::vector<double>> cycle_counts;

    for (const auto& alg_name : algorithms) {
        RunConfig cfg = base_cfg;
        cfg.algorithm = algorithm_from_string(alg_name);
        std::ostringstream traj_csv;
        traj_csv << "seed,cycle,loglik,modified_loglik,kullback_penalty,"
                    "constraint_residual\n";
        const std::vector<std::uint64_t> run_seeds =
            sc ? seeds : std::vector<std::uint64_t>{0};
        for (std::uint64_t seed : run_seeds) {
            const Dataset data = sc ? sample_mixture(sc->true_params,
                                                     n > 0 ? n : sc->default_n, Seed{seed})
                                    : read_dataset(data_path);
            const auto theta0 = build_init(init, data);
            const auto traj = run(theta0, data, cfg);
            if (traj.stop_reason == StopReason::NumericalFailure) {
                std::cerr << to_string(cfg.algorithm) << " seed " << seed
                          << ": numerical failure at cycle " << traj.failure_cycle << ": "
                          << traj.failure_message << "\n";
                return kExitNumerical;
            }
            traj_csv << trajectory_csv_rows(traj, seed);
            const auto& last = traj.records.back();
            summary << to_string(cfg.algorithm) << ',' << seed << ',' << traj.cycles_run
                    << ',' << (traj.converged ? 1 : 0) << ','
                    << format_value(last.loglik) << ','
                    << format_value(last.modified_loglik) << ','
                    << format_value(last.constraint_residual) << '\n';
            cycle_counts[to_string(cfg.algorithm)].push_back(
                static_cast<double>(traj.cycles_run));
        }
        write_file_atomic(outdir + "/trajectory_" + to_string(cfg.algorithm) + ".csv",
                          traj_csv.str());
    }
    write_file_atomic(outdir + "/summary.csv", summary.str());

    std::ostringstream medians;
    medians << "algorithm,median_cycles\n";
    std::cout << "median cycles to tolerance:\n";
    for (auto& [alg, counts] : cycle_counts) {
        std::sort(counts.begin(), counts.end());
        const std::size_t m = counts.size();
        const double median = (m % 2) ? counts[m / 2]
                                      : 0.5 * (counts[m / 2 - 1] + counts[m / 2]);
        medians << alg << ',' << format_value(median) << '\n';
        std::cout << "  " << alg << ": " << median << "\n";
    }
    write_file_atomic(outdir + "/medians.csv", medians.str());
    return kExitOk;
}

int cmd_checks() {
    const auto results = mixem::checks::run_all();
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[pass] " : "[FAIL] ") << r.name << " — " << r.detail
                  << "\n";
        all_ok = all_ok && r.passed;
    }
    return all_ok ? kExitOk : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian mixture fitting and EM/CEMM/SAGE convergence benchmarks"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::string scenario, data_path, out = ".";
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> algorithms{"EM", "CEMM", "SAGE"};
    std::string algorithm = "EM";
    InitSpec init;
    double tol = 1e-8;
    int max_cycles = 1000;
    double variance_floor = -1.0; // <0: data-driven default

    auto* sim = app.add_subcommand("simulate", "sample a benchmark scenario to CSV");
    sim->add_option("--scenario", scenario, "well_separated or overlapping")->required();
    sim->add_option("--n", n, "sample size (default: scenario default, 300)");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--out", out, "output CSV path")->required();

    auto add_fit_options = [&](CLI::App* cmd) {
        cmd->add_option("--init", init.kind, "moment or explicit")
            ->check(CLI::IsMember({"moment", "explicit"}));
        cmd->add_option("--J", init.J, "component count for moment init");
        cmd->add_option("--init-p", init.p, "explicit init proportions")->delimiter(',');
        cmd->add_option("--init-mu", init.mu, "explicit init means")->delimiter(',');
        cmd->add_option("--init-var", init.var, "explicit init variances")->delimiter(',');
        cmd->add_option("--tol", tol, "relative Lambda-change stopping threshold");
        cmd->add_option("--max-cycles", max_cycles, "cycle budget");
        cmd->add_option("--variance-floor", variance_floor,
                        "smallest admissible covariance eigenvalue");
        cmd->add_option("--out", out, "output directory");
    };

    auto* fit = app.add_subcommand("fit", "fit one dataset with one algorithm");
    fit->add_option("--data", data_path, "dataset CSV")->required();
    fit->add_option("--algorithm", algorithm, "EM, CEMM or SAGE");
    add_fit_options(fit);

    auto* cmp = app.add_subcommand("compare", "run several algorithms across seeds");
    cmp->add_option("--scenario", scenario, "well_separated or overlapping");
    cmp->add_option("--data", data_path, "dataset CSV instead of a scenario");
    cmp->add_option("--algorithms", algorithms, "subset of EM,CEMM,SAGE")->delimiter(',');
    cmp->add_option("--seeds", seeds, "seeds, one simulated dataset each")->delimiter(',');
    cmp->add_option("--n", n, "sample size per seed");
    add_fit_options(cmp);

    auto* chk = app.add_subcommand("checks", "run the invariant battery");
    (void)chk;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            return cmd_simulate(scenario, n, seed, out);
        }
        RunConfig cfg;
        cfg.tol = tol;
        cfg.max_cycles = max_cycles;
        if (variance_floor >= 0.0) {
            cfg.variance_floor = variance_floor;
        }
        if (fit->parsed()) {
            cfg.algorithm = algorithm_from_string(algorithm);
            const auto data = read_dataset(data_path);
            return run_and_report(data, build_init(init, data), cfg, out);
        }
        if (cmp->parsed()) {
            return cmd_compare(scenario, data_path, algorithms, seeds, n, init, cfg, out);
        }
        return cmd_checks();
    } catch (const mixem::MixtureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
