#include "doctest.h"

#include "mixem/report.hpp"
#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace mixem;

TEST_CASE("trajectory CSV layout") {
    RunConfig cfg;
    cfg.max_cycles = 3;
    cfg.tol = 1e-300;
    const auto traj = run(testsup::toy_init(), testsup::toy_data(), cfg);
    const std::string csv = trajectory_csv(traj);

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "cycle,loglik,modified_loglik,kullback_penalty,constraint_residual");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == traj.cycles_run + 1);
    CHECK(csv.substr(csv.find('\n') + 1, 2) == "0,");
}

TEST_CASE("value formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, -12345.678901234567, 1e-17, 0.0}) {
        CHECK(std::stod(format_value(v)) == v);
    }
}

TEST_CASE("params report is key=value with full precision") {
    const auto theta = testsup::params_1d({0.25, 0.75}, {0.5, 1.0 / 3.0}, {1.0, 2.0});
    const std::string rep = params_report(theta);
    CHECK(rep.find("J=2\n") != std::string::npos);
    CHECK(rep.find("d=1\n") != std::string::npos);
    CHECK(rep.find("p_1=0.25\n") != std::string::npos);
    CHECK(rep.find("mu_2_1=" + format_value(1.0 / 3.0) + "\n") != std::string::npos);
    CHECK(rep.find("sigma_2_1_1=2\n") != std::string::npos);
}

TEST_CASE("atomic write replaces the target completely") {
    const std::string path = "test_atomic.txt";
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream got;
    got << in.rdbuf();
    CHECK(got.str() == "second\n");
    std::remove(path.c_str());
}
