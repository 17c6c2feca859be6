#include "doctest.h"

#include "mixem/mixture.hpp"
#include "mixem/simulation.hpp"
#include "support.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <cmath>

using namespace mixem;

TEST_CASE("benchmark scenarios carry the published parameters") {
    const auto ws = benchmark_scenario("well_separated");
    CHECK(ws.true_params.components() == 3);
    CHECK(ws.default_n == 300);
    CHECK(ws.true_params.proportions.sum() == 1.0);
    CHECK(ws.true_params.means[0][0] == 0.0);
    CHECK(ws.true_params.means[1][0] == 3.0);
    CHECK(ws.true_params.means[2][0] == 6.0);
    for (int j = 0; j < 3; ++j) {
        CHECK(ws.true_params.covariances[j](0, 0) == 1.0);
    }

    const auto ov = benchmark_scenario("overlapping");
    CHECK(ov.true_params.means[1][0] == 3.0);
    CHECK(ov.true_params.means[2][0] == 3.0);
    CHECK(ov.true_params.covariances[0](0, 0) == 1.0);
    CHECK(ov.true_params.covariances[2](0, 0) == 4.0);

    CHECK_THROWS_AS(benchmark_scenario("nonexistent"), UnknownScenario);
}

TEST_CASE("sample_mixture determinism and labels") {
    const auto sc = benchmark_scenario("well_separated");
    const auto a = sample_mixture(sc.true_params, 100, Seed{5});
    const auto b = sample_mixture(sc.true_params, 100, Seed{5});
    CHECK(testsup::same_bits(a.observations, b.observations));
    CHECK(a.labels == b.labels);
    CHECK(a.size() == 100);
    REQUIRE(a.has_labels());
    for (int z : a.labels) {
        CHECK(z >= 1);
        CHECK(z <= 3);
    }

    const auto c = sample_mixture(sc.true_params, 100, Seed{6});
    CHECK_FALSE(testsup::same_bits(a.observations, c.observations));
}

TEST_CASE("sample_mixture single component") {
    const auto theta = testsup::params_1d({1.0}, {2.0}, {1.0});
    const auto data = sample_mixture(theta, 50, Seed{1});
    for (int z : data.labels) {
        CHECK(z == 1);
    }
}

TEST_CASE("sample_mixture rejects unnormalized proportions") {
    auto theta = testsup::params_1d({0.5, 0.6}, {0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(sample_mixture(theta, 10, Seed{1}), InvalidProportions);
}

TEST_CASE("large-sample moments match the generator (frozen bounds)") {
    const auto sc = benchmark_scenario("well_separated");
    const auto data = sample_mixture(sc.true_params, 30000, Seed{1});

    std::array<double, 3> count{}, sum{};
    for (int i = 0; i < data.size(); ++i) {
        const int j = data.labels[i] - 1;
        count[j] += 1.0;
        sum[j] += data.observations(i, 0);
    }
    const std::array<double, 3> true_mu{0.0, 3.0, 6.0};
    for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(count[j] / data.size() - 1.0 / 3.0) <= 0.01);
        CHECK(std::abs(sum[j] / count[j] - true_mu[j]) <= 0.05);
    }
}

TEST_CASE("init_moment reproduces the equally-spaced family") {
    SUBCASE("closed form at J=3") {
        // x in {1,2,3}: xbar = 2, s^2 = 2/3.
        const auto data = testsup::dataset_1d({1.0, 2.0, 3.0});
        const auto theta = init_moment(data, 3);
        const double s = std::sqrt(2.0 / 3.0);
        CHECK(theta.proportions[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(theta.means[0][0] == doctest::Approx(2.0 - s).epsilon(1e-14));
        CHECK(theta.means[1][0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(theta.means[2][0] == doctest::Approx(2.0 + s).epsilon(1e-14));
        for (int j = 0; j < 3; ++j) {
            CHECK(theta.covariances[j](0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        }
    }
    SUBCASE("J=1 collapses to the sample moments") {
        const auto data = testsup::dataset_1d({0.0, 4.0});
        const auto theta = init_moment(data, 1);
        CHECK(theta.proportions[0] == 1.0);
        CHECK(theta.means[0][0] == doctest::Approx(2.0));
        CHECK(theta.covariances[0](0, 0) == doctest::Approx(4.0));
    }
    SUBCASE("multivariate data is rejected") {
        Dataset data;
        data.observations = Eigen::MatrixXd::Zero(5, 2);
        CHECK_THROWS_AS(init_moment(data, 3), DimensionUnsupported);
    }
}

TEST_CASE("init_explicit validates field by field") {
    const double third = 1.0 / 3.0;
    Eigen::VectorXd p(3);
    p << third, third, third;
    std::vector<Eigen::VectorXd> mu{Eigen::VectorXd::Constant(1, 0.0),
                                    Eigen::VectorXd::Constant(1, 0.1),
                                    Eigen::VectorXd::Constant(1, 0.2)};
    std::vector<Eigen::MatrixXd> cov{Eigen::MatrixXd::Constant(1, 1, 1.0),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0),
                                     Eigen::MatrixXd::Constant(1, 1, 1.0)};
    const auto theta = init_explicit(p, mu, cov);
    CHECK(theta.means[1][0] == 0.1);

    Eigen::VectorXd bad = p;
    bad[1] = -0.1;
    CHECK_THROWS_AS(init_explicit(bad, mu, cov), InvalidProportions);

    std::vector<Eigen::MatrixXd> asym{Eigen::MatrixXd::Identity(2, 2)};
    asym[0](0, 1) = 0.5; // not mirrored
    CHECK_THROWS_AS(init_explicit(Eigen::VectorXd::Constant(1, 1.0),
                                  {Eigen::VectorXd::Zero(2)}, asym),
                    MixtureError);
}

TEST_CASE("dataset CSV round trip") {
    const auto sc = benchmark_scenario("overlapping");
    const auto data = sample_mixture(sc.true_params, 40, Seed{3});
    const std::string path = "test_roundtrip.csv";
    write_dataset(data, path);
    const auto back = read_dataset(path);
    CHECK(testsup::same_bits(back.observations, data.observations));
    CHECK(back.labels == data.labels);
    std::remove(path.c_str());
}

TEST_CASE("dataset CSV error reporting") {
    const std::string path = "test_bad.csv";

    SUBCASE("missing header") {
        std::ofstream(path) << "0.5\n1.5\n";
        CHECK_THROWS_AS(read_dataset(path), IoError);
    }
    SUBCASE("malformed row carries its line number") {
        std::ofstream(path) << "y_1,z\n0.5,1\noops,2\n";
        try {
            read_dataset(path);
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("wrong field count") {
        std::ofstream(path) << "y_1,z\n0.5\n";
        CHECK_THROWS_AS(read_dataset(path), IoError);
    }
    std::remove(path.c_str());
}
