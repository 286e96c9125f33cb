#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "alab/metrics.hpp"
#include "alab/rng.hpp"

using namespace alab;

TEST_CASE("accuracy") {
    CHECK(accuracy({1, 2, 3}, {1, 2, 3}) == 1.0);
    CHECK(accuracy({0, 1}, {1, 1}) == 0.5);
    CHECK(accuracy({2}, {3}) == 0.0);
    CHECK_THROWS_AS(accuracy({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(accuracy({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("mse mae rmse examples") {
    const Tensor z = Tensor::vec({0, 0});
    const Tensor t = Tensor::vec({1, -1});
    CHECK(mse(z, t) == 1.0);
    CHECK(mae(z, t) == 1.0);
    CHECK(rmse(Tensor::vec({0, 2}), Tensor::vec({1, 1})) == 1.0);
    CHECK(mse(t, t) == 0.0);
    CHECK(rmse(t, t) == 0.0);
}

TEST_CASE("r2 definition") {
    const Tensor t = Tensor::vec({1, 2, 3, 4});
    CHECK(r2(t, t) == 1.0); // perfect fit
    CHECK(r2(Tensor::vec({2.5, 2.5, 2.5, 2.5}), t) == 0.0); // constant mean predictor
    CHECK(r2(Tensor::vec({4, 3, 2, 1}), t) < 0.0); // worse than the mean
    CHECK_THROWS_AS(r2(t, Tensor::vec({5, 5, 5, 5})), std::domain_error); // zero variance
}

TEST_CASE("r2 against the direct formula on random vectors") {
    Rng rng(91);
    for (int rep = 0; rep < 50; ++rep) {
        Tensor p({std::size_t(30)}), t({std::size_t(30)});
        for (std::size_t i = 0; i < 30; ++i) {
            p.data[i] = rng.uniform(-5.0, 5.0);
            t.data[i] = rng.uniform(-5.0, 5.0);
        }
        double mean = 0.0;
        for (double v : t.data) mean += v;
        mean /= 30.0;
        double ss_res = 0.0, ss_tot = 0.0;
        for (std::size_t i = 0; i < 30; ++i) {
            ss_res += (t.data[i] - p.data[i]) * (t.data[i] - p.data[i]);
            ss_tot += (t.data[i] - mean) * (t.data[i] - mean);
        }
        CHECK(r2(p, t) == doctest::Approx(1.0 - ss_res / ss_tot).epsilon(1e-14));
    }
}

TEST_CASE("mape") {
    CHECK(mape(Tensor::vec({99}), Tensor::vec({100})) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(mape(Tensor::vec({2, 2}), Tensor::vec({2, 2})) == 0.0);
    CHECK_THROWS_AS(mape(Tensor::vec({1}), Tensor::vec({0})), std::domain_error);
}

TEST_CASE("rmse squared equals mse within 1e-12") {
    Rng rng(93);
    for (int rep = 0; rep < 100; ++rep) {
        Tensor p({std::size_t(17)}), t({std::size_t(17)});
        for (std::size_t i = 0; i < 17; ++i) {
            p.data[i] = rng.uniform(-100.0, 100.0);
            t.data[i] = rng.uniform(-100.0, 100.0);
        }
        const double r = rmse(p, t);
        CHECK(std::fabs(r * r - mse(p, t)) < 1e-12 * std::max(1.0, mse(p, t)));
        CHECK(mape(p, t) >= 0.0);
    }
}

TEST_CASE("report JSON carries only applicable metrics") {
    MetricsReport rep;
    rep.task = "function_fit";
    rep.activation = "APALU";
    rep.seed = 3;
    rep.mse = 0.5;
    rep.rmse = std::sqrt(0.5);
    rep.curve.push_back({1, 0.9, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()});
    rep.final_activation_params.push_back({"layer0", 1.1, 0.9});
    rep.activation_trajectory.push_back({{"layer0", 1.0, 1.0}});
    rep.wall_clock_seconds = 1.5;

    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["metrics"].contains("mse"));
    CHECK_FALSE(j["metrics"].contains("accuracy"));
    CHECK(j["seed"] == 3);
    CHECK(j["apalu"]["final"][0]["a"] == 1.1);
    CHECK(j.contains("wall_clock_seconds"));
    CHECK(j["curve"][0]["train_loss"] == 0.9);
    CHECK_FALSE(j["curve"][0].contains("val_loss"));
}

TEST_CASE("curve CSV format") {
    const std::string path = "/tmp/alab_curve_test.csv";
    write_curve_csv(path, {{1, 0.5, 0.6, 0.9}, {2, 0.4, std::numeric_limits<double>::quiet_NaN(),
                                                std::numeric_limits<double>::quiet_NaN()}});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "epoch,train_loss,val_loss,accuracy");
    std::getline(in, line);
    CHECK(line == "1,0.5,0.59999999999999998,0.90000000000000002");
    std::getline(in, line);
    CHECK(line == "2,0.40000000000000002,,");
    std::remove(path.c_str());
}
