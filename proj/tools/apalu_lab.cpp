#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alab/runner.hpp"
#include "alab/verify.hpp"

namespace {

constexpr const char* kVersion = "apalu-lab 1.0.0";

enum ExitCode { kOk = 0, kVerifyFailure = 1, kConfigError = 2, kDataError = 3 };

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trainable piecewise activation lab: training, comparison and verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string suite = "all";

    CLI::App* train = app.add_subcommand("train", "Train the configured model for every seed");
    train->add_option("--config", config_path, "JSON experiment config")->required();
    train->add_option("--set", overrides, "Override a config field: dotted.key=value");

    CLI::App* compare =
        app.add_subcommand("compare", "Run every activation arm and tabulate mean +/- std");
    compare->add_option("--config", config_path, "JSON experiment config")->required();
    compare->add_option("--set", overrides, "Override a config field: dotted.key=value");

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--suite", suite, "gradients | properties | approximation | all");

    app.add_subcommand("version", "Print version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("version")) {
            std::cout << kVersion << "\n";
            return kOk;
        }
        if (app.got_subcommand("train")) {
            const auto cfg = alab::ExperimentConfig::load(config_path, overrides);
            const auto reports = alab::run_experiment(cfg);
            for (const auto& r : reports) {
                std::cout << "seed " << r.seed << ": ";
                if (std::isfinite(r.accuracy)) std::cout << "accuracy " << r.accuracy << " ";
                if (std::isfinite(r.mse)) std::cout << "test MSE " << r.mse << " ";
                if (std::isfinite(r.train_mse)) std::cout << "train MSE " << r.train_mse << " ";
                std::cout << "(" << r.wall_clock_seconds << " s)\n";
            }
            std::cout << "reports written to " << cfg.output_dir << "\n";
            return kOk;
        }
        if (app.got_subcommand("compare")) {
            const auto cfg = alab::ExperimentConfig::load(config_path, overrides);
            const auto rows = alab::compare_activations(cfg);
            for (const auto& row : rows) {
                std::cout << row.activation << ": ";
                if (std::isfinite(row.accuracy_mean))
                    std::cout << "accuracy " << row.accuracy_mean << " +/- " << row.accuracy_std;
                else if (std::isfinite(row.mse_mean))
                    std::cout << "test MSE " << row.mse_mean << " +/- " << row.mse_std;
                std::cout << "\n";
            }
            std::cout << "comparison written to " << cfg.output_dir << "/comparison.csv\n";
            return kOk;
        }
        if (app.got_subcommand("verify")) {
            const auto results = alab::verify_suite(suite);
            const int failures = alab::print_results(results, std::cout);
            return failures == 0 ? kOk : kVerifyFailure;
        }
    } catch (const alab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const alab::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailure;
    }
    return kOk;
}
