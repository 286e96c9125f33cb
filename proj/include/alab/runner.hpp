#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "alab/data.hpp"
#include "alab/metrics.hpp"
#include "alab/nn.hpp"
#include "alab/optim.hpp"

namespace alab {

struct ApaluInit {
    enum class Mode { Random, Explicit, Preset };
    Mode mode = Mode::Random;
    double a = 1.0, b = 1.0;   // Explicit
    std::string preset = "";   // Preset

    // Gains for one layer; random mode draws fresh values per layer from (0, 2].
    ActivationParams resolve(Rng& rng) const;
};

// Initial (a, b) pairs reported per task in the source experiments.
ActivationParams named_preset(const std::string& name); // mnist, regression, anomaly, sign, stock

struct DataConfig {
    // mnist_mlp
    std::string mnist_dir = "data/mnist";
    std::size_t train_limit = 10000; // 0 = all
    std::size_t test_limit = 0;      // 0 = all
    bool standardize = true;         // per-feature, train statistics
    // csv_regression
    std::string csv_path;
    long target_column = -1; // -1 = last column
    // function_fit
    std::string function = "sin";
    double interval_lo = -3.0, interval_hi = 3.0;
    std::size_t samples = 512;
    double noise_std = 0.0;
    // timeseries_gru
    std::size_t series_length = 400;
    double walk_s0 = 100.0, walk_drift = 5e-4, walk_vol = 0.01;
    std::size_t lookback = 20;
    // shared
    double split_fraction = 0.8;
};

struct ExperimentConfig {
    std::string task = "function_fit"; // mnist_mlp | csv_regression | function_fit | timeseries_gru
    std::vector<std::size_t> hidden = {32};
    std::size_t gru_hidden = 32;
    std::string activation = "APALU";
    std::vector<std::string> baselines;
    OptimizerConfig optimizer;
    std::size_t batch_size = 64;
    std::size_t epochs = 100;
    std::vector<std::uint64_t> seeds = {1};
    ApaluInit apalu_init;
    DataConfig data;
    std::string output_dir = "out";
    bool save_checkpoints = false;
    double grad_clip = 0.0; // 0 = off

    void validate() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path,
                                 const std::vector<std::string>& overrides = {});
};

// Applies one "dotted.key=value" override to a raw config document.
void apply_override(nlohmann::json& j, const std::string& key_value);

// Trains one model with the given activation and seed; fully deterministic
// for a fixed (config, activation, seed) triple. Throws NumericError naming
// the epoch if the loss diverges to NaN.
MetricsReport run_single(const ExperimentConfig& cfg, const std::string& activation,
                         std::uint64_t seed);

// Runs the activation under test for every seed, writing report_<seed>.json
// and curve_<seed>.csv under output_dir.
std::vector<MetricsReport> run_experiment(const ExperimentConfig& cfg);

struct ComparisonRow {
    std::string activation;
    std::size_t seeds = 0;
    // mean/std per metric; NaN where a metric does not apply
    double accuracy_mean, accuracy_std;
    double mse_mean, mse_std;
    double rmse_mean, rmse_std;
    double train_mse_mean, train_mse_std;
    std::vector<MetricsReport> reports;
};

// Runs every activation arm (activation under test + baselines) for every
// seed. Weight initialization and data order depend only on the seed, so the
// activation is the single varying factor. Writes comparison.csv/.json.
std::vector<ComparisonRow> compare_activations(const ExperimentConfig& cfg);

// Report JSON with the wall-clock field removed (determinism comparisons).
std::string report_json_without_wallclock(const MetricsReport& report);

} // namespace alab
