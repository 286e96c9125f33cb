#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "alab/tensor.hpp"

namespace alab {

double accuracy(const std::vector<int>& pred_classes, const std::vector<int>& labels);
double mse(const Tensor& pred, const Tensor& target);
double mae(const Tensor& pred, const Tensor& target);
double rmse(const Tensor& pred, const Tensor& target);
// 1 - SS_res / SS_tot about the target mean; requires target variance > 0.
double r2(const Tensor& pred, const Tensor& target);
// mean |(t - p) / t|; requires every |t| > 0.
double mape(const Tensor& pred, const Tensor& target);

struct EpochRow {
    int epoch;
    double train_loss;
    double val_loss; // NaN when no validation split
    double accuracy; // NaN for regression
};

struct ActivationPairSnapshot {
    std::string layer;
    double a;
    double b;
};

struct MetricsReport {
    std::string task;
    std::string activation;
    std::uint64_t seed = 0;

    // NaN marks "not applicable to this task"; absent from the JSON.
    double accuracy = std::numeric_limits<double>::quiet_NaN();
    double mae = std::numeric_limits<double>::quiet_NaN();
    double mse = std::numeric_limits<double>::quiet_NaN();
    double rmse = std::numeric_limits<double>::quiet_NaN();
    double r2 = std::numeric_limits<double>::quiet_NaN();
    double mape = std::numeric_limits<double>::quiet_NaN();
    double train_mse = std::numeric_limits<double>::quiet_NaN();

    std::vector<EpochRow> curve;
    std::vector<ActivationPairSnapshot> final_activation_params;
    // learned (a, b) after every epoch, per layer
    std::vector<std::vector<ActivationPairSnapshot>> activation_trajectory;

    double wall_clock_seconds = 0.0;

    // Single JSON object; wall clock lives in its own key so determinism
    // comparisons can drop it. Doubles serialize as shortest-roundtrip
    // decimals.
    std::string to_json() const;
};

// "epoch,train_loss,val_loss,accuracy" rows; empty cells for NaN.
void write_curve_csv(const std::string& path, const std::vector<EpochRow>& curve);

} // namespace alab
