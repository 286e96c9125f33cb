#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "alab/tensor.hpp"

namespace alab {

// Per-feature statistics recorded when a dataset is standardized, so the same
// transform can be applied to other splits and inverted for reporting.
struct Normalization {
    bool applied = false;
    std::vector<double> mean;
    std::vector<double> stddev;
    bool target_applied = false;
    double target_mean = 0.0;
    double target_stddev = 1.0;
};

struct Dataset {
    Tensor features; // n x d
    Tensor targets;  // n (class indices for classification, reals otherwise)
    bool classification = false;
    Normalization norm;

    std::size_t n() const { return features.rows(); }
    std::size_t dim() const { return features.cols(); }

    std::vector<int> labels() const; // classification targets as ints
};

// MNIST IDX container: big-endian magic (2051 images / 2049 labels),
// big-endian 32-bit dims, unsigned-byte payload. Pixels scale to [0,1] by
// /255 and images flatten to rows of 784.
Dataset load_mnist_idx(const std::string& images_path, const std::string& labels_path);

// Writers for the same container, used by fixtures and round-trip tests.
void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::size_t count, std::size_t rows, std::size_t cols);
void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels);
// Re-encodes a [0,1]-scaled image dataset as IDX (pixel = round(v*255)).
void dataset_to_idx(const Dataset& ds, const std::string& images_path,
                    const std::string& labels_path, std::size_t rows = 28, std::size_t cols = 28);

// Rectangular numeric CSV with optional header (auto-detected: first row
// non-numeric). Feature columns are all but target_column; row order kept.
Dataset load_csv_regression(const std::string& path, std::size_t target_column);

// y = g(x) + N(0, noise_std^2) on a uniform n-point grid over [c, d].
// g is one of sin, abs_sin, step_smooth (logistic ramp 1/(1+exp(-10x))),
// poly3 (x^3 - x).
Dataset synth_function(const std::string& g, double c, double d, std::size_t n, double noise_std,
                       std::uint64_t seed);

// Multiplicative random walk: s[t+1] = s[t] * exp(drift + vol * z_t).
std::vector<double> geometric_random_walk(std::size_t n, double s0, double drift, double vol,
                                          std::uint64_t seed);

// Sliding windows: sample i = (series[i..i+L), series[i+L]); n-L samples.
Dataset window_time_series(const std::vector<double>& series, std::size_t lookback);

// Per-feature (x - mu) / sigma with statistics from train only (sigma floored
// at 1e-12); the identical transform is applied to the other datasets.
// standardize_targets additionally standardizes regression targets.
void standardize(Dataset& train, std::vector<Dataset*> others = {});
void standardize_targets(Dataset& train, std::vector<Dataset*> others = {});

// Seeded shuffle, then first floor(n*fraction) rows to train; disjoint and
// exhaustive.
std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed);

// First floor(n*fraction) rows to train, order preserved (time series).
std::pair<Dataset, Dataset> split_chronological(const Dataset& ds, double fraction);

// Row subset [0, limit) of a dataset.
Dataset take(const Dataset& ds, std::size_t limit);

} // namespace alab
