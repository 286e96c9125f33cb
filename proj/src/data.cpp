#include "alab/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "alab/rng.hpp"

namespace alab {

std::vector<int> Dataset::labels() const {
    std::vector<int> out(targets.numel());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(targets.data[i]);
    return out;
}

// ---------------------------------------------------------------------------
// IDX
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803; // 2051
constexpr std::uint32_t kLabelsMagic = 0x00000801; // 2049

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) throw DataError("truncated IDX file: " + path);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    const unsigned char buf[4] = {static_cast<unsigned char>(v >> 24),
                                  static_cast<unsigned char>(v >> 16),
                                  static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

} // namespace

Dataset load_mnist_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw DataError("cannot open IDX images: " + images_path);
    if (read_be32(img, images_path) != kImagesMagic)
        throw DataError("bad magic in IDX images (want 2051): " + images_path);
    const std::uint32_t count = read_be32(img, images_path);
    const std::uint32_t rows = read_be32(img, images_path);
    const std::uint32_t cols = read_be32(img, images_path);
    const std::size_t dim = std::size_t(rows) * cols;

    std::vector<unsigned char> pixels(std::size_t(count) * dim);
    img.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (static_cast<std::size_t>(img.gcount()) != pixels.size())
        throw DataError("truncated IDX images: " + images_path);

    std::ifstream lbl(labels_path, std::ios::binary);
    if (!lbl) throw DataError("cannot open IDX labels: " + labels_path);
    if (read_be32(lbl, labels_path) != kLabelsMagic)
        throw DataError("bad magic in IDX labels (want 2049): " + labels_path);
    const std::uint32_t lcount = read_be32(lbl, labels_path);
    if (lcount != count)
        throw DataError("IDX count mismatch: " + std::to_string(count) + " images vs " +
                        std::to_string(lcount) + " labels");
    std::vector<unsigned char> labels(lcount);
    lbl.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
    if (static_cast<std::size_t>(lbl.gcount()) != labels.size())
        throw DataError("truncated IDX labels: " + labels_path);

    Dataset ds;
    ds.classification = true;
    ds.features = Tensor({count, dim});
    for (std::size_t i = 0; i < pixels.size(); ++i)
        ds.features.data[i] = static_cast<double>(pixels[i]) / 255.0;
    ds.targets = Tensor({std::size_t(count)});
    for (std::size_t i = 0; i < labels.size(); ++i) ds.targets.data[i] = labels[i];
    return ds;
}

void write_idx_images(const std::string& path, const std::vector<std::uint8_t>& pixels,
                      std::size_t count, std::size_t rows, std::size_t cols) {
    if (pixels.size() != count * rows * cols)
        throw DataError("write_idx_images: pixel count does not match dims");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write IDX images: " + path);
    write_be32(out, kImagesMagic);
    write_be32(out, static_cast<std::uint32_t>(count));
    write_be32(out, static_cast<std::uint32_t>(rows));
    write_be32(out, static_cast<std::uint32_t>(cols));
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

void write_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write IDX labels: " + path);
    write_be32(out, kLabelsMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
}

void dataset_to_idx(const Dataset& ds, const std::string& images_path,
                    const std::string& labels_path, std::size_t rows, std::size_t cols) {
    if (ds.dim() != rows * cols) throw DataError("dataset_to_idx: feature dim is not rows*cols");
    std::vector<std::uint8_t> pixels(ds.features.numel());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = static_cast<std::uint8_t>(std::lround(ds.features.data[i] * 255.0));
    write_idx_images(images_path, pixels, ds.n(), rows, cols);
    std::vector<std::uint8_t> labels(ds.n());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = static_cast<std::uint8_t>(ds.targets.data[i]);
    write_idx_labels(labels_path, labels);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

} // namespace

Dataset load_csv_regression(const std::string& path, std::size_t target_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t width = 0;
    std::size_t lineno = 0;
    bool first_content_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_commas(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!parse_double(cells[i], row[i])) {
                numeric = false;
                break;
            }
        if (!numeric) {
            if (first_content_row) { // header row
                first_content_row = false;
                width = cells.size();
                continue;
            }
            throw DataError("non-numeric cell at line " + std::to_string(lineno) + " of " + path);
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width)
            throw DataError("ragged CSV row at line " + std::to_string(lineno) + " of " + path +
                            " (" + std::to_string(cells.size()) + " cells, want " +
                            std::to_string(width) + ")");
        first_content_row = false;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("CSV has no data rows: " + path);
    if (target_column >= width)
        throw DataError("target column " + std::to_string(target_column) + " out of range for " +
                        std::to_string(width) + "-column CSV");

    Dataset ds;
    ds.features = Tensor({rows.size(), width - 1});
    ds.targets = Tensor({rows.size()});
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t k = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == target_column)
                ds.targets.data[r] = rows[r][c];
            else
                ds.features.at(r, k++) = rows[r][c];
        }
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Synthetic generators
// ---------------------------------------------------------------------------

Dataset synth_function(const std::string& g, double c, double d, std::size_t n, double noise_std,
                       std::uint64_t seed) {
    if (!(c < d) || n < 2) throw ConfigError("synth_function: need c < d and n >= 2");
    double (*fn)(double) = nullptr;
    if (g == "sin")
        fn = [](double x) { return std::sin(x); };
    else if (g == "abs_sin")
        fn = [](double x) { return std::fabs(std::sin(x)); };
    else if (g == "step_smooth")
        fn = [](double x) { return 1.0 / (1.0 + std::exp(-10.0 * x)); };
    else if (g == "poly3")
        fn = [](double x) { return x * x * x - x; };
    else
        throw ConfigError("synth_function: unknown function '" + g + "'");

    Dataset ds;
    ds.features = Tensor({n, std::size_t(1)});
    ds.targets = Tensor({n});
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? d : c + static_cast<double>(i) * (d - c) / static_cast<double>(n - 1);
        ds.features.data[i] = x;
        ds.targets.data[i] = fn(x) + (noise_std > 0.0 ? noise_std * rng.normal() : 0.0);
    }
    return ds;
}

std::vector<double> geometric_random_walk(std::size_t n, double s0, double drift, double vol,
                                          std::uint64_t seed) {
    std::vector<double> s(n);
    Rng rng(seed);
    double cur = s0;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = cur;
        cur *= std::exp(drift + vol * rng.normal());
    }
    return s;
}

Dataset window_time_series(const std::vector<double>& series, std::size_t lookback) {
    if (series.size() <= lookback)
        throw DataError("window_time_series: series length " + std::to_string(series.size()) +
                        " must exceed lookback " + std::to_string(lookback));
    const std::size_t count = series.size() - lookback;
    Dataset ds;
    ds.features = Tensor({count, lookback});
    ds.targets = Tensor({count});
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < lookback; ++j) ds.features.at(i, j) = series[i + j];
        ds.targets.data[i] = series[i + lookback];
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Normalization and splits
// ---------------------------------------------------------------------------

void standardize(Dataset& train, std::vector<Dataset*> others) {
    if (train.n() == 0) throw DataError("standardize: empty training set");
    const std::size_t d = train.dim();
    std::vector<double> mean(d, 0.0), stddev(d, 0.0);
    const double n = static_cast<double>(train.n());
    for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < train.n(); ++i) acc += train.features.at(i, j);
        mean[j] = acc / n;
    }
    for (std::size_t j = 0; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < train.n(); ++i) {
            const double c = train.features.at(i, j) - mean[j];
            acc += c * c;
        }
        stddev[j] = std::max(std::sqrt(acc / n), 1e-12);
    }
    auto apply = [&](Dataset& ds) {
        for (std::size_t i = 0; i < ds.n(); ++i)
            for (std::size_t j = 0; j < d; ++j)
                ds.features.at(i, j) = (ds.features.at(i, j) - mean[j]) / stddev[j];
        ds.norm.applied = true;
        ds.norm.mean = mean;
        ds.norm.stddev = stddev;
    };
    apply(train);
    for (Dataset* o : others) apply(*o);
}

void standardize_targets(Dataset& train, std::vector<Dataset*> others) {
    if (train.n() == 0) throw DataError("standardize_targets: empty training set");
    const double n = static_cast<double>(train.targets.numel());
    double mean = 0.0;
    for (double v : train.targets.data) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : train.targets.data) var += (v - mean) * (v - mean);
    const double stddev = std::max(std::sqrt(var / n), 1e-12);
    auto apply = [&](Dataset& ds) {
        for (double& v : ds.targets.data) v = (v - mean) / stddev;
        ds.norm.target_applied = true;
        ds.norm.target_mean = mean;
        ds.norm.target_stddev = stddev;
    };
    apply(train);
    for (Dataset* o : others) apply(*o);
}

namespace {

Dataset gather(const Dataset& ds, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.classification = ds.classification;
    out.norm = ds.norm;
    out.features = Tensor({idx.size(), ds.dim()});
    out.targets = Tensor({idx.size()});
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < ds.dim(); ++j) out.features.at(i, j) = ds.features.at(idx[i], j);
        out.targets.data[i] = ds.targets.data[idx[i]];
    }
    return out;
}

} // namespace

std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("split: fraction must be in (0, 1)");
    std::vector<std::size_t> idx(ds.n());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Rng rng(seed);
    rng.shuffle(idx);
    const std::size_t ntrain = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.n())));
    if (ntrain == 0 || ntrain == ds.n()) throw DataError("split: a side would be empty");
    std::vector<std::size_t> tr(idx.begin(), idx.begin() + ntrain);
    std::vector<std::size_t> te(idx.begin() + ntrain, idx.end());
    return {gather(ds, tr), gather(ds, te)};
}

std::pair<Dataset, Dataset> split_chronological(const Dataset& ds, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("split: fraction must be in (0, 1)");
    const std::size_t ntrain = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ds.n())));
    if (ntrain == 0 || ntrain == ds.n()) throw DataError("split: a side would be empty");
    std::vector<std::size_t> tr(ntrain), te(ds.n() - ntrain);
    for (std::size_t i = 0; i < ntrain; ++i) tr[i] = i;
    for (std::size_t i = ntrain; i < ds.n(); ++i) te[i - ntrain] = i;
    return {gather(ds, tr), gather(ds, te)};
}

Dataset take(const Dataset& ds, std::size_t limit) {
    if (limit >= ds.n()) return ds;
    std::vector<std::size_t> idx(limit);
    for (std::size_t i = 0; i < limit; ++i) idx[i] = i;
    return gather(ds, idx);
}

} // namespace alab
