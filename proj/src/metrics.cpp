#include "alab/metrics.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "alab/errors.hpp"

namespace alab {

using nlohmann::json;

double accuracy(const std::vector<int>& pred_classes, const std::vector<int>& labels) {
    if (pred_classes.empty() || pred_classes.size() != labels.size())
        throw std::invalid_argument("accuracy: empty or mismatched inputs");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (pred_classes[i] == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double mse(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.numel(); ++i) {
        const double d = target.data[i] - pred.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.numel());
}

double mae(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.numel(); ++i) acc += std::fabs(target.data[i] - pred.data[i]);
    return acc / static_cast<double>(pred.numel());
}

double rmse(const Tensor& pred, const Tensor& target) { return std::sqrt(mse(pred, target)); }

double r2(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "r2");
    double mean = 0.0;
    for (double v : target.data) mean += v;
    mean /= static_cast<double>(target.numel());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < target.numel(); ++i) {
        const double r = target.data[i] - pred.data[i];
        const double c = target.data[i] - mean;
        ss_res += r * r;
        ss_tot += c * c;
    }
    if (ss_tot <= 0.0) throw std::domain_error("r2: target variance is zero");
    return 1.0 - ss_res / ss_tot;
}

double mape(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "mape");
    double acc = 0.0;
    for (std::size_t i = 0; i < target.numel(); ++i) {
        if (target.data[i] == 0.0) throw std::domain_error("mape: zero target value");
        acc += std::fabs((target.data[i] - pred.data[i]) / target.data[i]);
    }
    return acc / static_cast<double>(target.numel());
}

namespace {

void put_if_finite(json& j, const char* key, double v) {
    if (std::isfinite(v)) j[key] = v;
}

json pairs_to_json(const std::vector<ActivationPairSnapshot>& pairs) {
    json arr = json::array();
    for (const auto& p : pairs) arr.push_back({{"layer", p.layer}, {"a", p.a}, {"b", p.b}});
    return arr;
}

} // namespace

std::string MetricsReport::to_json() const {
    json j;
    j["version"] = "apalu-lab/1";
    j["task"] = task;
    j["activation"] = activation;
    j["seed"] = seed;
    json m = json::object();
    put_if_finite(m, "accuracy", accuracy);
    put_if_finite(m, "mae", mae);
    put_if_finite(m, "mse", mse);
    put_if_finite(m, "rmse", rmse);
    put_if_finite(m, "r2", r2);
    put_if_finite(m, "mape", mape);
    put_if_finite(m, "train_mse", train_mse);
    j["metrics"] = m;
    json curve_rows = json::array();
    for (const auto& row : curve) {
        json r;
        r["epoch"] = row.epoch;
        r["train_loss"] = row.train_loss;
        if (std::isfinite(row.val_loss)) r["val_loss"] = row.val_loss;
        if (std::isfinite(row.accuracy)) r["accuracy"] = row.accuracy;
        curve_rows.push_back(r);
    }
    j["curve"] = curve_rows;
    if (!final_activation_params.empty()) {
        j["apalu"] = {{"final", pairs_to_json(final_activation_params)}};
        json traj = json::array();
        for (const auto& epoch_pairs : activation_trajectory) traj.push_back(pairs_to_json(epoch_pairs));
        j["apalu"]["trajectory"] = traj;
    }
    j["wall_clock_seconds"] = wall_clock_seconds;
    return j.dump(2);
}

void write_curve_csv(const std::string& path, const std::vector<EpochRow>& curve) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write curve CSV: " + path);
    out << "epoch,train_loss,val_loss,accuracy\n";
    out.precision(17);
    for (const auto& row : curve) {
        out << row.epoch << "," << row.train_loss << ",";
        if (std::isfinite(row.val_loss)) out << row.val_loss;
        out << ",";
        if (std::isfinite(row.accuracy)) out << row.accuracy;
        out << "\n";
    }
}

} // namespace alab
