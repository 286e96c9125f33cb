#include "alab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "alab/gradcheck.hpp"

namespace alab {

using nlohmann::json;

ActivationParams ApaluInit::resolve(Rng& rng) const {
    switch (mode) {
        case Mode::Explicit: {
            ActivationParams p{a, b};
            if (!p.valid()) throw ConfigError("apalu_init: explicit values must be positive");
            return p;
        }
        case Mode::Preset:
            return named_preset(preset);
        case Mode::Random: {
            double ra = rng.uniform(0.0, 2.0);
            while (ra == 0.0) ra = rng.uniform(0.0, 2.0);
            double rb = rng.uniform(0.0, 2.0);
            while (rb == 0.0) rb = rng.uniform(0.0, 2.0);
            return {ra, rb};
        }
    }
    throw ConfigError("apalu_init: bad mode");
}

ActivationParams named_preset(const std::string& name) {
    if (name == "mnist") return {1.05, 1.20};
    if (name == "regression" || name == "anomaly") return {0.55, 0.065};
    if (name == "sign") return {1.01, 1.00};
    if (name == "stock") return {0.40, 1.00};
    throw ConfigError("unknown apalu preset: '" + name + "'");
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (task != "mnist_mlp" && task != "csv_regression" && task != "function_fit" &&
        task != "timeseries_gru")
        throw ConfigError("unknown task: '" + task + "'");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (seeds.empty()) throw ConfigError("need at least one seed");
    optimizer.validate();
    if (apalu_init.mode == ApaluInit::Mode::Explicit &&
        !ActivationParams{apalu_init.a, apalu_init.b}.valid())
        throw ConfigError("apalu_init: explicit values must be positive and finite");
    ActivationKind::parse(activation);
    for (const auto& b : baselines) ActivationKind::parse(b);
    if (task == "timeseries_gru") {
        const auto k = ActivationKind::parse(activation).tag;
        if (k != ActKind::APALU && k != ActKind::Tanh)
            throw ConfigError("timeseries_gru supports APALU or Tanh candidates only");
        for (const auto& b : baselines) {
            const auto bk = ActivationKind::parse(b).tag;
            if (bk != ActKind::APALU && bk != ActKind::Tanh)
                throw ConfigError("timeseries_gru supports APALU or Tanh candidates only");
        }
    }
}

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& scope) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("unknown config key '" + (scope.empty() ? key : scope + "." + key) + "'");
    }
}

ApaluInit apalu_init_from_json(const json& j) {
    reject_unknown_keys(j, {"mode", "a", "b", "name"}, "apalu_init");
    ApaluInit init;
    const std::string mode = j.value("mode", "random");
    if (mode == "random") {
        init.mode = ApaluInit::Mode::Random;
    } else if (mode == "explicit") {
        init.mode = ApaluInit::Mode::Explicit;
        init.a = j.at("a").get<double>();
        init.b = j.at("b").get<double>();
    } else if (mode == "preset") {
        init.mode = ApaluInit::Mode::Preset;
        init.preset = j.at("name").get<std::string>();
        named_preset(init.preset);
    } else {
        throw ConfigError("apalu_init.mode must be random, explicit or preset");
    }
    return init;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    reject_unknown_keys(j,
                        {"task", "model", "activation", "baselines", "optimizer", "batch_size",
                         "epochs", "seeds", "apalu_init", "data", "output_dir", "save_checkpoints",
                         "grad_clip"},
                        "");
    ExperimentConfig cfg;
    cfg.task = j.value("task", cfg.task);
    if (j.contains("model")) {
        const json& m = j["model"];
        reject_unknown_keys(m, {"hidden", "gru_hidden"}, "model");
        if (m.contains("hidden")) cfg.hidden = m["hidden"].get<std::vector<std::size_t>>();
        cfg.gru_hidden = m.value("gru_hidden", cfg.gru_hidden);
    }
    cfg.activation = j.value("activation", cfg.activation);
    if (j.contains("baselines")) cfg.baselines = j["baselines"].get<std::vector<std::string>>();
    if (j.contains("optimizer")) {
        const json& o = j["optimizer"];
        reject_unknown_keys(o, {"kind", "lr", "beta1", "beta2", "eps"}, "optimizer");
        const std::string kind = o.value("kind", "adam");
        if (kind == "adam")
            cfg.optimizer.kind = OptimizerConfig::Kind::Adam;
        else if (kind == "sgd")
            cfg.optimizer.kind = OptimizerConfig::Kind::SGD;
        else
            throw ConfigError("optimizer.kind must be adam or sgd");
        cfg.optimizer.lr = o.value("lr", cfg.optimizer.lr);
        cfg.optimizer.beta1 = o.value("beta1", cfg.optimizer.beta1);
        cfg.optimizer.beta2 = o.value("beta2", cfg.optimizer.beta2);
        cfg.optimizer.eps = o.value("eps", cfg.optimizer.eps);
    }
    cfg.batch_size = j.value("batch_size", cfg.batch_size);
    cfg.epochs = j.value("epochs", cfg.epochs);
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("apalu_init")) cfg.apalu_init = apalu_init_from_json(j["apalu_init"]);
    if (j.contains("data")) {
        const json& d = j["data"];
        reject_unknown_keys(d,
                            {"mnist_dir", "train_limit", "test_limit", "csv_path", "target_column",
                             "function", "interval", "samples", "noise_std", "series_length",
                             "walk_s0", "walk_drift", "walk_vol", "lookback", "split_fraction",
                             "standardize"},
                            "data");
        cfg.data.mnist_dir = d.value("mnist_dir", cfg.data.mnist_dir);
        cfg.data.train_limit = d.value("train_limit", cfg.data.train_limit);
        cfg.data.test_limit = d.value("test_limit", cfg.data.test_limit);
        cfg.data.csv_path = d.value("csv_path", cfg.data.csv_path);
        cfg.data.target_column = d.value("target_column", cfg.data.target_column);
        cfg.data.function = d.value("function", cfg.data.function);
        if (d.contains("interval")) {
            const auto iv = d["interval"].get<std::vector<double>>();
            if (iv.size() != 2) throw ConfigError("data.interval must be [lo, hi]");
            cfg.data.interval_lo = iv[0];
            cfg.data.interval_hi = iv[1];
        }
        cfg.data.samples = d.value("samples", cfg.data.samples);
        cfg.data.noise_std = d.value("noise_std", cfg.data.noise_std);
        cfg.data.series_length = d.value("series_length", cfg.data.series_length);
        cfg.data.walk_s0 = d.value("walk_s0", cfg.data.walk_s0);
        cfg.data.walk_drift = d.value("walk_drift", cfg.data.walk_drift);
        cfg.data.walk_vol = d.value("walk_vol", cfg.data.walk_vol);
        cfg.data.lookback = d.value("lookback", cfg.data.lookback);
        cfg.data.split_fraction = d.value("split_fraction", cfg.data.split_fraction);
        cfg.data.standardize = d.value("standardize", cfg.data.standardize);
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.save_checkpoints = j.value("save_checkpoints", cfg.save_checkpoints);
    cfg.grad_clip = j.value("grad_clip", cfg.grad_clip);
    cfg.validate();
    return cfg;
}

void apply_override(json& j, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + key_value + "'");
    std::string path = key_value.substr(0, eq);
    const std::string raw = key_value.substr(eq + 1);
    std::replace(path.begin(), path.end(), '.', '/');
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw; // plain string
    }
    j[json::json_pointer("/" + path)] = value;
}

ExperimentConfig ExperimentConfig::load(const std::string& path,
                                        const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    for (const auto& kv : overrides) apply_override(j, kv);
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError("config error in " + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Data preparation
// ---------------------------------------------------------------------------

namespace {

struct TaskData {
    Dataset train;
    Dataset test;
    bool has_test = false;
};

TaskData prepare_data(const ExperimentConfig& cfg, std::uint64_t seed) {
    TaskData td;
    if (cfg.task == "mnist_mlp") {
        const std::string dir = cfg.data.mnist_dir;
        Dataset train = load_mnist_idx(dir + "/train-images-idx3-ubyte", dir + "/train-labels-idx1-ubyte");
        Dataset test = load_mnist_idx(dir + "/t10k-images-idx3-ubyte", dir + "/t10k-labels-idx1-ubyte");
        if (cfg.data.train_limit > 0) train = take(train, cfg.data.train_limit);
        if (cfg.data.test_limit > 0) test = take(test, cfg.data.test_limit);
        if (cfg.data.standardize) standardize(train, {&test});
        td.train = std::move(train);
        td.test = std::move(test);
        td.has_test = true;
    } else if (cfg.task == "csv_regression") {
        if (cfg.data.csv_path.empty()) throw ConfigError("csv_regression needs data.csv_path");
        Dataset all = load_csv_regression(
            cfg.data.csv_path, cfg.data.target_column < 0
                                   ? load_csv_regression(cfg.data.csv_path, 0).dim()
                                   : static_cast<std::size_t>(cfg.data.target_column));
        auto [train, test] = split(all, cfg.data.split_fraction, seed);
        standardize(train, {&test});
        td.train = std::move(train);
        td.test = std::move(test);
        td.has_test = true;
    } else if (cfg.task == "function_fit") {
        td.train = synth_function(cfg.data.function, cfg.data.interval_lo, cfg.data.interval_hi,
                                  cfg.data.samples, cfg.data.noise_std, seed);
        td.has_test = false;
    } else if (cfg.task == "timeseries_gru") {
        const auto series = geometric_random_walk(cfg.data.series_length, cfg.data.walk_s0,
                                                  cfg.data.walk_drift, cfg.data.walk_vol, seed);
        Dataset all = window_time_series(series, cfg.data.lookback);
        auto [train, test] = split_chronological(all, cfg.data.split_fraction);
        standardize(train, {&test});
        standardize_targets(train, {&test});
        td.train = std::move(train);
        td.test = std::move(test);
        td.has_test = true;
    } else {
        throw ConfigError("unknown task: " + cfg.task);
    }
    return td;
}

ModelSpec build_model_spec(const ExperimentConfig& cfg, const ActivationKind& act,
                           std::size_t in_dim, std::size_t out_dim, Rng& apalu_rng) {
    ModelSpec spec;
    if (cfg.task == "timeseries_gru") {
        spec.kind = ModelKind::GRU_regressor;
        spec.head = OutputHead::LinearRegressor;
        spec.gru.input_dim = 1;
        spec.gru.hidden = cfg.gru_hidden;
        spec.gru.lookback = cfg.data.lookback;
        spec.gru.apalu_candidate = act.tag == ActKind::APALU;
        if (spec.gru.apalu_candidate) {
            spec.gru.apalu_params = cfg.apalu_init.resolve(apalu_rng);
            spec.gru.trainable_activation = true;
        }
        return spec;
    }
    spec.kind = ModelKind::MLP;
    spec.head = cfg.task == "mnist_mlp" ? OutputHead::SoftmaxClassifier : OutputHead::LinearRegressor;
    std::size_t prev = in_dim;
    for (std::size_t width : cfg.hidden) {
        LayerSpec l;
        l.in_dim = prev;
        l.out_dim = width;
        l.activation = act;
        if (act.tag == ActKind::APALU) {
            l.activation_params = cfg.apalu_init.resolve(apalu_rng);
            l.trainable_activation = true;
        }
        spec.layers.push_back(l);
        prev = width;
    }
    LayerSpec out;
    out.in_dim = prev;
    out.out_dim = out_dim;
    out.activation = {ActKind::Identity};
    spec.layers.push_back(out);
    return spec;
}

Tensor gather_rows(const Tensor& src, const std::vector<std::size_t>& idx, std::size_t lo,
                   std::size_t hi) {
    Tensor out({hi - lo, src.cols()});
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = 0; j < src.cols(); ++j) out.at(i - lo, j) = src.at(idx[i], j);
    return out;
}

std::vector<int> argmax_rows(const Tensor& logits) {
    std::vector<int> out(logits.rows());
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < logits.cols(); ++j)
            if (logits.at(i, j) > logits.at(i, best)) best = j;
        out[i] = static_cast<int>(best);
    }
    return out;
}

struct EvalResult {
    double loss = std::numeric_limits<double>::quiet_NaN();
    double acc = std::numeric_limits<double>::quiet_NaN();
    Tensor predictions; // regression: batch x 1 in training units
};

EvalResult evaluate(const Model& model, const Dataset& ds, bool classification) {
    Tape tape;
    Value out = model.forward(tape, ds.features);
    EvalResult res;
    if (classification) {
        const auto labels = ds.labels();
        res.loss = tape.value(tape.softmax_xent(out, labels)).data[0];
        res.acc = accuracy(argmax_rows(tape.value(out)), labels);
    } else {
        Tensor target({ds.n(), std::size_t(1)});
        for (std::size_t i = 0; i < ds.n(); ++i) target.data[i] = ds.targets.data[i];
        Value t = tape.input(target);
        res.loss = tape.value(mse_loss(tape, out, t)).data[0];
        res.predictions = tape.value(out);
    }
    return res;
}

void clip_gradients(std::map<std::string, Tensor>& grads, const std::vector<ParamRef>& params,
                    double clip) {
    double sq = 0.0;
    for (const auto& p : params) {
        const Tensor& g = grads.at(p.name);
        for (double v : g.data) sq += v * v;
    }
    const double norm = std::sqrt(sq);
    if (norm <= clip) return;
    const double s = clip / norm;
    for (const auto& p : params)
        for (double& v : grads.at(p.name).data) v *= s;
}

std::vector<ActivationPairSnapshot> snapshot_pairs(const Model& model) {
    std::vector<ActivationPairSnapshot> out;
    for (const auto& [layer, a, b] : model.activation_pairs()) out.push_back({layer, a, b});
    return out;
}

} // namespace

MetricsReport run_single(const ExperimentConfig& cfg, const std::string& activation,
                         std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();
    const ActivationKind act = ActivationKind::parse(activation);

    TaskData data = prepare_data(cfg, seed);
    const bool classification = data.train.classification;

    // Separate streams: weights depend only on the seed (identical across
    // activation arms), APALU inits come from their own stream.
    Rng weight_rng(seed);
    Rng apalu_rng(seed ^ 0x9e3779b97f4a7c15ULL);

    std::size_t in_dim = data.train.dim();
    std::size_t out_dim = classification ? 10 : 1;
    ModelSpec spec = build_model_spec(cfg, act, in_dim, out_dim, apalu_rng);
    Model model(spec, weight_rng);
    auto params = model.parameters();

    Optimizer opt(cfg.optimizer);

    MetricsReport report;
    report.task = cfg.task;
    report.activation = activation;
    report.seed = seed;
    report.activation_trajectory.push_back(snapshot_pairs(model)); // epoch 0 = init

    const std::size_t n = data.train.n();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    const auto train_labels = classification ? data.train.labels() : std::vector<int>{};

    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        Rng shuffle_rng(seed + epoch); // per-epoch derived seed
        shuffle_rng.shuffle(order);
        try {
            for (std::size_t start = 0; start < n; start += cfg.batch_size) {
                const std::size_t end = std::min(n, start + cfg.batch_size);
                Tensor X = gather_rows(data.train.features, order, start, end);
                Tape tape;
                Value out = model.forward(tape, X);
                Value loss;
                if (classification) {
                    std::vector<int> labels(end - start);
                    for (std::size_t i = start; i < end; ++i)
                        labels[i - start] = train_labels[order[i]];
                    loss = softmax_cross_entropy(tape, out, labels);
                } else {
                    Tensor y({end - start, std::size_t(1)});
                    for (std::size_t i = start; i < end; ++i)
                        y.data[i - start] = data.train.targets.data[order[i]];
                    loss = mse_loss(tape, out, tape.input(y));
                }
                Gradients grads = tape.backward(loss);
                if (cfg.grad_clip > 0.0) clip_gradients(grads.params, params, cfg.grad_clip);
                opt.step(params, grads.params);
            }
        } catch (const NumericError& e) {
            throw NumericError("training diverged at epoch " + std::to_string(epoch) + ": " +
                               e.what());
        }

        EvalResult train_eval = evaluate(model, data.train, classification);
        EpochRow row;
        row.epoch = static_cast<int>(epoch);
        row.train_loss = train_eval.loss;
        row.val_loss = std::numeric_limits<double>::quiet_NaN();
        row.accuracy = std::numeric_limits<double>::quiet_NaN();
        if (data.has_test) {
            EvalResult test_eval = evaluate(model, data.test, classification);
            row.val_loss = test_eval.loss;
            if (classification) row.accuracy = test_eval.acc;
        } else if (classification) {
            row.accuracy = train_eval.acc;
        }
        report.curve.push_back(row);
        report.activation_trajectory.push_back(snapshot_pairs(model));
    }

    // Final metrics
    const Dataset& eval_ds = data.has_test ? data.test : data.train;
    EvalResult final_eval = evaluate(model, eval_ds, classification);
    if (classification) {
        report.accuracy = final_eval.acc;
    } else {
        // report regression metrics in original target units
        Tensor pred = final_eval.predictions;
        Tensor target({eval_ds.n()});
        for (std::size_t i = 0; i < eval_ds.n(); ++i) target.data[i] = eval_ds.targets.data[i];
        Tensor pred_flat({eval_ds.n()});
        for (std::size_t i = 0; i < eval_ds.n(); ++i) pred_flat.data[i] = pred.data[i];
        if (eval_ds.norm.target_applied) {
            for (std::size_t i = 0; i < eval_ds.n(); ++i) {
                pred_flat.data[i] =
                    pred_flat.data[i] * eval_ds.norm.target_stddev + eval_ds.norm.target_mean;
                target.data[i] = target.data[i] * eval_ds.norm.target_stddev + eval_ds.norm.target_mean;
            }
        }
        report.mse = mse(pred_flat, target);
        report.mae = mae(pred_flat, target);
        report.rmse = rmse(pred_flat, target);
        report.r2 = r2(pred_flat, target);
        bool all_nonzero = true;
        for (double v : target.data) all_nonzero = all_nonzero && v != 0.0;
        if (all_nonzero) report.mape = mape(pred_flat, target);
        report.train_mse = report.curve.back().train_loss;
    }
    report.final_activation_params = snapshot_pairs(model);

    if (cfg.save_checkpoints) {
        std::filesystem::create_directories(cfg.output_dir);
        save_checkpoint(model, cfg.output_dir + "/model_" + activation + "_" +
                                   std::to_string(seed) + ".json");
    }

    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<MetricsReport> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
    std::vector<MetricsReport> reports;
    for (std::uint64_t seed : cfg.seeds) {
        MetricsReport r = run_single(cfg, cfg.activation, seed);
        std::ofstream out(cfg.output_dir + "/report_" + std::to_string(seed) + ".json");
        out << r.to_json() << "\n";
        write_curve_csv(cfg.output_dir + "/curve_" + std::to_string(seed) + ".csv", r.curve);
        reports.push_back(std::move(r));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Activation comparison
// ---------------------------------------------------------------------------

namespace {

std::pair<double, double> mean_std(const std::vector<double>& xs) {
    if (xs.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return {mean, std::sqrt(var / static_cast<double>(xs.size() - 1))};
}

std::pair<double, double> metric_stats(const std::vector<MetricsReport>& rs,
                                       double MetricsReport::* field) {
    std::vector<double> vals;
    for (const auto& r : rs)
        if (std::isfinite(r.*field)) vals.push_back(r.*field);
    if (vals.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    return mean_std(vals);
}

void write_cell(std::ostream& os, double v) {
    if (std::isfinite(v)) os << v;
}

} // namespace

std::vector<ComparisonRow> compare_activations(const ExperimentConfig& cfg) {
    cfg.validate();
    // arms appear exactly as configured; listing an activation twice yields
    // two (identical) rows
    std::vector<std::string> arms = {cfg.activation};
    for (const auto& b : cfg.baselines) arms.push_back(b);

    std::vector<ComparisonRow> rows;
    for (const auto& arm : arms) {
        ComparisonRow row;
        row.activation = arm;
        for (std::uint64_t seed : cfg.seeds) row.reports.push_back(run_single(cfg, arm, seed));
        row.seeds = cfg.seeds.size();
        std::tie(row.accuracy_mean, row.accuracy_std) =
            metric_stats(row.reports, &MetricsReport::accuracy);
        std::tie(row.mse_mean, row.mse_std) = metric_stats(row.reports, &MetricsReport::mse);
        std::tie(row.rmse_mean, row.rmse_std) = metric_stats(row.reports, &MetricsReport::rmse);
        std::tie(row.train_mse_mean, row.train_mse_std) =
            metric_stats(row.reports, &MetricsReport::train_mse);
        rows.push_back(std::move(row));
    }

    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream csv(cfg.output_dir + "/comparison.csv");
    csv.precision(17);
    csv << "activation,seeds,accuracy_mean,accuracy_std,mse_mean,mse_std,rmse_mean,rmse_std,"
           "train_mse_mean,train_mse_std\n";
    json jrows = json::array();
    for (const auto& row : rows) {
        csv << row.activation << "," << row.seeds << ",";
        write_cell(csv, row.accuracy_mean); csv << ",";
        write_cell(csv, row.accuracy_std); csv << ",";
        write_cell(csv, row.mse_mean); csv << ",";
        write_cell(csv, row.mse_std); csv << ",";
        write_cell(csv, row.rmse_mean); csv << ",";
        write_cell(csv, row.rmse_std); csv << ",";
        write_cell(csv, row.train_mse_mean); csv << ",";
        write_cell(csv, row.train_mse_std); csv << "\n";

        json jr;
        jr["activation"] = row.activation;
        jr["seeds"] = row.seeds;
        auto put = [&](const char* name, double m, double s) {
            if (std::isfinite(m)) jr[name] = {{"mean", m}, {"std", s}};
        };
        put("accuracy", row.accuracy_mean, row.accuracy_std);
        put("mse", row.mse_mean, row.mse_std);
        put("rmse", row.rmse_mean, row.rmse_std);
        put("train_mse", row.train_mse_mean, row.train_mse_std);
        jrows.push_back(jr);
    }
    std::ofstream js(cfg.output_dir + "/comparison.json");
    js << json({{"rows", jrows}}).dump(2) << "\n";
    return rows;
}

std::string report_json_without_wallclock(const MetricsReport& report) {
    json j = json::parse(report.to_json());
    j.erase("wall_clock_seconds");
    return j.dump(2);
}

} // namespace alab
