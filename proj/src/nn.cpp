#include "alab/nn.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace alab {

using nlohmann::json;

void LayerSpec::validate() const {
    if (in_dim < 1 || out_dim < 1) throw ConfigError("layer dims must be >= 1");
    if (activation.tag == ActKind::APALU && !activation_params.valid())
        throw ConfigError("APALU layer parameters must be positive and finite");
}

void ModelSpec::validate() const {
    if (kind == ModelKind::MLP) {
        if (layers.empty()) throw ConfigError("MLP needs at least one layer");
        for (const auto& l : layers) l.validate();
        for (std::size_t i = 1; i < layers.size(); ++i)
            if (layers[i].in_dim != layers[i - 1].out_dim)
                throw ConfigError("layer dims do not chain at layer " + std::to_string(i));
        // the output head is linear; APALU (or any squashing) stays off it
        if (layers.back().activation.tag != ActKind::Identity)
            throw ConfigError("output layer must have Identity activation");
    } else {
        if (gru.hidden < 1 || gru.lookback < 1) throw ConfigError("GRU dims must be >= 1");
        if (gru.apalu_candidate && !gru.apalu_params.valid())
            throw ConfigError("GRU APALU parameters must be positive and finite");
    }
}

namespace {

Tensor glorot(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    Tensor w({fan_in, fan_out});
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : w.data) v = rng.uniform(-limit, limit);
    return w;
}

} // namespace

Value dense_forward(Tape& tape, const LayerSpec& spec, Value W, Value bias, Value X,
                    Value params_ab) {
    const Tensor& x = tape.value(X);
    if (x.rank() != 2 || x.shape[1] != spec.in_dim)
        throw ShapeError("dense_forward: input " + x.shape_str() + " does not match in_dim " +
                         std::to_string(spec.in_dim));
    Value pre = tape.add(tape.matmul(X, W), bias);
    if (spec.activation.tag == ActKind::Identity) return pre;
    if (spec.activation.tag == ActKind::APALU && spec.trainable_activation) {
        if (params_ab.idx < 0)
            throw std::logic_error("dense_forward: trainable APALU layer needs a params leaf");
        return tape.activation_trainable(params_ab, pre);
    }
    return tape.activation(spec.activation, pre, spec.activation_params);
}

Value gru_cell_step(Tape& tape, const GruCellValues& cell, Value x_t, Value h_prev) {
    Value z = tape.sigmoid(tape.add(tape.add(tape.matmul(x_t, cell.Wz), tape.matmul(h_prev, cell.Uz)), cell.bz));
    Value r = tape.sigmoid(tape.add(tape.add(tape.matmul(x_t, cell.Wr), tape.matmul(h_prev, cell.Ur)), cell.br));
    Value pre = tape.add(tape.add(tape.matmul(x_t, cell.Wh), tape.matmul(tape.mul(r, h_prev), cell.Uh)), cell.bh);
    Value cand;
    if (cell.apalu_candidate) {
        cand = cell.trainable_activation ? tape.activation_trainable(cell.params_ab, pre)
                                         : tape.activation({ActKind::APALU}, pre, cell.fixed_params);
    } else {
        cand = tape.tanh(pre);
    }
    // h' = z*h + (1-z)*cand, written as cand + z*(h - cand)
    return tape.add(cand, tape.mul(z, tape.sub(h_prev, cand)));
}

Value softmax_cross_entropy(Tape& tape, Value logits, const std::vector<int>& labels) {
    return tape.softmax_xent(logits, labels);
}

Value mse_loss(Tape& tape, Value pred, Value target) {
    Value d = tape.sub(pred, target);
    return tape.mean(tape.mul(d, d));
}

Value mae_loss(Tape& tape, Value pred, Value target) {
    return tape.mean(tape.abs(tape.sub(pred, target)));
}

Tensor softmax_rows(const Tensor& logits) {
    Tensor out(logits.shape);
    const std::size_t rows = logits.rows(), cols = logits.cols();
    for (std::size_t i = 0; i < rows; ++i) {
        double mx = logits.at(i, 0);
        for (std::size_t j = 1; j < cols; ++j) mx = std::max(mx, logits.at(i, j));
        double z = 0.0;
        for (std::size_t j = 0; j < cols; ++j) z += std::exp(logits.at(i, j) - mx);
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = std::exp(logits.at(i, j) - mx) / z;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mlp
// ---------------------------------------------------------------------------

Mlp::Mlp(const ModelSpec& spec, Rng& init_rng) : spec_(spec) {
    spec_.validate();
    for (const auto& ls : spec_.layers) {
        Layer layer;
        layer.spec = ls;
        layer.W = glorot(ls.in_dim, ls.out_dim, init_rng);
        layer.b = Tensor({ls.out_dim}, 0.0);
        if (ls.activation.tag == ActKind::APALU)
            layer.ab = Tensor::vec({ls.activation_params.a, ls.activation_params.b});
        layers_.push_back(std::move(layer));
    }
}

Value Mlp::forward(Tape& tape, const Tensor& X) const {
    Value h = tape.input(X);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const Layer& layer = layers_[i];
        const std::string prefix = "layer" + std::to_string(i);
        Value W = tape.param(prefix + ".W", layer.W);
        Value b = tape.param(prefix + ".b", layer.b);
        Value ab{};
        if (layer.spec.activation.tag == ActKind::APALU && layer.spec.trainable_activation)
            ab = tape.param(prefix + ".ab", layer.ab, /*activation_pair=*/true);
        h = dense_forward(tape, layer.spec, W, b, h, ab);
    }
    return h;
}

std::vector<ParamRef> Mlp::parameters() {
    std::vector<ParamRef> out;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const std::string prefix = "layer" + std::to_string(i);
        out.push_back({prefix + ".W", &layers_[i].W, false});
        out.push_back({prefix + ".b", &layers_[i].b, false});
        if (layers_[i].spec.activation.tag == ActKind::APALU && layers_[i].spec.trainable_activation)
            out.push_back({prefix + ".ab", &layers_[i].ab, true});
    }
    return out;
}

std::vector<std::tuple<std::string, double, double>> Mlp::activation_pairs() const {
    std::vector<std::tuple<std::string, double, double>> out;
    for (std::size_t i = 0; i < layers_.size(); ++i)
        if (layers_[i].spec.activation.tag == ActKind::APALU)
            out.emplace_back("layer" + std::to_string(i), layers_[i].ab.data[0], layers_[i].ab.data[1]);
    return out;
}

// ---------------------------------------------------------------------------
// GruRegressor
// ---------------------------------------------------------------------------

GruRegressor::GruRegressor(const GruOptions& opt, Rng& init_rng) : opt_(opt) {
    const std::size_t in = opt.input_dim, h = opt.hidden;
    Wz_ = glorot(in, h, init_rng);
    Wr_ = glorot(in, h, init_rng);
    Wh_ = glorot(in, h, init_rng);
    Uz_ = glorot(h, h, init_rng);
    Ur_ = glorot(h, h, init_rng);
    Uh_ = glorot(h, h, init_rng);
    bz_ = Tensor({h}, 0.0);
    br_ = Tensor({h}, 0.0);
    bh_ = Tensor({h}, 0.0);
    Wout_ = glorot(h, 1, init_rng);
    bout_ = Tensor({std::size_t(1)}, 0.0);
    if (opt.apalu_candidate) ab_ = Tensor::vec({opt.apalu_params.a, opt.apalu_params.b});
}

Value GruRegressor::forward(Tape& tape, const Tensor& X) const {
    if (X.rank() != 2 || X.shape[1] != opt_.lookback * opt_.input_dim)
        throw ShapeError("gru forward: input " + X.shape_str() + " does not match lookback " +
                         std::to_string(opt_.lookback));
    GruCellValues cell;
    cell.Wz = tape.param("gru.Wz", Wz_);
    cell.Wr = tape.param("gru.Wr", Wr_);
    cell.Wh = tape.param("gru.Wh", Wh_);
    cell.Uz = tape.param("gru.Uz", Uz_);
    cell.Ur = tape.param("gru.Ur", Ur_);
    cell.Uh = tape.param("gru.Uh", Uh_);
    cell.bz = tape.param("gru.bz", bz_);
    cell.br = tape.param("gru.br", br_);
    cell.bh = tape.param("gru.bh", bh_);
    cell.apalu_candidate = opt_.apalu_candidate;
    cell.trainable_activation = opt_.apalu_candidate && opt_.trainable_activation;
    cell.fixed_params = opt_.apalu_params;
    if (cell.trainable_activation) cell.params_ab = tape.param("gru.ab", ab_, true);
    Value Wout = tape.param("gru.Wout", Wout_);
    Value bout = tape.param("gru.bout", bout_);

    Value x = tape.input(X);
    Value h = tape.input(Tensor({X.shape[0], opt_.hidden}, 0.0));
    for (std::size_t t = 0; t < opt_.lookback; ++t) {
        Value x_t = tape.slice(x, 0, X.shape[0], t * opt_.input_dim, (t + 1) * opt_.input_dim);
        h = gru_cell_step(tape, cell, x_t, h);
    }
    return tape.add(tape.matmul(h, Wout), bout);
}

std::vector<ParamRef> GruRegressor::parameters() {
    std::vector<ParamRef> out = {
        {"gru.Wz", &Wz_, false}, {"gru.Wr", &Wr_, false}, {"gru.Wh", &Wh_, false},
        {"gru.Uz", &Uz_, false}, {"gru.Ur", &Ur_, false}, {"gru.Uh", &Uh_, false},
        {"gru.bz", &bz_, false}, {"gru.br", &br_, false}, {"gru.bh", &bh_, false},
    };
    if (opt_.apalu_candidate && opt_.trainable_activation) out.push_back({"gru.ab", &ab_, true});
    out.push_back({"gru.Wout", &Wout_, false});
    out.push_back({"gru.bout", &bout_, false});
    return out;
}

std::vector<std::tuple<std::string, double, double>> GruRegressor::activation_pairs() const {
    if (!opt_.apalu_candidate) return {};
    return {{"gru", ab_.data[0], ab_.data[1]}};
}

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

Model::Model(const ModelSpec& spec, Rng& init_rng) : spec_(spec) {
    spec_.validate();
    if (spec_.kind == ModelKind::MLP)
        mlp_ = std::make_unique<Mlp>(spec_, init_rng);
    else
        gru_ = std::make_unique<GruRegressor>(spec_.gru, init_rng);
}

Value Model::forward(Tape& tape, const Tensor& X) const {
    return mlp_ ? mlp_->forward(tape, X) : gru_->forward(tape, X);
}

std::vector<ParamRef> Model::parameters() {
    return mlp_ ? mlp_->parameters() : gru_->parameters();
}

std::vector<std::tuple<std::string, double, double>> Model::activation_pairs() const {
    return mlp_ ? mlp_->activation_pairs() : gru_->activation_pairs();
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

json kind_to_json(const ActivationKind& k) {
    json j;
    j["name"] = k.name();
    if (k.tag == ActKind::LReLU) j["slope"] = k.slope;
    if (k.tag == ActKind::ELU) j["alpha"] = k.alpha;
    return j;
}

ActivationKind kind_from_json(const json& j) {
    ActivationKind k = ActivationKind::parse(j.at("name").get<std::string>());
    if (j.contains("slope")) k.slope = j["slope"].get<double>();
    if (j.contains("alpha")) k.alpha = j["alpha"].get<double>();
    return k;
}

json spec_to_json(const ModelSpec& spec) {
    json j;
    j["kind"] = spec.kind == ModelKind::MLP ? "MLP" : "GRU_regressor";
    j["head"] = spec.head == OutputHead::SoftmaxClassifier ? "softmax_classifier" : "linear_regressor";
    if (spec.kind == ModelKind::MLP) {
        json layers = json::array();
        for (const auto& l : spec.layers) {
            json lj;
            lj["in"] = l.in_dim;
            lj["out"] = l.out_dim;
            lj["activation"] = kind_to_json(l.activation);
            if (l.activation.tag == ActKind::APALU) {
                lj["a"] = l.activation_params.a;
                lj["b"] = l.activation_params.b;
                lj["trainable"] = l.trainable_activation;
            }
            layers.push_back(lj);
        }
        j["layers"] = layers;
    } else {
        j["gru"] = {{"input_dim", spec.gru.input_dim},
                    {"hidden", spec.gru.hidden},
                    {"lookback", spec.gru.lookback},
                    {"apalu_candidate", spec.gru.apalu_candidate},
                    {"a", spec.gru.apalu_params.a},
                    {"b", spec.gru.apalu_params.b},
                    {"trainable", spec.gru.trainable_activation}};
    }
    return j;
}

ModelSpec spec_from_json(const json& j) {
    ModelSpec spec;
    spec.kind = j.at("kind") == "MLP" ? ModelKind::MLP : ModelKind::GRU_regressor;
    spec.head = j.at("head") == "softmax_classifier" ? OutputHead::SoftmaxClassifier
                                                     : OutputHead::LinearRegressor;
    if (spec.kind == ModelKind::MLP) {
        for (const auto& lj : j.at("layers")) {
            LayerSpec l;
            l.in_dim = lj.at("in").get<std::size_t>();
            l.out_dim = lj.at("out").get<std::size_t>();
            l.activation = kind_from_json(lj.at("activation"));
            if (l.activation.tag == ActKind::APALU) {
                l.activation_params = {lj.at("a").get<double>(), lj.at("b").get<double>()};
                l.trainable_activation = lj.value("trainable", false);
            }
            spec.layers.push_back(l);
        }
    } else {
        const json& gj = j.at("gru");
        spec.gru.input_dim = gj.at("input_dim").get<std::size_t>();
        spec.gru.hidden = gj.at("hidden").get<std::size_t>();
        spec.gru.lookback = gj.at("lookback").get<std::size_t>();
        spec.gru.apalu_candidate = gj.at("apalu_candidate").get<bool>();
        spec.gru.apalu_params = {gj.at("a").get<double>(), gj.at("b").get<double>()};
        spec.gru.trainable_activation = gj.value("trainable", true);
    }
    return spec;
}

} // namespace

void save_checkpoint(Model& model, const std::string& path) {
    json j;
    j["version"] = "apalu-lab/1";
    j["spec"] = spec_to_json(model.spec());
    json params = json::object();
    for (const auto& p : model.parameters()) params[p.name] = p.tensor->data;
    j["params"] = params;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write checkpoint: " + path);
    out << j.dump(2) << "\n";
}

Model load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read checkpoint: " + path);
    json j = json::parse(in, nullptr, true);
    if (j.value("version", "") != "apalu-lab/1")
        throw DataError("checkpoint version mismatch, expected apalu-lab/1");
    Rng rng(0);
    Model model(spec_from_json(j.at("spec")), rng);
    for (const auto& p : model.parameters()) {
        const auto& arr = j.at("params").at(p.name);
        if (arr.size() != p.tensor->numel())
            throw DataError("checkpoint parameter '" + p.name + "' has wrong length");
        for (std::size_t i = 0; i < p.tensor->numel(); ++i) p.tensor->data[i] = arr[i].get<double>();
    }
    return model;
}

} // namespace alab
