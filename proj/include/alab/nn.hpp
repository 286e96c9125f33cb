#pragma once

#include <memory>
#include <string>
#include <vector>

#include "alab/rng.hpp"
#include "alab/tape.hpp"

namespace alab {

struct LayerSpec {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    ActivationKind activation;
    ActivationParams activation_params{}; // meaningful iff activation is APALU
    bool trainable_activation = false;

    void validate() const;
};

enum class OutputHead { SoftmaxClassifier, LinearRegressor };
enum class ModelKind { MLP, GRU_regressor };

struct GruOptions {
    std::size_t input_dim = 1;
    std::size_t hidden = 32;
    std::size_t lookback = 20;
    bool apalu_candidate = false; // replace tanh in the candidate gate
    ActivationParams apalu_params{};
    bool trainable_activation = true;
};

struct ModelSpec {
    ModelKind kind = ModelKind::MLP;
    std::vector<LayerSpec> layers; // MLP: chained dense layers
    OutputHead head = OutputHead::SoftmaxClassifier;
    GruOptions gru;

    void validate() const; // dims must chain; output layer stays linear
};

// Ordered view over a model's trainable tensors. Iteration order is the
// registration order, which fixes the optimizer update order and hence
// bitwise reproducibility.
struct ParamRef {
    std::string name;
    Tensor* tensor;
    bool activation_pair;
};

// activation(X*W + bias) recorded on tape. W, bias and X must already be on
// the tape; when the layer has a trainable activation the [a, b] leaf is
// passed as params_ab.
Value dense_forward(Tape& tape, const LayerSpec& spec, Value W, Value bias, Value X,
                    Value params_ab = {});

struct GruCellValues {
    Value Wz, Wr, Wh; // input-to-hidden, input_dim x hidden
    Value Uz, Ur, Uh; // hidden-to-hidden, hidden x hidden
    Value bz, br, bh;
    bool apalu_candidate = false;
    Value params_ab{}; // used when apalu_candidate and trainable
    ActivationParams fixed_params{};
    bool trainable_activation = false;
};

// One step of the standard GRU recurrence:
//   z = sigmoid(x Wz + h Uz + bz), r = sigmoid(x Wr + h Ur + br)
//   cand = tanh(x Wh + (r*h) Uh + bh)      (APALU instead of tanh if selected)
//   h' = z*h + (1-z)*cand
Value gru_cell_step(Tape& tape, const GruCellValues& cell, Value x_t, Value h_prev);

Value softmax_cross_entropy(Tape& tape, Value logits, const std::vector<int>& labels);
Value mse_loss(Tape& tape, Value pred, Value target);
Value mae_loss(Tape& tape, Value pred, Value target);

// Row-wise softmax of a plain tensor (evaluation / reporting path).
Tensor softmax_rows(const Tensor& logits);

class Mlp {
public:
    Mlp(const ModelSpec& spec, Rng& init_rng);

    // Registers all parameters on the tape and records the forward pass.
    // Returns logits (classifier head) or predictions (regressor head).
    Value forward(Tape& tape, const Tensor& X) const;

    std::vector<ParamRef> parameters();
    const ModelSpec& spec() const { return spec_; }

    // Current APALU gain pairs, one per layer that has them: {layer name, a, b}.
    std::vector<std::tuple<std::string, double, double>> activation_pairs() const;

    struct Layer {
        LayerSpec spec;
        Tensor W, b;
        Tensor ab; // shape {2} when activation is APALU
    };
    std::vector<Layer>& layers() { return layers_; }

private:
    ModelSpec spec_;
    std::vector<Layer> layers_;
};

class GruRegressor {
public:
    GruRegressor(const GruOptions& opt, Rng& init_rng);

    // X is batch x lookback (one feature per step); returns batch x 1.
    Value forward(Tape& tape, const Tensor& X) const;

    std::vector<ParamRef> parameters();
    const GruOptions& options() const { return opt_; }
    std::vector<std::tuple<std::string, double, double>> activation_pairs() const;

private:
    GruOptions opt_;
    Tensor Wz_, Wr_, Wh_, Uz_, Ur_, Uh_, bz_, br_, bh_;
    Tensor Wout_, bout_;
    Tensor ab_;
};

// Either model behind one interface so the training loop is written once.
class Model {
public:
    explicit Model(const ModelSpec& spec, Rng& init_rng);

    Value forward(Tape& tape, const Tensor& X) const;
    std::vector<ParamRef> parameters();
    std::vector<std::tuple<std::string, double, double>> activation_pairs() const;
    const ModelSpec& spec() const { return spec_; }

    Mlp* mlp() { return mlp_.get(); }
    GruRegressor* gru() { return gru_.get(); }

private:
    ModelSpec spec_;
    std::unique_ptr<Mlp> mlp_;
    std::unique_ptr<GruRegressor> gru_;
};

// Single-document JSON checkpoint, version "apalu-lab/1": the model spec plus
// flat parameter arrays in shortest-roundtrip decimals.
void save_checkpoint(Model& model, const std::string& path);
Model load_checkpoint(const std::string& path);

} // namespace alab
