#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "alab/nn.hpp"

namespace alab {

// Floor applied to the trainable activation gains after every update; keeps
// the positivity invariant under arbitrary gradients.
constexpr double kPositivityFloor = 1e-6;

ActivationParams project_positive(const ActivationParams& p);

struct OptimizerConfig {
    enum class Kind { SGD, Adam };
    Kind kind = Kind::Adam;
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    void validate() const;
};

// Core update rules on a single tensor. sgd: w <- w - lr*g. adam: standard
// bias-corrected moments; m/v/t are the per-parameter state.
void sgd_step(Tensor& w, const Tensor& g, double lr);
void adam_step(Tensor& w, const Tensor& g, Tensor& m, Tensor& v, std::int64_t t,
               const OptimizerConfig& cfg);

// Applies one optimizer step to every model parameter in registration order,
// then clamps activation gain pairs to the positivity floor.
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg);

    void step(const std::vector<ParamRef>& params, const std::map<std::string, Tensor>& grads);
    std::int64_t steps_taken() const { return t_; }

private:
    OptimizerConfig cfg_;
    struct Slot {
        Tensor m, v;
    };
    std::map<std::string, Slot> slots_;
    std::int64_t t_ = 0;
};

} // namespace alab
