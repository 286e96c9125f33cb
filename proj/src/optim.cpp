#include "alab/optim.hpp"

#include <cmath>

namespace alab {

ActivationParams project_positive(const ActivationParams& p) {
    return {std::max(p.a, kPositivityFloor), std::max(p.b, kPositivityFloor)};
}

void OptimizerConfig::validate() const {
    if (!(lr > 0.0)) throw ConfigError("optimizer: learning rate must be positive");
    if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0))
        throw ConfigError("optimizer: betas must lie in (0, 1)");
}

void sgd_step(Tensor& w, const Tensor& g, double lr) {
    require_same_shape(w, g, "sgd_step");
    for (std::size_t i = 0; i < w.numel(); ++i) w.data[i] -= lr * g.data[i];
}

void adam_step(Tensor& w, const Tensor& g, Tensor& m, Tensor& v, std::int64_t t,
               const OptimizerConfig& cfg) {
    require_same_shape(w, g, "adam_step");
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < w.numel(); ++i) {
        m.data[i] = cfg.beta1 * m.data[i] + (1.0 - cfg.beta1) * g.data[i];
        v.data[i] = cfg.beta2 * v.data[i] + (1.0 - cfg.beta2) * g.data[i] * g.data[i];
        const double mhat = m.data[i] / bc1;
        const double vhat = v.data[i] / bc2;
        w.data[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
}

Optimizer::Optimizer(OptimizerConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void Optimizer::step(const std::vector<ParamRef>& params,
                     const std::map<std::string, Tensor>& grads) {
    ++t_;
    for (const auto& p : params) {
        auto it = grads.find(p.name);
        if (it == grads.end())
            throw std::logic_error("optimizer: no gradient for parameter '" + p.name + "'");
        const Tensor& g = it->second;
        if (cfg_.kind == OptimizerConfig::Kind::SGD) {
            sgd_step(*p.tensor, g, cfg_.lr);
        } else {
            auto [slot, inserted] = slots_.try_emplace(p.name);
            if (inserted) {
                slot->second.m = Tensor(p.tensor->shape, 0.0);
                slot->second.v = Tensor(p.tensor->shape, 0.0);
            }
            adam_step(*p.tensor, g, slot->second.m, slot->second.v, t_, cfg_);
        }
        if (p.activation_pair) {
            const ActivationParams projected =
                project_positive({p.tensor->data[0], p.tensor->data[1]});
            p.tensor->data[0] = projected.a;
            p.tensor->data[1] = projected.b;
        }
    }
}

} // namespace alab
