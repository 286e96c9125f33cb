#include "alab/activations.hpp"

#include <algorithm>

#include "alab/kernels.hpp"

namespace alab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void check_point(double x, const ActivationParams& p) {
    if (!p.valid())
        throw std::domain_error("apalu: parameters must be positive and finite (a=" +
                                std::to_string(p.a) + ", b=" + std::to_string(p.b) + ")");
    if (!std::isfinite(x)) throw NumericError("apalu: non-finite input");
}

} // namespace

ActivationKind ActivationKind::parse(const std::string& name) {
    if (name == "APALU") return {ActKind::APALU};
    if (name == "ReLU") return {ActKind::ReLU};
    if (name == "LReLU") return {ActKind::LReLU};
    if (name == "ELU") return {ActKind::ELU};
    if (name == "GELU" || name == "GELU_exact") return {ActKind::GELU_exact};
    if (name == "GELU_sigmoid") return {ActKind::GELU_sigmoid};
    if (name == "Tanh") return {ActKind::Tanh};
    if (name == "Sigmoid") return {ActKind::Sigmoid};
    if (name == "Identity") return {ActKind::Identity};
    throw ConfigError("unknown activation kind: '" + name + "'");
}

std::string ActivationKind::name() const {
    switch (tag) {
        case ActKind::APALU: return "APALU";
        case ActKind::ReLU: return "ReLU";
        case ActKind::LReLU: return "LReLU";
        case ActKind::ELU: return "ELU";
        case ActKind::GELU_exact: return "GELU";
        case ActKind::GELU_sigmoid: return "GELU_sigmoid";
        case ActKind::Tanh: return "Tanh";
        case ActKind::Sigmoid: return "Sigmoid";
        case ActKind::Identity: return "Identity";
    }
    return "?";
}

double apalu(double x, const ActivationParams& p) {
    check_point(x, p);
    return detail::apalu_value(x, p.a, p.b);
}

ActivationGrad apalu_grad(double x, const ActivationParams& p) {
    check_point(x, p);
    return detail::apalu_grads(x, p.a, p.b);
}

namespace detail {

double baseline_value(const ActivationKind& kind, double x) {
    switch (kind.tag) {
        case ActKind::ReLU: return x > 0.0 ? x : 0.0;
        case ActKind::LReLU: return x >= 0.0 ? x : kind.slope * x;
        case ActKind::ELU: return x >= 0.0 ? x : kind.alpha * std::expm1(x);
        case ActKind::GELU_exact: return x * 0.5 * (1.0 + std::erf(x * kInvSqrt2));
        case ActKind::GELU_sigmoid: return x * stable_sigmoid(1.702 * x);
        case ActKind::Tanh: return std::tanh(x);
        case ActKind::Sigmoid: return stable_sigmoid(x);
        case ActKind::Identity: return x;
        case ActKind::APALU: break;
    }
    throw ConfigError("baseline: APALU is not a baseline kind");
}

double baseline_deriv(const ActivationKind& kind, double x) {
    switch (kind.tag) {
        case ActKind::ReLU: return x > 0.0 ? 1.0 : 0.0;
        case ActKind::LReLU: return x >= 0.0 ? 1.0 : kind.slope;
        case ActKind::ELU: return x >= 0.0 ? 1.0 : kind.alpha * std::exp(x);
        case ActKind::GELU_exact: {
            const double phi = 0.5 * (1.0 + std::erf(x * kInvSqrt2));
            const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
            return phi + x * pdf;
        }
        case ActKind::GELU_sigmoid: {
            const double u = 1.702 * x;
            const double s = stable_sigmoid(u);
            return s + u * s * (1.0 - s);
        }
        case ActKind::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case ActKind::Sigmoid: {
            const double s = stable_sigmoid(x);
            return s * (1.0 - s);
        }
        case ActKind::Identity: return 1.0;
        case ActKind::APALU: break;
    }
    throw ConfigError("baseline_grad: APALU is not a baseline kind");
}

} // namespace detail

double baseline(const ActivationKind& kind, double x) {
    if (!std::isfinite(x)) throw NumericError("baseline: non-finite input");
    return detail::baseline_value(kind, x);
}

double baseline_grad(const ActivationKind& kind, double x) {
    if (!std::isfinite(x)) throw NumericError("baseline_grad: non-finite input");
    return detail::baseline_deriv(kind, x);
}

BoundScan derivative_bound_scan(const ActivationParams& p, double lo, double hi, std::size_t n) {
    if (!p.valid()) throw std::domain_error("derivative_bound_scan: invalid parameters");
    if (!(lo < hi) || n < 2) throw std::invalid_argument("derivative_bound_scan: need lo < hi and n >= 2");
    return kernels::bound_scan(p.a, p.b, lo, hi, n);
}

} // namespace alab
