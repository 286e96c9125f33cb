#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "alab/errors.hpp"

namespace alab {

// Trainable gain pair of the piecewise activation: a scales the positive
// branch, b the negative one. Both must stay strictly positive; the optimizer
// re-establishes this after every step (see optim::project_positive).
struct ActivationParams {
    double a = 1.0;
    double b = 1.0;

    bool valid() const {
        return std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0;
    }
};

enum class ActKind {
    APALU,
    ReLU,
    LReLU,
    ELU,
    GELU_exact,
    GELU_sigmoid,
    Tanh,
    Sigmoid,
    Identity,
};

// Activation selector plus the fixed hyperparameters some kinds carry.
struct ActivationKind {
    ActKind tag = ActKind::ReLU;
    double slope = 0.1; // LReLU
    double alpha = 1.0; // ELU

    static ActivationKind parse(const std::string& name); // ConfigError on unknown name
    std::string name() const;
};

// Partial derivatives of the trainable activation at one point.
// d_da is 0 for x < 0 and d_db is 0 for x >= 0: each gain only sees its branch.
struct ActivationGrad {
    double d_dx = 0.0;
    double d_da = 0.0;
    double d_db = 0.0;
};

// Numerically stable logistic sigmoid, shared by every code path that touches
// sigma so algebraic identities between them hold bitwise.
inline double stable_sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace detail {

// Unchecked fast paths for the tensor kernels, which validate parameters once
// per call and scan outputs for non-finite values afterwards.

inline double apalu_value(double x, double a, double b) {
    if (x >= 0.0) {
        return a * (x + x * stable_sigmoid(1.702 * x));
    }
    return b * std::expm1(x);
}

inline ActivationGrad apalu_grads(double x, double a, double b) {
    ActivationGrad g;
    if (x >= 0.0) {
        const double u = 1.702 * x;
        const double s = stable_sigmoid(u);
        g.d_dx = a * (1.0 + s + u * s * (1.0 - s));
        g.d_da = x * (1.0 + s);
        g.d_db = 0.0;
    } else {
        const double e = std::exp(x);
        g.d_dx = b * e;
        g.d_da = 0.0;
        g.d_db = std::expm1(x);
    }
    return g;
}

double baseline_value(const ActivationKind& kind, double x);
double baseline_deriv(const ActivationKind& kind, double x);

} // namespace detail

// f(x) = a*(x + x*sigma(1.702x)) for x >= 0, b*(exp(x)-1) for x < 0.
// Throws std::domain_error when the parameters violate positivity and
// NumericError when x is not finite.
double apalu(double x, const ActivationParams& p);

// All three partials of f at x. x = 0 takes the positive-branch formulas, so
// d_dx(0) = 1.5*a; the left limit is b and the function has a kink there
// unless b = 1.5*a.
ActivationGrad apalu_grad(double x, const ActivationParams& p);

// Reference activations and their exact derivatives.
double baseline(const ActivationKind& kind, double x);
double baseline_grad(const ActivationKind& kind, double x);

struct BoundScan {
    double sup_d;
    double inf_d;
};

// Supremum and infimum of d/dx f over an n-point uniform grid on [lo, hi].
// Backs the numerical certificates for the bounded-gradient and
// non-vanishing-gradient claims.
BoundScan derivative_bound_scan(const ActivationParams& p, double lo, double hi, std::size_t n);

} // namespace alab
