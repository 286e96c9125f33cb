#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alab/activations.hpp"
#include "alab/tensor.hpp"

namespace alab {

// Handle to a recorded tensor on a tape.
struct Value {
    int idx = -1;
};

// Gradients produced by one backward sweep: one tensor per registered
// parameter, plus access to the gradients of input leaves (for gradient
// checking against finite differences).
struct Gradients {
    std::map<std::string, Tensor> params;
    std::vector<std::optional<Tensor>> by_node;

    const Tensor& of(Value v) const;
};

// Append-only record of forward primitives. Nodes are stored in topological
// order by construction; one backward pass is allowed per recorded forward
// pass. Forward values are bitwise deterministic for fixed inputs: every
// contraction runs in ascending index order (see kernels.hpp) and every
// order-sensitive reduction is serial.
//
// Every primitive checks its output for non-finite values and throws
// NumericError, so NaN can never silently propagate through training.
class Tape {
public:
    // Leaves -------------------------------------------------------------
    Value input(Tensor t);
    // Registers a trainable leaf. activation_pair marks a {a, b} gain pair
    // that receives the positivity projection after optimizer steps.
    Value param(const std::string& name, Tensor t, bool activation_pair = false);

    // Primitives ----------------------------------------------------------
    Value matmul(Value a, Value b);
    // Same-shape add, or matrix + row-vector broadcast.
    Value add(Value a, Value b);
    Value sub(Value a, Value b);
    Value mul(Value a, Value b); // elementwise
    Value scale(Value a, double c);
    // Activation with fixed parameters (any kind).
    Value activation(const ActivationKind& kind, Value x, const ActivationParams& p = {});
    // Trainable activation: params_ab is a registered 2-element leaf [a, b].
    // Gradients for a and b accumulate the sum of d_da / d_db over every
    // element flowing through the map, in ascending index order.
    Value activation_trainable(Value params_ab, Value x);
    Value sigmoid(Value x);
    Value tanh(Value x);
    Value exp(Value x);
    Value abs(Value x);
    Value concat(Value a, Value b, int axis);
    // Half-open row/column window of a 2-D tensor.
    Value slice(Value x, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1);
    Value sum(Value x);
    Value mean(Value x);
    // Mean over the batch of -log softmax(logits)[label], log-sum-exp
    // stabilized; adjoint is (softmax - onehot) / batch.
    Value softmax_xent(Value logits, const std::vector<int>& labels);

    // Introspection --------------------------------------------------------
    const Tensor& value(Value v) const;
    std::size_t size() const { return nodes_.size(); }
    bool is_activation_param(const std::string& name) const;

    // Reverse sweep from a scalar loss. Gradients accumulate additively over
    // fan-out. Throws if the loss is not scalar, if nothing was recorded, or
    // if called twice for one recorded forward pass.
    Gradients backward(Value loss);

private:
    enum class Op {
        Input,
        Param,
        MatMul,
        Add,
        AddBias,
        Sub,
        Mul,
        Scale,
        Activation,
        ActivationTrainable,
        Sigmoid,
        Tanh,
        Exp,
        Abs,
        Concat,
        Slice,
        Sum,
        Mean,
        SoftmaxXent,
    };

    struct Node {
        Op op;
        int a = -1;
        int b = -1;
        Tensor value;
        // op-specific payload
        ActivationKind kind;
        ActivationParams act_params;
        double scalar = 0.0;
        int axis = 0;
        std::size_t r0 = 0, r1 = 0, c0 = 0, c1 = 0;
        std::vector<int> labels;
        Tensor saved; // softmax probabilities
        std::string param_name;
        bool activation_pair = false;
    };

    int push(Node n);
    const Node& node(Value v) const;
    void check_value(Value v) const;

    std::vector<Node> nodes_;
    bool backward_done_ = false;
};

} // namespace alab
