#include "alab/tape.hpp"

#include <cmath>
#include <stdexcept>

#include "alab/kernels.hpp"

namespace alab {

const Tensor& Gradients::of(Value v) const {
    if (v.idx < 0 || static_cast<std::size_t>(v.idx) >= by_node.size() || !by_node[v.idx])
        throw std::logic_error("Gradients::of: no gradient recorded for this node");
    return *by_node[v.idx];
}

void Tape::check_value(Value v) const {
    if (v.idx < 0 || static_cast<std::size_t>(v.idx) >= nodes_.size())
        throw std::logic_error("Tape: value does not belong to this tape");
}

const Tape::Node& Tape::node(Value v) const {
    check_value(v);
    return nodes_[v.idx];
}

int Tape::push(Node n) {
    if (n.op != Op::Input && n.op != Op::Param && !kernels::all_finite(n.value.data))
        throw NumericError("tape: non-finite value in forward pass");
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

Value Tape::input(Tensor t) {
    Node n;
    n.op = Op::Input;
    n.value = std::move(t);
    return {push(std::move(n))};
}

Value Tape::param(const std::string& name, Tensor t, bool activation_pair) {
    for (const auto& existing : nodes_)
        if (existing.op == Op::Param && existing.param_name == name)
            throw std::logic_error("Tape::param: duplicate parameter name '" + name + "'");
    Node n;
    n.op = Op::Param;
    n.value = std::move(t);
    n.param_name = name;
    n.activation_pair = activation_pair;
    return {push(std::move(n))};
}

bool Tape::is_activation_param(const std::string& name) const {
    for (const auto& n : nodes_)
        if (n.op == Op::Param && n.param_name == name) return n.activation_pair;
    return false;
}

Value Tape::matmul(Value a, Value b) {
    const Tensor& A = value(a);
    const Tensor& B = value(b);
    if (A.rank() != 2 || B.rank() != 2 || A.shape[1] != B.shape[0])
        throw ShapeError("matmul: " + A.shape_str() + " x " + B.shape_str());
    Node n;
    n.op = Op::MatMul;
    n.a = a.idx;
    n.b = b.idx;
    n.value = Tensor({A.shape[0], B.shape[1]});
    kernels::matmul(A.data.data(), B.data.data(), n.value.data.data(),
                    {A.shape[0], A.shape[1], B.shape[1]});
    return {push(std::move(n))};
}

Value Tape::add(Value a, Value b) {
    const Tensor& A = value(a);
    const Tensor& B = value(b);
    Node n;
    n.a = a.idx;
    n.b = b.idx;
    if (A.same_shape(B)) {
        n.op = Op::Add;
        n.value = Tensor(A.shape);
        kernels::add(A.data, B.data, n.value.data);
    } else if (A.rank() == 2 && B.numel() == A.shape[1]) {
        n.op = Op::AddBias;
        n.value = Tensor(A.shape);
        kernels::add_bias(A.data.data(), B.data.data(), n.value.data.data(), A.shape[0], A.shape[1]);
    } else {
        throw ShapeError("add: incompatible shapes " + A.shape_str() + " vs " + B.shape_str());
    }
    return {push(std::move(n))};
}

Value Tape::sub(Value a, Value b) {
    const Tensor& A = value(a);
    const Tensor& B = value(b);
    require_same_shape(A, B, "sub");
    Node n;
    n.op = Op::Sub;
    n.a = a.idx;
    n.b = b.idx;
    n.value = Tensor(A.shape);
    kernels::sub(A.data, B.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::mul(Value a, Value b) {
    const Tensor& A = value(a);
    const Tensor& B = value(b);
    require_same_shape(A, B, "mul");
    Node n;
    n.op = Op::Mul;
    n.a = a.idx;
    n.b = b.idx;
    n.value = Tensor(A.shape);
    kernels::mul(A.data, B.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::scale(Value a, double c) {
    const Tensor& A = value(a);
    Node n;
    n.op = Op::Scale;
    n.a = a.idx;
    n.scalar = c;
    n.value = Tensor(A.shape);
    kernels::scale(A.data, c, n.value.data);
    return {push(std::move(n))};
}

Value Tape::activation(const ActivationKind& kind, Value x, const ActivationParams& p) {
    if (kind.tag == ActKind::APALU && !p.valid())
        throw std::domain_error("activation: APALU parameters must be positive and finite");
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Activation;
    n.a = x.idx;
    n.kind = kind;
    n.act_params = p;
    n.value = Tensor(X.shape);
    kernels::map_activation(kind, p, X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::activation_trainable(Value params_ab, Value x) {
    const Tensor& P = value(params_ab);
    if (P.numel() != 2) throw ShapeError("activation_trainable: params leaf must hold [a, b]");
    ActivationParams p{P.data[0], P.data[1]};
    if (!p.valid())
        throw std::domain_error("activation_trainable: parameters must be positive and finite");
    const Tensor& X = value(x);
    Node n;
    n.op = Op::ActivationTrainable;
    n.a = x.idx;
    n.b = params_ab.idx;
    n.kind = {ActKind::APALU};
    n.act_params = p;
    n.value = Tensor(X.shape);
    kernels::map_activation(n.kind, p, X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::sigmoid(Value x) {
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Sigmoid;
    n.a = x.idx;
    n.value = Tensor(X.shape);
    kernels::map_sigmoid(X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::tanh(Value x) {
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Tanh;
    n.a = x.idx;
    n.value = Tensor(X.shape);
    kernels::map_tanh(X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::exp(Value x) {
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Exp;
    n.a = x.idx;
    n.value = Tensor(X.shape);
    kernels::map_exp(X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::abs(Value x) {
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Abs;
    n.a = x.idx;
    n.value = Tensor(X.shape);
    kernels::map_abs(X.data, n.value.data);
    return {push(std::move(n))};
}

Value Tape::concat(Value a, Value b, int axis) {
    const Tensor& A = value(a);
    const Tensor& B = value(b);
    Node n;
    n.op = Op::Concat;
    n.a = a.idx;
    n.b = b.idx;
    n.axis = axis;
    if (A.rank() == 1 && B.rank() == 1 && axis == 0) {
        n.value = Tensor({A.numel() + B.numel()});
        std::copy(A.data.begin(), A.data.end(), n.value.data.begin());
        std::copy(B.data.begin(), B.data.end(), n.value.data.begin() + A.numel());
    } else if (A.rank() == 2 && B.rank() == 2 && axis == 0 && A.shape[1] == B.shape[1]) {
        n.value = Tensor({A.shape[0] + B.shape[0], A.shape[1]});
        std::copy(A.data.begin(), A.data.end(), n.value.data.begin());
        std::copy(B.data.begin(), B.data.end(), n.value.data.begin() + A.numel());
    } else if (A.rank() == 2 && B.rank() == 2 && axis == 1 && A.shape[0] == B.shape[0]) {
        n.value = Tensor({A.shape[0], A.shape[1] + B.shape[1]});
        for (std::size_t i = 0; i < A.shape[0]; ++i) {
            for (std::size_t j = 0; j < A.shape[1]; ++j) n.value.at(i, j) = A.at(i, j);
            for (std::size_t j = 0; j < B.shape[1]; ++j) n.value.at(i, A.shape[1] + j) = B.at(i, j);
        }
    } else {
        throw ShapeError("concat: incompatible " + A.shape_str() + " / " + B.shape_str() +
                         " on axis " + std::to_string(axis));
    }
    return {push(std::move(n))};
}

Value Tape::slice(Value x, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    const Tensor& X = value(x);
    if (X.rank() != 2) throw ShapeError("slice: rank-2 tensor required");
    if (r1 > X.shape[0] || c1 > X.shape[1] || r0 >= r1 || c0 >= c1)
        throw ShapeError("slice: window out of bounds");
    Node n;
    n.op = Op::Slice;
    n.a = x.idx;
    n.r0 = r0;
    n.r1 = r1;
    n.c0 = c0;
    n.c1 = c1;
    n.value = Tensor({r1 - r0, c1 - c0});
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) n.value.at(i - r0, j - c0) = X.at(i, j);
    return {push(std::move(n))};
}

Value Tape::sum(Value x) {
    const Tensor& X = value(x);
    Node n;
    n.op = Op::Sum;
    n.a = x.idx;
    n.value = Tensor::scalar(kernels::reduce_sum(X.data));
    return {push(std::move(n))};
}

Value Tape::mean(Value x) {
    const Tensor& X = value(x);
    if (X.numel() == 0) throw ShapeError("mean: empty tensor");
    Node n;
    n.op = Op::Mean;
    n.a = x.idx;
    n.value = Tensor::scalar(kernels::reduce_sum(X.data) / static_cast<double>(X.numel()));
    return {push(std::move(n))};
}

Value Tape::softmax_xent(Value logits, const std::vector<int>& labels) {
    const Tensor& L = value(logits);
    if (L.rank() != 2) throw ShapeError("softmax_xent: logits must be batch x classes");
    const std::size_t batch = L.shape[0], classes = L.shape[1];
    if (labels.size() != batch)
        throw ShapeError("softmax_xent: " + std::to_string(labels.size()) + " labels for batch " +
                         std::to_string(batch));
    for (int lbl : labels)
        if (lbl < 0 || static_cast<std::size_t>(lbl) >= classes)
            throw std::out_of_range("softmax_xent: label " + std::to_string(lbl) +
                                    " outside [0, " + std::to_string(classes) + ")");
    Node n;
    n.op = Op::SoftmaxXent;
    n.a = logits.idx;
    n.labels = labels;
    n.saved = Tensor({batch, classes});
    double loss = 0.0;
    for (std::size_t i = 0; i < batch; ++i) {
        double mx = L.at(i, 0);
        for (std::size_t j = 1; j < classes; ++j) mx = std::max(mx, L.at(i, j));
        double z = 0.0;
        for (std::size_t j = 0; j < classes; ++j) z += std::exp(L.at(i, j) - mx);
        const double log_z = std::log(z) + mx;
        for (std::size_t j = 0; j < classes; ++j) n.saved.at(i, j) = std::exp(L.at(i, j) - log_z);
        loss += log_z - L.at(i, static_cast<std::size_t>(labels[i]));
    }
    n.value = Tensor::scalar(loss / static_cast<double>(batch));
    return {push(std::move(n))};
}

const Tensor& Tape::value(Value v) const { return node(v).value; }

Gradients Tape::backward(Value loss) {
    if (nodes_.empty()) throw std::logic_error("backward: no forward pass recorded");
    if (backward_done_) throw std::logic_error("backward: already ran for this tape");
    check_value(loss);
    const Node& ln = nodes_[loss.idx];
    if (!ln.value.is_scalar())
        throw ShapeError("backward: loss must be scalar, got " + ln.value.shape_str());
    backward_done_ = true;

    Gradients g;
    g.by_node.resize(nodes_.size());
    auto grad_of = [&](int idx) -> Tensor& {
        if (!g.by_node[idx]) g.by_node[idx].emplace(nodes_[idx].value.shape, 0.0);
        return *g.by_node[idx];
    };
    grad_of(loss.idx).data[0] = 1.0;

    for (int i = loss.idx; i >= 0; --i) {
        if (!g.by_node[i]) continue; // node does not influence the loss
        const Node& n = nodes_[i];
        const Tensor& up = *g.by_node[i];
        switch (n.op) {
            case Op::Input:
            case Op::Param:
                break;
            case Op::MatMul: {
                const Tensor& A = nodes_[n.a].value;
                const Tensor& B = nodes_[n.b].value;
                Tensor dA(A.shape);
                Tensor dB(B.shape);
                // dA = up * B^T ; dB = A^T * up
                kernels::matmul_nt(up.data.data(), B.data.data(), dA.data.data(),
                                   {A.shape[0], B.shape[1], A.shape[1]});
                kernels::matmul_tn(A.data.data(), up.data.data(), dB.data.data(),
                                   {A.shape[1], A.shape[0], B.shape[1]});
                kernels::add(grad_of(n.a).data, dA.data, grad_of(n.a).data);
                kernels::add(grad_of(n.b).data, dB.data, grad_of(n.b).data);
                break;
            }
            case Op::Add: {
                kernels::add(grad_of(n.a).data, up.data, grad_of(n.a).data);
                kernels::add(grad_of(n.b).data, up.data, grad_of(n.b).data);
                break;
            }
            case Op::AddBias: {
                kernels::add(grad_of(n.a).data, up.data, grad_of(n.a).data);
                Tensor cs(nodes_[n.b].value.shape);
                kernels::colsum(up.data.data(), cs.data.data(), up.shape[0], up.shape[1]);
                kernels::add(grad_of(n.b).data, cs.data, grad_of(n.b).data);
                break;
            }
            case Op::Sub: {
                Tensor& da = grad_of(n.a);
                kernels::add(da.data, up.data, da.data);
                Tensor& db = grad_of(n.b);
                kernels::sub(db.data, up.data, db.data);
                break;
            }
            case Op::Mul: {
                Tensor tmp(up.shape);
                kernels::mul(up.data, nodes_[n.b].value.data, tmp.data);
                kernels::add(grad_of(n.a).data, tmp.data, grad_of(n.a).data);
                kernels::mul(up.data, nodes_[n.a].value.data, tmp.data);
                kernels::add(grad_of(n.b).data, tmp.data, grad_of(n.b).data);
                break;
            }
            case Op::Scale: {
                Tensor tmp(up.shape);
                kernels::scale(up.data, n.scalar, tmp.data);
                kernels::add(grad_of(n.a).data, tmp.data, grad_of(n.a).data);
                break;
            }
            case Op::Activation: {
                const Tensor& X = nodes_[n.a].value;
                Tensor dx(X.shape);
                kernels::map_activation_dx(n.kind, n.act_params, X.data, up.data, dx.data);
                kernels::add(grad_of(n.a).data, dx.data, grad_of(n.a).data);
                break;
            }
            case Op::ActivationTrainable: {
                const Tensor& X = nodes_[n.a].value;
                Tensor dx(X.shape);
                kernels::map_activation_dx(n.kind, n.act_params, X.data, up.data, dx.data);
                kernels::add(grad_of(n.a).data, dx.data, grad_of(n.a).data);
                // serial index-order accumulation keeps grads deterministic
                double ga = 0.0, gb = 0.0;
                for (std::size_t e = 0; e < X.numel(); ++e) {
                    const ActivationGrad ag =
                        detail::apalu_grads(X.data[e], n.act_params.a, n.act_params.b);
                    ga += up.data[e] * ag.d_da;
                    gb += up.data[e] * ag.d_db;
                }
                Tensor& dp = grad_of(n.b);
                dp.data[0] += ga;
                dp.data[1] += gb;
                break;
            }
            case Op::Sigmoid: {
                Tensor& da = grad_of(n.a);
                for (std::size_t e = 0; e < up.numel(); ++e) {
                    const double s = n.value.data[e];
                    da.data[e] += up.data[e] * s * (1.0 - s);
                }
                break;
            }
            case Op::Tanh: {
                Tensor& da = grad_of(n.a);
                for (std::size_t e = 0; e < up.numel(); ++e) {
                    const double t = n.value.data[e];
                    da.data[e] += up.data[e] * (1.0 - t * t);
                }
                break;
            }
            case Op::Exp: {
                Tensor& da = grad_of(n.a);
                for (std::size_t e = 0; e < up.numel(); ++e)
                    da.data[e] += up.data[e] * n.value.data[e];
                break;
            }
            case Op::Abs: {
                const Tensor& X = nodes_[n.a].value;
                Tensor& da = grad_of(n.a);
                for (std::size_t e = 0; e < up.numel(); ++e) {
                    const double sign = X.data[e] > 0.0 ? 1.0 : (X.data[e] < 0.0 ? -1.0 : 0.0);
                    da.data[e] += up.data[e] * sign;
                }
                break;
            }
            case Op::Concat: {
                const Tensor& A = nodes_[n.a].value;
                const Tensor& B = nodes_[n.b].value;
                Tensor& da = grad_of(n.a);
                Tensor& db = grad_of(n.b);
                if (n.axis == 0 || A.rank() == 1) {
                    for (std::size_t e = 0; e < A.numel(); ++e) da.data[e] += up.data[e];
                    for (std::size_t e = 0; e < B.numel(); ++e) db.data[e] += up.data[A.numel() + e];
                } else {
                    for (std::size_t r = 0; r < A.shape[0]; ++r) {
                        for (std::size_t j = 0; j < A.shape[1]; ++j) da.at(r, j) += up.at(r, j);
                        for (std::size_t j = 0; j < B.shape[1]; ++j)
                            db.at(r, j) += up.at(r, A.shape[1] + j);
                    }
                }
                break;
            }
            case Op::Slice: {
                Tensor& da = grad_of(n.a);
                for (std::size_t r = n.r0; r < n.r1; ++r)
                    for (std::size_t c = n.c0; c < n.c1; ++c)
                        da.at(r, c) += up.at(r - n.r0, c - n.c0);
                break;
            }
            case Op::Sum: {
                Tensor& da = grad_of(n.a);
                const double u = up.data[0];
                for (std::size_t e = 0; e < da.numel(); ++e) da.data[e] += u;
                break;
            }
            case Op::Mean: {
                Tensor& da = grad_of(n.a);
                const double u = up.data[0] / static_cast<double>(da.numel());
                for (std::size_t e = 0; e < da.numel(); ++e) da.data[e] += u;
                break;
            }
            case Op::SoftmaxXent: {
                Tensor& da = grad_of(n.a);
                const double u = up.data[0] / static_cast<double>(n.saved.shape[0]);
                for (std::size_t r = 0; r < n.saved.shape[0]; ++r)
                    for (std::size_t c = 0; c < n.saved.shape[1]; ++c) {
                        const double onehot =
                            (static_cast<std::size_t>(n.labels[r]) == c) ? 1.0 : 0.0;
                        da.at(r, c) += u * (n.saved.at(r, c) - onehot);
                    }
                break;
            }
        }
    }

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].op != Op::Param) continue;
        if (g.by_node[i])
            g.params[nodes_[i].param_name] = *g.by_node[i];
        else
            g.params[nodes_[i].param_name] = Tensor(nodes_[i].value.shape, 0.0); // unused param
    }
    return g;
}

} // namespace alab
