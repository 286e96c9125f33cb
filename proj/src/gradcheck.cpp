#include "alab/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace alab {

double gradcheck_params(const std::function<Value(Tape&)>& build,
                        const std::vector<std::pair<std::string, Tensor*>>& leaves,
                        double h) {
    if (h <= 0.0) throw std::invalid_argument("gradcheck: h must be positive");

    Tape tape;
    const Value loss = build(tape);
    Gradients grads = tape.backward(loss);

    auto eval = [&]() {
        Tape t;
        return t.value(build(t)).data[0];
    };

    double worst = 0.0;
    for (const auto& [name, tensor] : leaves) {
        const Tensor& analytic = grads.params.at(name);
        for (std::size_t i = 0; i < tensor->numel(); ++i) {
            const double original = tensor->data[i];
            tensor->data[i] = original + h;
            const double fp = eval();
            tensor->data[i] = original - h;
            const double fm = eval();
            tensor->data[i] = original;
            const double numeric = (fp - fm) / (2.0 * h);
            const double denom = std::max({std::fabs(analytic.data[i]), std::fabs(numeric), 1e-12});
            worst = std::max(worst, std::fabs(analytic.data[i] - numeric) / denom);
        }
    }
    return worst;
}

double gradcheck(const std::function<Value(Tape&, Value)>& fn, const Tensor& point, double h) {
    Tensor x = point;
    auto build = [&](Tape& tape) {
        Value v = tape.param("gradcheck.x", x);
        return fn(tape, v);
    };
    return gradcheck_params(build, {{"gradcheck.x", &x}}, h);
}

} // namespace alab
