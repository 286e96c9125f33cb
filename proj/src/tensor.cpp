#include "alab/tensor.hpp"

#include <cmath>
#include <sstream>

namespace alab {

namespace {
std::size_t product(const std::vector<std::size_t>& s) {
    std::size_t n = 1;
    for (std::size_t e : s) n *= e;
    return s.empty() ? 0 : n;
}
} // namespace

Tensor::Tensor(std::vector<std::size_t> s, double fill)
    : shape(std::move(s)), data(product(shape), fill) {}

Tensor Tensor::scalar(double v) {
    Tensor t({1});
    t.data[0] = v;
    return t;
}

Tensor Tensor::vec(std::vector<double> values) {
    Tensor t;
    t.shape = {values.size()};
    t.data = std::move(values);
    return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
    if (values.size() != rows * cols)
        throw ShapeError("matrix: " + std::to_string(values.size()) + " values for " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    Tensor t;
    t.shape = {rows, cols};
    t.data = std::move(values);
    return t;
}

Tensor Tensor::identity(std::size_t n) {
    Tensor t({n, n});
    for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return t;
}

std::string Tensor::shape_str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
    os << "]";
    return os.str();
}

bool Tensor::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

} // namespace alab
