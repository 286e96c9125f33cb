#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "alab/errors.hpp"

namespace alab {

// Dense row-major tensor of 64-bit reals. Rank 1 and rank 2 cover everything
// this library trains (vectors, matrices, batched sequences flattened to
// batch x lookback).
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> s, double fill = 0.0);

    static Tensor scalar(double v);
    static Tensor vec(std::vector<double> values);
    static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    static Tensor identity(std::size_t n);

    std::size_t numel() const { return data.size(); }
    std::size_t rank() const { return shape.size(); }
    bool is_scalar() const { return numel() == 1; }

    // 2-D accessors; rank-1 tensors behave as a single row.
    std::size_t rows() const { return rank() == 2 ? shape[0] : 1; }
    std::size_t cols() const { return rank() == 2 ? shape[1] : (shape.empty() ? 0 : shape[0]); }

    double& at(std::size_t i) { return data[i]; }
    double at(std::size_t i) const { return data[i]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }
    std::string shape_str() const;

    bool all_finite() const;
};

// Throws ShapeError with a readable message when shapes differ.
void require_same_shape(const Tensor& a, const Tensor& b, const char* op);

} // namespace alab
