#pragma once

#include <cstddef>
#include <span>

#include "alab/activations.hpp"

namespace alab::kernels {

// Every kernel has a plain serial reference in kernels::serial and an
// OpenMP-parallel version in kernels::par. Both perform the identical
// floating-point operations in the identical per-element order, so their
// results are bitwise equal for any thread count; the unit tests assert this
// and tools/bench_kernels compares their throughput. The unqualified
// functions below dispatch on a process-wide switch (parallel by default
// when compiled with OpenMP).
//
// Reductions whose result depends on summation order (sum, mean, the
// per-parameter gradient accumulations) are deliberately serial everywhere.

bool parallel_enabled();
void set_parallel(bool on);

struct Sizes {
    std::size_t m, k, n;
};

namespace serial {

// C = A(m x k) * B(k x n); C[i][j] accumulates over ascending t.
void matmul(const double* A, const double* B, double* C, Sizes s);
// C = A(m x k) * B(n x k)^T
void matmul_nt(const double* A, const double* B, double* C, Sizes s);
// C = A(m x t)^T * B(m x n)  with s = {t, m, n}: C[i][j] sums over ascending rows of A/B.
void matmul_tn(const double* A, const double* B, double* C, Sizes s);

void add(std::span<const double> x, std::span<const double> y, std::span<double> out);
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out);
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out);
void scale(std::span<const double> x, double c, std::span<double> out);
// Y = X + row-broadcast bias
void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols);
// out[j] = sum over ascending i of X[i][j]
void colsum(const double* X, double* out, std::size_t rows, std::size_t cols);

void map_sigmoid(std::span<const double> x, std::span<double> out);
void map_tanh(std::span<const double> x, std::span<double> out);
void map_exp(std::span<const double> x, std::span<double> out);
void map_abs(std::span<const double> x, std::span<double> out);

void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out);
// dx[i] = upstream[i] * d/dx act(x[i])
void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx);

BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n);

bool all_finite(std::span<const double> x);

} // namespace serial

namespace par {

void matmul(const double* A, const double* B, double* C, Sizes s);
void matmul_nt(const double* A, const double* B, double* C, Sizes s);
void matmul_tn(const double* A, const double* B, double* C, Sizes s);

void add(std::span<const double> x, std::span<const double> y, std::span<double> out);
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out);
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out);
void scale(std::span<const double> x, double c, std::span<double> out);
void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols);
void colsum(const double* X, double* out, std::size_t rows, std::size_t cols);

void map_sigmoid(std::span<const double> x, std::span<double> out);
void map_tanh(std::span<const double> x, std::span<double> out);
void map_exp(std::span<const double> x, std::span<double> out);
void map_abs(std::span<const double> x, std::span<double> out);

void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out);
void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx);

BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n);

bool all_finite(std::span<const double> x);

} // namespace par

void matmul(const double* A, const double* B, double* C, Sizes s);
void matmul_nt(const double* A, const double* B, double* C, Sizes s);
void matmul_tn(const double* A, const double* B, double* C, Sizes s);
void add(std::span<const double> x, std::span<const double> y, std::span<double> out);
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out);
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out);
void scale(std::span<const double> x, double c, std::span<double> out);
void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols);
void colsum(const double* X, double* out, std::size_t rows, std::size_t cols);
void map_sigmoid(std::span<const double> x, std::span<double> out);
void map_tanh(std::span<const double> x, std::span<double> out);
void map_exp(std::span<const double> x, std::span<double> out);
void map_abs(std::span<const double> x, std::span<double> out);
void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out);
void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx);
BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n);
bool all_finite(std::span<const double> x);

// Order-pinned serial reductions (index-ascending), used by sum/mean nodes
// and the trainable-parameter gradient accumulations.
double reduce_sum(std::span<const double> x);

} // namespace alab::kernels
