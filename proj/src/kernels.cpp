#include "alab/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>

#ifdef APALU_HAVE_OPENMP
#include <omp.h>
#endif

namespace alab::kernels {

namespace {

std::atomic<bool> g_parallel{true};

using detail::apalu_value;

inline double act_value(const ActivationKind& kind, const ActivationParams& p, double x) {
    if (kind.tag == ActKind::APALU) return apalu_value(x, p.a, p.b);
    return detail::baseline_value(kind, x);
}

inline double act_dx(const ActivationKind& kind, const ActivationParams& p, double x) {
    if (kind.tag == ActKind::APALU) return detail::apalu_grads(x, p.a, p.b).d_dx;
    return detail::baseline_deriv(kind, x);
}

inline double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
    if (i == n - 1) return hi;
    return lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(n - 1);
}

} // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// Serial reference lane. Straightforward loops; the contraction order for
// every output element is the contract the parallel lane must reproduce.
// ---------------------------------------------------------------------------

namespace serial {

void matmul(const double* A, const double* B, double* C, Sizes s) {
    for (std::size_t i = 0; i < s.m; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < s.k; ++t) acc += A[i * s.k + t] * B[t * s.n + j];
            C[i * s.n + j] = acc;
        }
    }
}

void matmul_nt(const double* A, const double* B, double* C, Sizes s) {
    for (std::size_t i = 0; i < s.m; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < s.k; ++t) acc += A[i * s.k + t] * B[j * s.k + t];
            C[i * s.n + j] = acc;
        }
    }
}

void matmul_tn(const double* A, const double* B, double* C, Sizes s) {
    // s.m = rows of C (cols of A), s.k = contracted rows, s.n = cols of C.
    for (std::size_t i = 0; i < s.m; ++i) {
        for (std::size_t j = 0; j < s.n; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < s.k; ++t) acc += A[t * s.m + i] * B[t * s.n + j];
            C[i * s.n + j] = acc;
        }
    }
}

void add(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
}

void sub(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
}

void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
}

void scale(std::span<const double> x, double c, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
}

void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) Y[i * cols + j] = X[i * cols + j] + bias[j];
}

void colsum(const double* X, double* out, std::size_t rows, std::size_t cols) {
    for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += X[i * cols + j];
        out[j] = acc;
    }
}

void map_sigmoid(std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = stable_sigmoid(x[i]);
}

void map_tanh(std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::tanh(x[i]);
}

void map_exp(std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i]);
}

void map_abs(std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::fabs(x[i]);
}

void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = act_value(kind, p, x[i]);
}

void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx) {
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = upstream[i] * act_dx(kind, p, x[i]);
}

BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n) {
    double sup = -HUGE_VAL, inf = HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = detail::apalu_grads(grid_point(lo, hi, i, n), a, b).d_dx;
        if (d > sup) sup = d;
        if (d < inf) inf = d;
    }
    return {sup, inf};
}

bool all_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace serial

// ---------------------------------------------------------------------------
// OpenMP lane. Each output element is produced by exactly one thread using
// the same inner loop as the serial lane, so results match bitwise for any
// thread count. Order-sensitive reductions are not parallelized.
// ---------------------------------------------------------------------------

namespace par {

#ifdef APALU_HAVE_OPENMP

void matmul(const double* A, const double* B, double* C, Sizes s) {
    const std::int64_t m = static_cast<std::int64_t>(s.m);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
        // row-accumulate (ikj): same ascending-t order per C[i][j] as serial
        double* crow = C + i * static_cast<std::int64_t>(s.n);
        for (std::size_t j = 0; j < s.n; ++j) crow[j] = 0.0;
        for (std::size_t t = 0; t < s.k; ++t) {
            const double av = A[static_cast<std::size_t>(i) * s.k + t];
            const double* brow = B + t * s.n;
            for (std::size_t j = 0; j < s.n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_nt(const double* A, const double* B, double* C, Sizes s) {
    const std::int64_t m = static_cast<std::int64_t>(s.m);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
        const double* arow = A + static_cast<std::size_t>(i) * s.k;
        for (std::size_t j = 0; j < s.n; ++j) {
            const double* brow = B + j * s.k;
            double acc = 0.0;
            for (std::size_t t = 0; t < s.k; ++t) acc += arow[t] * brow[t];
            C[static_cast<std::size_t>(i) * s.n + j] = acc;
        }
    }
}

void matmul_tn(const double* A, const double* B, double* C, Sizes s) {
    const std::int64_t m = static_cast<std::int64_t>(s.m);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
        double* crow = C + static_cast<std::size_t>(i) * s.n;
        for (std::size_t j = 0; j < s.n; ++j) crow[j] = 0.0;
        for (std::size_t t = 0; t < s.k; ++t) {
            const double av = A[t * s.m + static_cast<std::size_t>(i)];
            const double* brow = B + t * s.n;
            for (std::size_t j = 0; j < s.n; ++j) crow[j] += av * brow[j];
        }
    }
}

#define APALU_PAR_ELEMENTWISE(expr)                                      \
    const std::int64_t n = static_cast<std::int64_t>(x.size());          \
    _Pragma("omp parallel for schedule(static)")                         \
    for (std::int64_t i = 0; i < n; ++i) {                               \
        out[static_cast<std::size_t>(i)] = (expr);                       \
    }

void add(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)])
}

void sub(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)])
}

void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)])
}

void scale(std::span<const double> x, double c, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(c * x[static_cast<std::size_t>(i)])
}

void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols) {
    const std::int64_t r = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            Y[static_cast<std::size_t>(i) * cols + j] = X[static_cast<std::size_t>(i) * cols + j] + bias[j];
}

void colsum(const double* X, double* out, std::size_t rows, std::size_t cols) {
    const std::int64_t c = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < c; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += X[i * cols + static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)] = acc;
    }
}

void map_sigmoid(std::span<const double> x, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(stable_sigmoid(x[static_cast<std::size_t>(i)]))
}

void map_tanh(std::span<const double> x, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(std::tanh(x[static_cast<std::size_t>(i)]))
}

void map_exp(std::span<const double> x, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(std::exp(x[static_cast<std::size_t>(i)]))
}

void map_abs(std::span<const double> x, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(std::fabs(x[static_cast<std::size_t>(i)]))
}

void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out) {
    APALU_PAR_ELEMENTWISE(act_value(kind, p, x[static_cast<std::size_t>(i)]))
}

void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx) {
    const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        dx[u] = upstream[u] * act_dx(kind, p, x[u]);
    }
}

BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n) {
    double sup = -HUGE_VAL, inf = HUGE_VAL;
    const std::int64_t nn = static_cast<std::int64_t>(n);
    // max/min are order-independent, so the reduction is safe to parallelize
#pragma omp parallel for schedule(static) reduction(max : sup) reduction(min : inf)
    for (std::int64_t i = 0; i < nn; ++i) {
        const double d =
            detail::apalu_grads(grid_point(lo, hi, static_cast<std::size_t>(i), n), a, b).d_dx;
        if (d > sup) sup = d;
        if (d < inf) inf = d;
    }
    return {sup, inf};
}

bool all_finite(std::span<const double> x) {
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (std::int64_t i = 0; i < n; ++i) ok = ok && std::isfinite(x[static_cast<std::size_t>(i)]);
    return ok;
}

#undef APALU_PAR_ELEMENTWISE

#else // !APALU_HAVE_OPENMP: parallel lane falls back to the reference

void matmul(const double* A, const double* B, double* C, Sizes s) { serial::matmul(A, B, C, s); }
void matmul_nt(const double* A, const double* B, double* C, Sizes s) { serial::matmul_nt(A, B, C, s); }
void matmul_tn(const double* A, const double* B, double* C, Sizes s) { serial::matmul_tn(A, B, C, s); }
void add(std::span<const double> x, std::span<const double> y, std::span<double> out) { serial::add(x, y, out); }
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out) { serial::sub(x, y, out); }
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) { serial::mul(x, y, out); }
void scale(std::span<const double> x, double c, std::span<double> out) { serial::scale(x, c, out); }
void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols) {
    serial::add_bias(X, bias, Y, rows, cols);
}
void colsum(const double* X, double* out, std::size_t rows, std::size_t cols) {
    serial::colsum(X, out, rows, cols);
}
void map_sigmoid(std::span<const double> x, std::span<double> out) { serial::map_sigmoid(x, out); }
void map_tanh(std::span<const double> x, std::span<double> out) { serial::map_tanh(x, out); }
void map_exp(std::span<const double> x, std::span<double> out) { serial::map_exp(x, out); }
void map_abs(std::span<const double> x, std::span<double> out) { serial::map_abs(x, out); }
void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out) {
    serial::map_activation(kind, p, x, out);
}
void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx) {
    serial::map_activation_dx(kind, p, x, upstream, dx);
}
BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n) {
    return serial::bound_scan(a, b, lo, hi, n);
}
bool all_finite(std::span<const double> x) { return serial::all_finite(x); }

#endif

} // namespace par

// ---------------------------------------------------------------------------
// Dispatchers
// ---------------------------------------------------------------------------

#define APALU_DISPATCH(call) \
    if (parallel_enabled()) return par::call; \
    return serial::call;

void matmul(const double* A, const double* B, double* C, Sizes s) { APALU_DISPATCH(matmul(A, B, C, s)) }
void matmul_nt(const double* A, const double* B, double* C, Sizes s) { APALU_DISPATCH(matmul_nt(A, B, C, s)) }
void matmul_tn(const double* A, const double* B, double* C, Sizes s) { APALU_DISPATCH(matmul_tn(A, B, C, s)) }
void add(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_DISPATCH(add(x, y, out))
}
void sub(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_DISPATCH(sub(x, y, out))
}
void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    APALU_DISPATCH(mul(x, y, out))
}
void scale(std::span<const double> x, double c, std::span<double> out) { APALU_DISPATCH(scale(x, c, out)) }
void add_bias(const double* X, const double* bias, double* Y, std::size_t rows, std::size_t cols) {
    APALU_DISPATCH(add_bias(X, bias, Y, rows, cols))
}
void colsum(const double* X, double* out, std::size_t rows, std::size_t cols) {
    APALU_DISPATCH(colsum(X, out, rows, cols))
}
void map_sigmoid(std::span<const double> x, std::span<double> out) { APALU_DISPATCH(map_sigmoid(x, out)) }
void map_tanh(std::span<const double> x, std::span<double> out) { APALU_DISPATCH(map_tanh(x, out)) }
void map_exp(std::span<const double> x, std::span<double> out) { APALU_DISPATCH(map_exp(x, out)) }
void map_abs(std::span<const double> x, std::span<double> out) { APALU_DISPATCH(map_abs(x, out)) }
void map_activation(const ActivationKind& kind, const ActivationParams& p,
                    std::span<const double> x, std::span<double> out) {
    APALU_DISPATCH(map_activation(kind, p, x, out))
}
void map_activation_dx(const ActivationKind& kind, const ActivationParams& p,
                       std::span<const double> x, std::span<const double> upstream,
                       std::span<double> dx) {
    APALU_DISPATCH(map_activation_dx(kind, p, x, upstream, dx))
}
BoundScan bound_scan(double a, double b, double lo, double hi, std::size_t n) {
    APALU_DISPATCH(bound_scan(a, b, lo, hi, n))
}
bool all_finite(std::span<const double> x) { APALU_DISPATCH(all_finite(x)) }

#undef APALU_DISPATCH

double reduce_sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

} // namespace alab::kernels
