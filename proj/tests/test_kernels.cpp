#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "alab/kernels.hpp"
#include "alab/rng.hpp"

using namespace alab;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, double lo = -5.0, double hi = 5.0) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("parallel matmul lane is bitwise identical to the serial reference") {
    Rng rng(101);
    // deliberately odd sizes to hit remainder rows in the parallel partition
    const std::size_t cases[][3] = {{1, 1, 1}, {3, 5, 7}, {17, 33, 9}, {64, 128, 31}, {128, 784, 10}};
    for (const auto& c : cases) {
        const std::size_t m = c[0], k = c[1], n = c[2];
        const auto A = random_vec(m * k, rng);
        const auto B = random_vec(k * n, rng);
        std::vector<double> C1(m * n), C2(m * n);
        kernels::serial::matmul(A.data(), B.data(), C1.data(), {m, k, n});
        kernels::par::matmul(A.data(), B.data(), C2.data(), {m, k, n});
        CHECK(bits_equal(C1, C2));

        const auto Bt = random_vec(n * k, rng);
        kernels::serial::matmul_nt(A.data(), Bt.data(), C1.data(), {m, k, n});
        kernels::par::matmul_nt(A.data(), Bt.data(), C2.data(), {m, k, n});
        CHECK(bits_equal(C1, C2));

        // C(k x n) = A(m x k)^T * B(m x n): sizes = {k, m, n}
        const auto B2 = random_vec(m * n, rng);
        std::vector<double> D1(k * n), D2(k * n);
        kernels::serial::matmul_tn(A.data(), B2.data(), D1.data(), {k, m, n});
        kernels::par::matmul_tn(A.data(), B2.data(), D2.data(), {k, m, n});
        CHECK(bits_equal(D1, D2));
    }
}

TEST_CASE("parallel elementwise lane is bitwise identical to the serial reference") {
    Rng rng(102);
    const std::size_t n = 100003; // not a multiple of any thread count
    const auto x = random_vec(n, rng, -12.0, 12.0);
    const auto y = random_vec(n, rng);
    std::vector<double> o1(n), o2(n);

    kernels::serial::add(x, y, o1);
    kernels::par::add(x, y, o2);
    CHECK(bits_equal(o1, o2));
    kernels::serial::mul(x, y, o1);
    kernels::par::mul(x, y, o2);
    CHECK(bits_equal(o1, o2));
    kernels::serial::map_sigmoid(x, o1);
    kernels::par::map_sigmoid(x, o2);
    CHECK(bits_equal(o1, o2));

    const ActivationKind kind{ActKind::APALU};
    const ActivationParams p{0.55, 0.065};
    kernels::serial::map_activation(kind, p, x, o1);
    kernels::par::map_activation(kind, p, x, o2);
    CHECK(bits_equal(o1, o2));
    kernels::serial::map_activation_dx(kind, p, x, y, o1);
    kernels::par::map_activation_dx(kind, p, x, y, o2);
    CHECK(bits_equal(o1, o2));
}

TEST_CASE("parallel reductions match the serial reference") {
    Rng rng(103);
    const std::size_t rows = 37, cols = 53;
    const auto X = random_vec(rows * cols, rng);
    std::vector<double> c1(cols), c2(cols);
    kernels::serial::colsum(X.data(), c1.data(), rows, cols);
    kernels::par::colsum(X.data(), c2.data(), rows, cols);
    CHECK(bits_equal(c1, c2));

    const BoundScan s1 = kernels::serial::bound_scan(0.7, 1.3, -15.0, 15.0, 30001);
    const BoundScan s2 = kernels::par::bound_scan(0.7, 1.3, -15.0, 15.0, 30001);
    CHECK(s1.sup_d == s2.sup_d);
    CHECK(s1.inf_d == s2.inf_d);
}

TEST_CASE("all_finite flags non-finite values in both lanes") {
    std::vector<double> ok = {1.0, -2.0, 0.0};
    std::vector<double> bad = {1.0, std::nan(""), 0.0};
    std::vector<double> inf = {1.0, HUGE_VAL};
    CHECK(kernels::serial::all_finite(ok));
    CHECK(kernels::par::all_finite(ok));
    CHECK_FALSE(kernels::serial::all_finite(bad));
    CHECK_FALSE(kernels::par::all_finite(bad));
    CHECK_FALSE(kernels::serial::all_finite(inf));
    CHECK_FALSE(kernels::par::all_finite(inf));
}

TEST_CASE("dispatcher respects the parallel switch") {
    Rng rng(104);
    const auto x = random_vec(1000, rng);
    const auto y = random_vec(1000, rng);
    std::vector<double> o1(1000), o2(1000);
    kernels::set_parallel(false);
    kernels::add(x, y, o1);
    kernels::set_parallel(true);
    kernels::add(x, y, o2);
    CHECK(bits_equal(o1, o2));
}
