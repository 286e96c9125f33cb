// Times the OpenMP kernel lane against the serial reference and verifies the
// results agree bitwise while doing so.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "alab/kernels.hpp"
#include "alab/rng.hpp"

using namespace alab;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] || (a[i] == 0.0 && std::signbit(a[i]) != std::signbit(b[i]))) return false;
    return true;
}

void report(const char* name, double serial_ms, double par_ms, bool identical) {
    std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx   bitwise %s\n", name,
                serial_ms, par_ms, serial_ms / par_ms, identical ? "OK" : "MISMATCH");
}

} // namespace

int main() {
    Rng rng(42);

    {
        const std::size_t m = 256, k = 512, n = 256;
        std::vector<double> A(m * k), B(k * n), C1(m * n), C2(m * n);
        for (double& v : A) v = rng.uniform(-1.0, 1.0);
        for (double& v : B) v = rng.uniform(-1.0, 1.0);
        const double ts = time_ms([&] { kernels::serial::matmul(A.data(), B.data(), C1.data(), {m, k, n}); }, 5);
        const double tp = time_ms([&] { kernels::par::matmul(A.data(), B.data(), C2.data(), {m, k, n}); }, 5);
        report("matmul 256x512x256", ts, tp, bits_equal(C1, C2));
    }
    {
        const std::size_t m = 256, k = 512, n = 256;
        std::vector<double> A(m * k), B(n * k), C1(m * n), C2(m * n);
        for (double& v : A) v = rng.uniform(-1.0, 1.0);
        for (double& v : B) v = rng.uniform(-1.0, 1.0);
        const double ts = time_ms([&] { kernels::serial::matmul_nt(A.data(), B.data(), C1.data(), {m, k, n}); }, 5);
        const double tp = time_ms([&] { kernels::par::matmul_nt(A.data(), B.data(), C2.data(), {m, k, n}); }, 5);
        report("matmul_nt 256x512x256", ts, tp, bits_equal(C1, C2));
    }
    {
        const std::size_t n = 4'000'000;
        std::vector<double> x(n), y1(n), y2(n);
        for (double& v : x) v = rng.uniform(-10.0, 10.0);
        const ActivationKind kind{ActKind::APALU};
        const ActivationParams p{0.55, 0.065};
        const double ts = time_ms([&] { kernels::serial::map_activation(kind, p, x, y1); }, 5);
        const double tp = time_ms([&] { kernels::par::map_activation(kind, p, x, y2); }, 5);
        report("apalu map 4e6", ts, tp, bits_equal(y1, y2));
    }
    {
        const std::size_t n = 4'000'000;
        std::vector<double> x(n), u(n), y1(n), y2(n);
        for (double& v : x) v = rng.uniform(-10.0, 10.0);
        for (double& v : u) v = rng.uniform(-1.0, 1.0);
        const ActivationKind kind{ActKind::APALU};
        const ActivationParams p{0.55, 0.065};
        const double ts = time_ms([&] { kernels::serial::map_activation_dx(kind, p, x, u, y1); }, 5);
        const double tp = time_ms([&] { kernels::par::map_activation_dx(kind, p, x, u, y2); }, 5);
        report("apalu grad map 4e6", ts, tp, bits_equal(y1, y2));
    }
    {
        const double ts = time_ms([&] { kernels::serial::bound_scan(1.0, 1.0, -20.0, 20.0, 2'000'001); }, 3);
        const double tp = time_ms([&] { kernels::par::bound_scan(1.0, 1.0, -20.0, 20.0, 2'000'001); }, 3);
        const BoundScan s1 = kernels::serial::bound_scan(1.0, 1.0, -20.0, 20.0, 2'000'001);
        const BoundScan s2 = kernels::par::bound_scan(1.0, 1.0, -20.0, 20.0, 2'000'001);
        report("bound scan 2e6", ts, tp, s1.sup_d == s2.sup_d && s1.inf_d == s2.inf_d);
    }
    return 0;
}
