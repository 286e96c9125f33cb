#include <doctest.h>

#include <cmath>

#include "alab/activations.hpp"
#include "alab/rng.hpp"

using namespace alab;

namespace {
const ActivationParams kFig{0.55, 0.065}; // reference curve parameters

double fd_x(double x, const ActivationParams& p, double h) {
    return (apalu(x + h, p) - apalu(x - h, p)) / (2.0 * h);
}
} // namespace

TEST_CASE("apalu point values") {
    CHECK(apalu(0.0, kFig) == 0.0);
    // 0.55 * (1 + sigma(1.702)), high-precision scalar oracle
    CHECK(apalu(1.0, kFig) == doctest::Approx(1.0151876712630517).epsilon(1e-12));
    // 0.065 * (e^-1 - 1)
    CHECK(apalu(-1.0, kFig) == doctest::Approx(-0.04108783632385625).epsilon(1e-12));
    // limit -b as x -> -inf (exp underflow accepted)
    CHECK(apalu(-800.0, kFig) == doctest::Approx(-0.065).epsilon(1e-15));
    CHECK(apalu(-1e308, kFig) == -0.065);
}

TEST_CASE("apalu rejects bad inputs") {
    CHECK_THROWS_AS(apalu(1.0, {0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(apalu(1.0, {1.0, -0.5}), std::domain_error);
    CHECK_THROWS_AS(apalu(1.0, {std::nan(""), 1.0}), std::domain_error);
    CHECK_THROWS_AS(apalu(std::nan(""), {1.0, 1.0}), NumericError);
    CHECK_THROWS_AS(apalu_grad(std::nan(""), {1.0, 1.0}), NumericError);
}

TEST_CASE("apalu sign and bound") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const ActivationParams p{rng.uniform(1e-3, 2.0), rng.uniform(1e-3, 2.0)};
        const double x = rng.uniform(-20.0, 20.0);
        const double f = apalu(x, p);
        if (x > 0.0) CHECK(f > 0.0);
        if (x < 0.0) CHECK(f < 0.0);
        CHECK(f > -p.b);
    }
}

TEST_CASE("apalu_grad closed forms") {
    // sigma(0) = 0.5 forces d_dx(0) = 1.5 a
    CHECK(apalu_grad(0.0, {1.0, 1.0}).d_dx == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(apalu_grad(0.0, {2.0, 0.3}).d_dx == doctest::Approx(3.0).epsilon(1e-15));
    // x * (1 + sigma(1.702)) at x = 1
    CHECK(apalu_grad(1.0, kFig).d_da == doctest::Approx(1.8457957659328213).epsilon(1e-12));
    // e^-1 - 1 at x = -1
    CHECK(apalu_grad(-1.0, kFig).d_db == doctest::Approx(-0.6321205588285577).epsilon(1e-12));
    // branch ownership of the parameter partials
    CHECK(apalu_grad(-2.0, kFig).d_da == 0.0);
    CHECK(apalu_grad(2.0, kFig).d_db == 0.0);
    CHECK(apalu_grad(0.0, kFig).d_db == 0.0);
    CHECK(apalu_grad(0.0, kFig).d_da == 0.0); // x * (1 + sigma) vanishes at 0
}

TEST_CASE("apalu_grad matches central differences") {
    Rng rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform(-10.0, 10.0);
        if (std::fabs(x) < 1e-4) x = x >= 0.0 ? 1e-4 : -1e-4; // keep off the kink
        const ActivationParams p{rng.uniform(1e-3, 2.0), rng.uniform(1e-3, 2.0)};
        const double h = 1e-5 * std::max(1.0, std::fabs(x));
        const ActivationGrad g = apalu_grad(x, p);
        const double num = fd_x(x, p, h);
        const double denom = std::max({std::fabs(g.d_dx), std::fabs(num), 1e-12});
        worst = std::max(worst, std::fabs(g.d_dx - num) / denom);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("derivative kink at the origin") {
    // right derivative 1.5a, left limit b; equal only when b = 1.5a
    const ActivationParams p{1.0, 0.25};
    CHECK(apalu_grad(0.0, p).d_dx == doctest::Approx(1.5));
    CHECK(apalu_grad(-1e-12, p).d_dx == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("baseline values") {
    CHECK(baseline({ActKind::ReLU}, -3.0) == 0.0);
    CHECK(baseline({ActKind::ReLU}, 2.5) == 2.5);
    CHECK(baseline({ActKind::GELU_sigmoid}, 1.0) == doctest::Approx(0.8457957659328213).epsilon(1e-12));
    CHECK(baseline({ActKind::ELU}, -1.0) == doctest::Approx(-0.6321205588285577).epsilon(1e-12));
    CHECK(baseline({ActKind::LReLU}, -2.0) == doctest::Approx(-0.2));
    CHECK(baseline({ActKind::GELU_exact}, 1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
    CHECK(baseline({ActKind::Tanh}, 0.5) == doctest::Approx(std::tanh(0.5)));
    CHECK(baseline({ActKind::Sigmoid}, 0.0) == 0.5);
    CHECK(baseline({ActKind::Identity}, -4.2) == -4.2);
    CHECK_THROWS_AS(baseline({ActKind::APALU}, 1.0), ConfigError);
    CHECK_THROWS_AS(ActivationKind::parse("Swish"), ConfigError);
}

TEST_CASE("baseline grads match central differences") {
    const ActivationKind kinds[] = {{ActKind::ReLU},         {ActKind::LReLU},
                                    {ActKind::ELU},          {ActKind::GELU_exact},
                                    {ActKind::GELU_sigmoid}, {ActKind::Tanh},
                                    {ActKind::Sigmoid}};
    Rng rng(13);
    for (const auto& kind : kinds) {
        // The FD oracle bottoms out near 1e-12 absolute (function values are
        // O(1), h ~ 1e-5), so saturated tails and derivative zero crossings
        // are accepted on absolute agreement instead of relative.
        std::size_t bad = 0;
        for (int i = 0; i < 1000; ++i) {
            double x = rng.uniform(-10.0, 10.0);
            if (std::fabs(x) < 1e-4) x = x >= 0.0 ? 1e-4 : -1e-4;
            const double h = 1e-5 * std::max(1.0, std::fabs(x));
            const double num = (baseline(kind, x + h) - baseline(kind, x - h)) / (2.0 * h);
            const double ana = baseline_grad(kind, x);
            const double denom = std::max({std::fabs(ana), std::fabs(num), 1e-12});
            const bool ok = std::fabs(ana - num) / denom < 1e-6 || std::fabs(ana - num) < 1e-9;
            if (!ok) ++bad;
        }
        CAPTURE(kind.name());
        CHECK(bad == 0);
    }
}

TEST_CASE("sigmoid stability at extreme arguments") {
    CHECK(stable_sigmoid(800.0) == 1.0);
    CHECK(stable_sigmoid(-800.0) == 0.0);
    CHECK(std::isfinite(apalu(1e6, {1.0, 1.0})));
    CHECK(std::isfinite(apalu_grad(1e6, {1.0, 1.0}).d_dx));
}

TEST_CASE("derivative_bound_scan grid extrema") {
    const ActivationParams p{1.0, 1.0};
    // grid oracle over a(1 + sigma(u) + u sigma(u)(1 - sigma(u))): peak near u = 2.4
    const BoundScan pos = derivative_bound_scan(p, 0.0, 20.0, 100001);
    CHECK(pos.sup_d == doctest::Approx(2.0998393194).epsilon(1e-6));
    // negative branch: b e^x increasing, bounded by b near 0-
    const BoundScan neg = derivative_bound_scan(p, -20.0, -1e-9, 100001);
    CHECK(neg.sup_d <= 1.0);
    CHECK(neg.inf_d == doctest::Approx(std::exp(-20.0)).epsilon(1e-9));
    const BoundScan mid = derivative_bound_scan(p, -5.0, 5.0, 100001);
    CHECK(mid.inf_d > 0.0);
    // combined branch bound
    CHECK(pos.sup_d <= 2.11 * p.a + p.b);
    CHECK_THROWS_AS(derivative_bound_scan(p, 1.0, 0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(derivative_bound_scan(p, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("continuity at the origin") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const ActivationParams p{rng.uniform(1e-3, 2.0), rng.uniform(1e-3, 2.0)};
        const double h = std::pow(10.0, rng.uniform(-9.0, -3.0));
        CHECK(std::fabs(apalu(h, p)) + std::fabs(apalu(-h, p)) < 3.0 * (p.a + p.b) * h);
    }
}

TEST_CASE("positive-branch identity is bitwise") {
    Rng rng(19);
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform(0.0, 30.0);
        const ActivationParams p{1.0, rng.uniform(1e-3, 2.0)};
        CHECK(apalu(x, p) == x + baseline({ActKind::GELU_sigmoid}, x));
    }
}

TEST_CASE("homogeneity in the branch gains is bitwise") {
    Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(1e-3, 1.0), b = rng.uniform(1e-3, 1.0);
        const double xp = rng.uniform(0.0, 40.0);
        const double xn = -rng.uniform(1e-9, 40.0);
        CHECK(apalu(xp, {2.0 * a, b}) == 2.0 * apalu(xp, {a, b}));
        CHECK(apalu(xn, {a, 2.0 * b}) == 2.0 * apalu(xn, {a, b}));
    }
}
