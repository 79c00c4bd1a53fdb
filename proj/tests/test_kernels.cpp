#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlperim/errors.hpp"
#include "nlperim/identity_checks.hpp"
#include "nlperim/kernels.hpp"
#include "nlperim/quadrature.hpp"
#include "nlperim/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace nlperim;

namespace {
constexpr double kPi = std::numbers::pi;

// a^2 int_{R^3} G_a dx by radial quadrature (test-side oracle for the
// normalization identity).
double normalization(const KernelContext& ctx) {
    const auto f = [&](double rho) {
        return green_g(ctx, rho).value * ctx.sphere_area * rho * rho;
    };
    const double hi = 46.0 / ctx.a;
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    const QuadResult q = adaptive_simpson(f, 1e-6 / ctx.a, hi, opt);
    return ctx.a * ctx.a * q.value;
}
} // namespace

TEST_CASE("green_g closed values and scaling") {
    const KernelContext c31(3, 1.0);
    // G_1(1) = (2 pi)^{-3/2} K_{1/2}(1) = e^{-1}/(4 pi)
    CHECK(green_g(c31, 1.0).value ==
          doctest::Approx(std::exp(-1.0) / (4.0 * kPi)).epsilon(1e-13));
    CHECK(green_g(c31, 1.0).value == doctest::Approx(0.0292742).epsilon(1e-5));
    // a^{d-2} G(ar) scaling at d=3, a=2
    const KernelContext c32(3, 2.0);
    const double t = 2.0;
    const double expect = 2.0 * std::pow(t, -0.5) *
                          std::pow(2.0 * kPi, -1.5) * bessel_k(0.5, t).value;
    CHECK(green_g(c32, 1.0).value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(green_g(c31, 0.5).value > 0.0);
    CHECK_THROWS_AS(green_g(c31, 0.0), std::domain_error);
    CHECK_THROWS_AS(green_g(c31, -1.0), std::domain_error);
    CHECK_THROWS_AS(green_g(c31, 1e-9), accuracy_error);
}

TEST_CASE("green_g matches the general quadrature path at d=3") {
    // d=3 fast path against the Bessel-quadrature formula it abbreviates
    const KernelContext ctx(3, 1.3);
    for (double r : {0.3, 1.0, 2.7}) {
        const double t = ctx.a * r;
        const double general = std::pow(ctx.a, 1.0) * std::pow(t, -0.5) *
                               std::pow(2.0 * kPi, -1.5) *
                               bessel_k(0.5, t).value;
        CHECK(green_g(ctx, r).value == doctest::Approx(general).epsilon(1e-13));
    }
}

TEST_CASE("normalization a^2 int G_a = 1") {
    for (double a : {0.5, 1.0, 2.0}) {
        const KernelContext ctx(3, a);
        CHECK(normalization(ctx) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("green_h sign and closed value") {
    const KernelContext c31(3, 1.0);
    CHECK(green_h(c31, 1.0).value == doctest::Approx(-0.0439113).epsilon(1e-5));
    // H = (2 pi)^{-3/2} K'_{1/2}(1) at a = 1, r = 1
    CHECK(green_h(c31, 1.0).value ==
          doctest::Approx(std::pow(2.0 * kPi, -1.5) *
                          bessel_k_prime(0.5, 1.0).value)
              .epsilon(1e-12));
    const KernelContext c41(4, 1.0);
    CHECK(green_h(c41, 1.0).value < 0.0);
}

TEST_CASE("identity eq15 residuals") {
    for (int d : {3, 4})
        for (double a : {0.5, 1.0, 2.0})
            for (double r : {0.5, 1.0, 2.0})
                CHECK(eq15_residual(d, a, r) < 1e-4);
    // d=3 closed forms keep the residual at finite-difference noise level
    CHECK(eq15_residual(3, 1.0, 1.0) < 1e-8);
}

TEST_CASE("identity eq16 residuals and monotone negativity") {
    for (int d : {3, 4})
        for (double a : {0.5, 1.0, 2.0})
            for (double r : {0.5, 1.0, 2.0}) {
                CHECK(eq16_residual(d, a, r) < 1e-4);
                CHECK(monotone_quantity(d, a, r) < 0.0);
            }
}

TEST_CASE("weight_w: range, limits, decrease") {
    const double kap3 = 1.0 / (4.0 * kPi);
    const KernelContext small_a(3, 1e-6);
    CHECK(weight_w(small_a, 1.0).value == doctest::Approx(kap3).epsilon(1e-5));
    const KernelContext c31(3, 1.0);
    CHECK(weight_w(c31, 100.0).value < 1e-8);
    double prev = kap3;
    for (double r : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double w = weight_w(c31, r).value;
        CHECK(w > 0.0);
        CHECK(w < kap3);
        CHECK(w < prev);
        prev = w;
    }
    // d=4 general path sits in (0, kappa(4)) as well
    const KernelContext c41(4, 1.0);
    const double k4 = kappa(4).value;
    CHECK(weight_w(c41, 0.5).value > 0.0);
    CHECK(weight_w(c41, 0.5).value < k4);
}

TEST_CASE("identity eq32 residuals") {
    for (int d : {3, 4})
        for (double a : {0.5, 1.0})
            for (double r : {0.8, 1.5})
                CHECK(eq32_residual(d, a, r) < 1e-5);
}

TEST_CASE("kernel_f: values, scaling, positivity, eq33") {
    const KernelContext c31(3, 1.0);
    // F(1) = -G(1)/2 - H(1), numerically equal to G(1) at d = 3
    CHECK(kernel_f(c31, 1.0).value == doctest::Approx(0.0292742).epsilon(1e-5));
    CHECK(kernel_f(c31, 1.0).value ==
          doctest::Approx(green_g(c31, 1.0).value).epsilon(1e-12));
    // F_a(r) = a^d F(ar): compare a=2 against the a=1 kernel
    const KernelContext c32(3, 2.0);
    CHECK(kernel_f(c32, 1.0).value ==
          doctest::Approx(8.0 * kernel_f(c31, 2.0).value).epsilon(1e-12));
    for (double a : {0.5, 1.0, 2.0})
        for (double r : {0.1, 1.0, 5.0}) {
            const KernelContext ctx(3, a);
            CHECK(kernel_f(ctx, r).value > 0.0);
        }
    for (int d : {3, 4})
        for (double a : {0.5, 1.0, 2.0})
            CHECK(eq33_residual(d, a, 1.0) < 1e-4);
}

TEST_CASE("int F_a dx is independent of a") {
    double lo = 1e300, hi = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        const KernelContext ctx(3, a);
        const double v = f_l1_norm(ctx).value;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK((hi - lo) / hi < 1e-4);
    // ||F||_L1 = 1 at d = 3 (int rho e^{-rho} d rho)
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kappa values and dual-route agreement") {
    const KernelValue k3 = kappa(3);
    CHECK(std::abs(k3.value - 1.0 / (4.0 * kPi)) < 1e-6);
    CHECK(k3.value > 0.0);
    CHECK(std::isfinite(k3.value));
    const KernelValue k4 = kappa(4, 1e-8);
    CHECK(k4.value == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-8));
    CHECK(k4.abs_err / k4.value < 1e-8);
    const KernelValue k5 = kappa(5);
    CHECK(k5.value == doctest::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-8));
    CHECK_THROWS_AS(kappa(2), std::domain_error);
}

TEST_CASE("kappa_tilde values") {
    CHECK(std::abs(kappa_tilde(3).value - 4.0 * kPi) < 1e-6);
    CHECK(kappa_tilde(4).value == doctest::Approx(16.0 * kPi / 3.0).epsilon(1e-8));
    CHECK_THROWS_AS(kappa_tilde(2), std::domain_error);
}

TEST_CASE("kappa_tilde: rotation invariance by Monte Carlo on S^3") {
    // Test-side oracle: mean of |x-e|^{-1} over uniform x in S^3, for two
    // different pole choices; both must agree with the quadrature value.
    std::mt19937_64 gen(123);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = 200000;
    const double target = kappa_tilde(4).value;
    const double area = unit_sphere_area(4);
    for (int which = 0; which < 2; ++which) {
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double x[4];
            double nrm = 0.0;
            for (double& c : x) {
                c = gauss(gen);
                nrm += c * c;
            }
            nrm = std::sqrt(nrm);
            // e = first or second coordinate axis
            const double d2 = 2.0 - 2.0 * x[which] / nrm;
            const double v = 1.0 / std::sqrt(d2);
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        CHECK(std::abs(area * mean - target) < 4.0 * area * se);
    }
}

TEST_CASE("sphere_kernel_integral against polar-angle quadrature") {
    // Independent route: adaptive quadrature of the theta form
    // 2 pi int_0^pi (2 sin(th/2))^{-2r} sin(th) dth; closed form as a second
    // pin at 2r = 1 where the integrand is regular.
    for (double r : {0.25, 0.5, 0.75}) {
        const auto f = [&](double th) {
            const double s = std::sin(th);
            if (s <= 0.0) return 0.0;
            return std::pow(2.0 * std::sin(0.5 * th), -2.0 * r) * s;
        };
        const QuadResult q = adaptive_simpson(f, 0.0, kPi, {1e-11});
        CHECK(sphere_kernel_integral(2.0 * r).value ==
              doctest::Approx(2.0 * kPi * q.value).epsilon(1e-7));
    }
    CHECK(sphere_kernel_integral(1.0).value ==
          doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("kernel sign and range properties under random sampling") {
    // hand-rolled generator: deterministic log-uniform (a, r) per dimension
    const CounterRng rng(2024, 77);
    const double kap[] = {kappa(3).value, kappa(4).value, kappa(5).value};
    int tested = 0;
    for (int k = 0; k < 300; ++k) {
        const int d = 3 + static_cast<int>(rng.bits(4 * k) % 3);
        const double a = std::exp(rng.sym(4 * k + 1) * std::log(20.0));
        const double r = std::exp(rng.sym(4 * k + 2) * std::log(20.0));
        if (a * r < 1e-6 || a * r > 60.0) continue;
        ++tested;
        const KernelContext ctx(d, a);
        CHECK(green_g(ctx, r).value > 0.0);
        CHECK(green_h(ctx, r).value < 0.0);
        CHECK(kernel_f(ctx, r).value > 0.0);
        const double w = weight_w(ctx, r).value;
        CHECK(w > 0.0);
        CHECK(w < kap[d - 3]);
        CHECK(monotone_quantity(d, a, r) < 0.0);
    }
    CHECK(tested > 100); // the guard must not hollow out the property
}

TEST_CASE("weight_w strictly decreasing in a*r under random pairs") {
    const CounterRng rng(5150, 3);
    for (int k = 0; k < 100; ++k) {
        const int d = 3 + static_cast<int>(rng.bits(3 * k) % 2);
        const double t1 = std::exp(rng.sym(3 * k + 1) * std::log(10.0));
        const double t2 = t1 * (1.0 + rng.u01(3 * k + 2));
        const KernelContext ctx(d, 1.0);
        CHECK(weight_w(ctx, t2).value < weight_w(ctx, t1).value);
    }
}

TEST_CASE("KernelContext validation") {
    CHECK_THROWS_AS(KernelContext(1, 1.0), config_error);
    CHECK_THROWS_AS(KernelContext(3, 0.0), config_error);
    CHECK_THROWS_AS(KernelContext(3, -1.0), config_error);
    const KernelContext c(5, 2.0);
    CHECK(c.order == doctest::Approx(1.5));
}
