#include "nlperim/kernels.hpp"

#include "nlperim/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nlperim {

KernelContext::KernelContext(int d_, double a_, double rel_tol_)
    : d(d_), a(a_), rel_tol(rel_tol_) {
    if (d < 2) throw config_error("KernelContext: d must be >= 2");
    if (!(a > 0.0)) throw config_error("KernelContext: a must be > 0");
    if (!(rel_tol > 0.0)) throw config_error("KernelContext: rel_tol must be > 0");
    order = 0.5 * d - 1.0;
    norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);
    sphere_area = unit_sphere_area(d);
}

namespace detail {

KernelValue green_g_general(const KernelContext& ctx, double r) {
    const double t = ctx.a * r;
    const KernelValue k = bessel_k(ctx.order, t, ctx.rel_tol);
    const double scale =
        std::pow(ctx.a, ctx.d - 2.0) * std::pow(t, 1.0 - 0.5 * ctx.d) * ctx.norm;
    return {scale * k.value, scale * k.abs_err};
}

KernelValue green_h_general(const KernelContext& ctx, double r) {
    const double t = ctx.a * r;
    const KernelValue kp = bessel_k_prime(ctx.order, t, ctx.rel_tol);
    const double scale =
        std::pow(ctx.a, ctx.d - 2.0) * std::pow(t, 1.0 - 0.5 * ctx.d) * ctx.norm;
    return {scale * kp.value, scale * kp.abs_err};
}

KernelValue weight_w_general(const KernelContext& ctx, double r) {
    const double t0 = ctx.a * r;
    // Integrate to T = max(t0, 1) + 40; beyond that the decay envelope
    // K_alpha(t) <= C t^{-1/2} e^{-t} makes the tail negligible.
    const double T = std::max(t0, 1.0) + 40.0;
    const auto integrand = [&](double s) {
        return std::pow(s, ctx.order) * bessel_k(ctx.order, s, ctx.rel_tol).value;
    };
    QuadOptions opt;
    opt.rel_tol = ctx.rel_tol * 0.1;
    const QuadResult q = adaptive_simpson(integrand, t0, T, opt);
    // Analytic bound on the neglected tail (envelope with C ~ 2 Gamma-factor).
    const double tail =
        2.0 * std::pow(T, ctx.order) * std::exp(-T) * std::sqrt(std::numbers::pi / 2.0);
    return {ctx.norm * q.value, ctx.norm * (q.abs_err + tail)};
}

KernelValue kernel_f_general(const KernelContext& ctx, double r) {
    const double t = ctx.a * r;
    const KernelValue k = bessel_k(ctx.order, t, ctx.rel_tol);
    const KernelValue kp = bessel_k_prime(ctx.order, t, ctx.rel_tol);
    const double gt = std::pow(t, 1.0 - 0.5 * ctx.d) * ctx.norm;
    // F(t) = (1 - d/2) G(t)/t - H(t), then F_a(r) = a^d F(ar)
    const double f = (1.0 - 0.5 * ctx.d) * gt * k.value / t - gt * kp.value;
    const double e = gt * (std::abs(1.0 - 0.5 * ctx.d) * k.abs_err / t + kp.abs_err);
    const double scale = std::pow(ctx.a, static_cast<double>(ctx.d));
    return {scale * f, scale * e};
}

} // namespace detail

KernelValue kappa(int d, double rel_tol) {
    if (d < 3) throw std::domain_error("kappa: d must be >= 3");
    const double alpha = 0.5 * d - 1.0;
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);

    // Route 1: direct Bessel integral.  t^alpha K_alpha(t) -> 2^{alpha-1}
    // Gamma(alpha) as t -> 0, so the integrand extends continuously to 0.
    const double lim0 = std::pow(2.0, alpha - 1.0) * gamma_half_int(alpha);
    const auto f1 = [&](double t) {
        if (t == 0.0) return lim0;
        return std::pow(t, alpha) * bessel_k(alpha, t, rel_tol * 0.01).value;
    };
    QuadOptions opt;
    opt.rel_tol = rel_tol * 0.01;
    const QuadResult qa = adaptive_simpson(f1, 0.0, 1.0, opt);
    const QuadResult qb = adaptive_simpson(f1, 1.0, 60.0, opt);
    const double direct = norm * (qa.value + qb.value);

    // Route 2: cosh representation.
    const auto f2 = [&](double r) {
        return std::cosh(alpha * r) / std::pow(std::cosh(r), 0.5 * d);
    };
    const QuadResult qc = adaptive_simpson(f2, 0.0, 100.0, opt);
    const double via_cosh =
        std::pow(2.0, 1.0 - 0.5 * d) / unit_sphere_area(d) * qc.value;

    const double diff = std::abs(direct - via_cosh);
    if (diff > rel_tol * std::abs(via_cosh))
        throw accuracy_error("kappa: integral representations disagree", direct, diff);
    return {direct, diff + norm * (qa.abs_err + qb.abs_err)};
}

KernelValue kappa_tilde(int d, double rel_tol) {
    if (d < 3) throw std::domain_error("kappa_tilde: d must be >= 3");
    // Integrand sin^{d-2}(th) / (2 sin(th/2))^{d-3} vanishes at both endpoints
    // for d > 3 and equals sin(th) at d = 3.
    const auto f = [&](double th) {
        const double s = std::sin(th);
        if (s <= 0.0) return 0.0;
        return std::pow(2.0 * std::sin(0.5 * th), 3.0 - d) * std::pow(s, d - 2.0);
    };
    QuadOptions opt;
    opt.rel_tol = rel_tol * 0.1;
    const QuadResult q = adaptive_simpson(f, 0.0, std::numbers::pi, opt);
    const double area_sm2 = unit_sphere_area(d - 1);
    return {area_sm2 * q.value, area_sm2 * q.abs_err};
}

KernelValue sphere_kernel_integral(double two_r, double rel_tol) {
    (void)rel_tol;
    if (!(two_r < 2.0))
        throw std::domain_error("sphere_kernel_integral: exponent must be < 2");
    // 1D reduction: with u = 2 sin(th/2) the surface integral collapses to
    // 2 pi int_0^2 u^{1-2r} du, whose primitive is elementary.
    const double v = 2.0 * std::numbers::pi * std::pow(2.0, 2.0 - two_r) /
                     (2.0 - two_r);
    return {v, 8.0 * std::numeric_limits<double>::epsilon() * v};
}

} // namespace nlperim
