#pragma once

#include "nlperim/bessel.hpp"
#include "nlperim/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlperim {

// Kernel evaluations below t = a*r = t_min return an accuracy error; the
// kernels are never needed at the origin and W_a carries the small-argument
// behaviour through its integral form.
inline constexpr double kernel_t_min = 1e-8;

// Dimension, Helmholtz parameter and derived constants shared by all kernel
// evaluations.  Immutable after construction.
struct KernelContext {
    int d;
    double a;
    double rel_tol;
    double order;      // d/2 - 1
    double norm;       // (2 pi)^{-d/2}
    double sphere_area; // |S^{d-1}|

    KernelContext(int d_, double a_, double rel_tol_ = 1e-10);
};

namespace detail {
// General-d paths (quadrature-backed).
KernelValue green_g_general(const KernelContext& ctx, double r);
KernelValue green_h_general(const KernelContext& ctx, double r);
KernelValue weight_w_general(const KernelContext& ctx, double r);
KernelValue kernel_f_general(const KernelContext& ctx, double r);

inline void check_radius(const KernelContext& ctx, double r) {
    if (!(r > 0.0)) throw std::domain_error("kernel: r must be > 0");
    if (ctx.a * r < kernel_t_min)
        throw accuracy_error("kernel: a*r below t_min", 0.0,
                             std::numeric_limits<double>::infinity());
}
} // namespace detail

// G_a(r) = a^{d-2} G(ar) with G(t) = t^{1-d/2} (2 pi)^{-d/2} K_{d/2-1}(t).
// For d = 3 this is the Yukawa kernel e^{-ar} / (4 pi r).
inline KernelValue green_g(const KernelContext& ctx, double r) {
    detail::check_radius(ctx, r);
    if (ctx.d == 3) {
        const double v = std::exp(-ctx.a * r) / (4.0 * std::numbers::pi * r);
        return {v, 8.0 * std::numeric_limits<double>::epsilon() * v};
    }
    return detail::green_g_general(ctx, r);
}

// H_a(r) = a^{d-2} H(ar) with H(t) = t^{1-d/2} (2 pi)^{-d/2} K'_{d/2-1}(t);
// always negative.
inline KernelValue green_h(const KernelContext& ctx, double r) {
    detail::check_radius(ctx, r);
    if (ctx.d == 3) {
        const double t = ctx.a * r;
        const double v = -std::exp(-t) / (4.0 * std::numbers::pi) *
                         (1.0 / r + 1.0 / (2.0 * ctx.a * r * r));
        return {v, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
    }
    return detail::green_h_general(ctx, r);
}

// W_a(r) = (2 pi)^{-d/2} int_{ar}^inf t^{d/2-1} K_{d/2-1}(t) dt; lies in
// (0, kappa) and decreases in a*r.  For d = 3: e^{-ar} / (4 pi).
inline KernelValue weight_w(const KernelContext& ctx, double r) {
    detail::check_radius(ctx, r);
    if (ctx.d == 3) {
        const double v = std::exp(-ctx.a * r) / (4.0 * std::numbers::pi);
        return {v, 8.0 * std::numeric_limits<double>::epsilon() * v};
    }
    return detail::weight_w_general(ctx, r);
}

// F_a(r) = a^d F(ar) with F(t) = (1 - d/2) G(t)/t - H(t); positive.
// For d = 3: a^2 e^{-ar} / (4 pi r) = a^2 G_a(r).
inline KernelValue kernel_f(const KernelContext& ctx, double r) {
    detail::check_radius(ctx, r);
    if (ctx.d == 3) {
        const double v =
            ctx.a * ctx.a * std::exp(-ctx.a * r) / (4.0 * std::numbers::pi * r);
        return {v, 8.0 * std::numeric_limits<double>::epsilon() * v};
    }
    return detail::kernel_f_general(ctx, r);
}

// kappa = (2 pi)^{-d/2} int_0^inf t^{d/2-1} K_{d/2-1}(t) dt, evaluated both
// directly and through the cosh representation
// 2^{1-d/2}/|S^{d-1}| int_0^inf cosh((d/2-1)t)/(cosh t)^{d/2} dt;
// the two routes must agree within rel_tol.
KernelValue kappa(int d, double rel_tol = 1e-10);

// kappa_tilde = int_{S^{d-1}} |x - e|^{3-d} dsigma(x), via the polar-angle
// reduction |S^{d-2}| int_0^pi (2 sin(th/2))^{3-d} sin^{d-2}(th) dth.
KernelValue kappa_tilde(int d, double rel_tol = 1e-11);

// int_{S^2} |x - e|^{-2r} dsigma(x) by the same 1D reduction (d = 3 only),
// needed by the conjectured inequality's right-hand side.
KernelValue sphere_kernel_integral(double two_r, double rel_tol = 1e-11);

} // namespace nlperim
