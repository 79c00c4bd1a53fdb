#include "nlperim/bessel.hpp"

#include "nlperim/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlperim {

namespace {
constexpr double kLogDrop = 40.0; // integrand below e^{-40} of its peak is cut
}

KernelValue bessel_k(double order, double t, double rel_tol) {
    if (!(t > 0.0)) throw std::domain_error("bessel_k: t must be > 0");
    if (!(order >= 0.0)) throw std::domain_error("bessel_k: order must be >= 0");
    if (!(rel_tol > 0.0)) throw std::domain_error("bessel_k: rel_tol must be > 0");

    if (order == 0.5) {
        const double v = std::sqrt(std::numbers::pi / (2.0 * t)) * std::exp(-t);
        return {v, 4.0 * std::numeric_limits<double>::epsilon() * v};
    }

    // t cosh(r_max) = t + kLogDrop
    const double r_max = std::acosh(1.0 + kLogDrop / t);
    const auto integrand = [&](double r) {
        return std::exp(-t * std::cosh(r)) * std::cosh(order * r);
    };
    QuadOptions opt;
    opt.rel_tol = rel_tol * 0.1;
    const QuadResult q = adaptive_simpson(integrand, 0.0, r_max, opt);

    // Tail bound: for r >= r_max, cosh r >= cosh r_max + sinh(r_max)(r - r_max).
    const double slope = t * std::sinh(r_max);
    double tail = 0.0;
    if (slope > order) {
        tail = std::exp(-(t + kLogDrop)) * std::cosh(order * r_max) /
               (slope - order);
    } else {
        tail = std::exp(-(t + kLogDrop)) * std::cosh(order * r_max) * r_max;
    }
    const double abs_err = q.abs_err + tail;
    if (!q.converged || abs_err > rel_tol * std::abs(q.value)) {
        if (abs_err > rel_tol * std::abs(q.value) * 100.0)
            throw accuracy_error("bessel_k: quadrature did not reach rel_tol at order=" +
                                     std::to_string(order) + " t=" + std::to_string(t),
                                 q.value, abs_err);
    }
    return {q.value, abs_err};
}

KernelValue bessel_k_prime(double order, double t, double rel_tol) {
    const KernelValue a = bessel_k(order + 1.0, t, rel_tol);
    const KernelValue b = bessel_k(std::abs(order - 1.0), t, rel_tol);
    return {-0.5 * (a.value + b.value), 0.5 * (a.abs_err + b.abs_err)};
}

KernelValue bessel_k_second(double order, double t, double rel_tol) {
    const KernelValue a = bessel_k_prime(order + 1.0, t, rel_tol);
    const KernelValue b = bessel_k_prime(std::abs(order - 1.0), t, rel_tol);
    return {-0.5 * (a.value + b.value), 0.5 * (a.abs_err + b.abs_err)};
}

} // namespace nlperim
