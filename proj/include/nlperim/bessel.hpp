#pragma once

#include "nlperim/quadrature.hpp"

namespace nlperim {

// Scalar kernel output: value plus an estimated absolute error.
struct KernelValue {
    double value = 0.0;
    double abs_err = 0.0;
};

// Modified Bessel function of the second kind K_alpha(t), t > 0, alpha >= 0.
// Evaluated by adaptive quadrature of the integral representation
// K_alpha(t) = int_0^inf exp(-t cosh r) cosh(alpha r) dr, truncated where the
// exponential has dropped by e^{-40}; alpha = 1/2 uses the closed form
// sqrt(pi/2) t^{-1/2} e^{-t}.
KernelValue bessel_k(double order, double t, double rel_tol = 1e-11);

// K'_alpha(t) = -(K_{alpha+1}(t) + K_{|alpha-1|}(t)) / 2
KernelValue bessel_k_prime(double order, double t, double rel_tol = 1e-11);

// Second derivative through the same recurrence, used by the ODE residual
// tests; not part of the kernel surface proper.
KernelValue bessel_k_second(double order, double t, double rel_tol = 1e-11);

} // namespace nlperim
