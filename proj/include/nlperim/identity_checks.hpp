#pragma once

#include "nlperim/kernels.hpp"

namespace nlperim {

// Finite-difference residuals of the kernel identities, central differences
// with relative step 1e-4 * a and one Richardson extrapolation level.
// All return |lhs - rhs| / max(|rhs|, floor).

// d/da (G_a(r)/r^2) = H_a(r)/r + (d/2 - 1) G_a(r)/(a r^2)
double eq15_residual(int d, double a, double r);

// d/da (a^{3-d} d/da (G_a(r)/r^2)) = a^{3-d} G_a(r), inner derivative taken
// in its closed form.
double eq16_residual(int d, double a, double r);

// int_a^A G_s(r) ds + tail = W_a(r) / r^{d-1}
double eq32_residual(int d, double a, double r);

// -a^2 d/da (G_a(r)/r^2) = F_a(r) / r
double eq33_residual(int d, double a, double r);

// a^{3-d} d/da (G_a(r)/r^2), closed form; strictly negative for all a, r.
double monotone_quantity(int d, double a, double r);

// int_{R^d} F_a dx by radial quadrature; equals ||F||_L1 independent of a.
KernelValue f_l1_norm(const KernelContext& ctx);

} // namespace nlperim
