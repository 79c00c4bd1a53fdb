#pragma once

#include "nlperim/kernels.hpp"
#include "nlperim/sampler.hpp"
#include "nlperim/surface.hpp"

#include <string>
#include <vector>

namespace nlperim {

// Scalar functional result.  err is a quadrature error estimate (one
// refinement step, N vs N/2) or a Monte Carlo standard error, combined in
// quadrature where both enter.
struct FunctionalValue {
    double value = 0.0;
    double err = 0.0;
    long long n_terms = 0;
    std::string tag;
};

struct InequalityReport {
    FunctionalValue lhs;
    FunctionalValue rhs;
    double slack = 0.0;         // lhs.value - rhs.value
    double tol = 0.0;           // 3x combined error; decision threshold
    bool satisfied = false;     // slack >= -tol
    bool equality_case = false; // |slack| <= tol
    bool exploratory = false;   // reported, never asserted
};

// Boundary quadrature caps the Helmholtz parameter at N/20: beyond that the
// kernel concentrates below the node spacing and the double sums go silently
// wrong.  Violations raise config_error.
double a_max_for(const QuadratureSurface& s);

// [u]^2_{r,dOmega} for u = nu: sum_{i!=j} w_i w_j |nu_i-nu_j|^2 / rho^{2+2r}
// (d = 3), diagonal excluded.  r in [0, 1).
FunctionalValue gagliardo_seminorm_sq(const QuadratureSurface& s, double r);

// L^1 variant: kernel |nu_i-nu_j| / rho^2.
FunctionalValue abs_seminorm(const QuadratureSurface& s);

// Squared s-fractional second fundamental form per node:
// c^2_i = sum_{j!=i} w_j (|nu_i-nu_j|^2/2) / rho^{3+s}, s in (-1, 1).
std::vector<FunctionalValue> frac_fundamental_form_sq(const QuadratureSurface& s,
                                                      double fractional_order);

// Lambda(Omega, a) through the boundary identity
// a^2 Lambda = sum w_i w_j G_a(rho) nu_i . nu_j.
FunctionalValue nonlocal_perimeter_boundary(const QuadratureSurface& s,
                                            const KernelContext& ctx);

// Lambda(Omega, a) by Monte Carlo over inside x outside pairs, scaled by the
// sampler's volume estimates; the analytic exterior-tail bound beyond the
// truncation radius is added to err.
FunctionalValue nonlocal_perimeter_mc(const VolumeSampler& vs,
                                      const KernelContext& ctx);

// Solid term of Phi: 4 int_{Omega^c} int_Omega F_a(x-y)/|x-y| dx dy.
// Estimated by distance-importance sampling: x uniform in Omega, direction
// uniform, radius ~ Exp(a), which reduces the integrand to an indicator
// (the radial density cancels F_a(rho) rho exactly for d = 3).
FunctionalValue solid_f_term(const VolumeSampler& vs, const KernelContext& ctx);

// W-weighted boundary double sum of Phi (its first term).
FunctionalValue phi_boundary_term(const QuadratureSurface& s,
                                  const KernelContext& ctx);

// Phi(Omega, a) = boundary term + solid term.
FunctionalValue phi(const QuadratureSurface& s, const VolumeSampler& vs,
                    const KernelContext& ctx);

// dPhi/da in analytic form:
//   -int int G_a |nu-nu'|^2 dsigma dsigma
//   -4 int int [a^2 G_a - (d-1) F_a/(a rho)] dx dy,
// the solid derivative expanded through d/da(a^2 d/da(G_a/rho^2))
// = (d-1) a d/da(G_a/rho^2) + a^2 G_a.  Shares all Monte Carlo streams with
// solid_f_term so comparisons across a use common random numbers.
FunctionalValue phi_derivative(const QuadratureSurface& s, const VolumeSampler& vs,
                               const KernelContext& ctx);

// 0 <= 4 int int d/da(a^2 d/da(G_a/rho^2)) + int int G_a |nu-nu'|^2, with
// slack = -phi_derivative; equality only on balls.
InequalityReport check_theorem_2_3(const QuadratureSurface& s,
                                   const VolumeSampler& vs,
                                   const KernelContext& ctx);

// Endpoint seminorm >= area * kappa_tilde(3); equality only on balls.
InequalityReport check_theorem_1_1(const QuadratureSurface& s);

// L^1 inequality: abs_seminorm >= area * |S^2|; equality only on balls.
InequalityReport check_inequality_2(const QuadratureSurface& s);

// Conjectured interpolation bound for r in (0, 1); exploratory: the report
// records the slack but is never asserted.
InequalityReport check_conjecture_5(const QuadratureSurface& s, double r);

// Residual of the projected-normal boundary identity against
// a^2 Lambda + a(d-1) int int d/da(G_a/rho^2), the latter evaluated as
// -((d-1)/a) int int F_a/rho by the kernel identity.
FunctionalValue check_identity_18(const QuadratureSurface& s,
                                  const VolumeSampler& vs,
                                  const KernelContext& ctx);

} // namespace nlperim
