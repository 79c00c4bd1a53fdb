#pragma once

#include "nlperim/surface.hpp"
#include "nlperim/vec3.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nlperim {

// Seeded Monte Carlo point sets for the enclosed volume and the truncated
// complement Omega^c n B_R.  Immutable after construction; all draws come
// from counter-based streams, so the point sets are bitwise reproducible.
struct VolumeSampler {
    ShapeDescriptor shape;
    double trunc_radius = 0.0;
    std::uint64_t seed = 0;
    std::vector<Vec3> inside_points;
    std::vector<Vec3> outside_points;
    double inside_volume = 0.0;
    double inside_volume_se = 0.0;
    double shell_volume = 0.0; // |B_R \ Omega| estimate
    double shell_volume_se = 0.0;

    bool inside(const Vec3& p) const { return shape.inside(p); }
};

// Rejection-sampled uniform points: inside from the bounding box, outside
// from B_R.  Requires trunc_radius >= 2x circumscribed radius and at least
// 1000 points per set.
VolumeSampler sample_volume(const QuadratureSurface& surface, double trunc_radius,
                            int n_inside, int n_outside, std::uint64_t seed);

// Mass of G_a outside a ball of radius delta around a point (d = 3):
// int_{|z|>delta} G_a(z) dz = e^{-a delta} (delta/a + 1/a^2).
double g_tail_mass(double a, double delta);

// Smallest R = 2^k * R_circ (k >= 1, capped) for which the relative
// exterior-tail factor e^{-a(R-R_circ)}(a(R-R_circ)+1) is below tol for
// every a in the list.
double auto_trunc_radius(const QuadratureSurface& surface,
                         std::span<const double> a_values, double tol = 2e-2);

} // namespace nlperim
