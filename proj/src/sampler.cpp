#include "nlperim/sampler.hpp"

#include "nlperim/errors.hpp"
#include "nlperim/rng.hpp"

#include <cmath>
#include <numbers>

namespace nlperim {

namespace {

double binomial_se(double p, std::uint64_t trials) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

} // namespace

VolumeSampler sample_volume(const QuadratureSurface& surface, double trunc_radius,
                            int n_inside, int n_outside, std::uint64_t seed) {
    const double rc = surface.circumscribed_radius();
    if (!(trunc_radius >= 2.0 * rc))
        throw config_error("sample_volume: trunc_radius must be >= 2x circumscribed radius");
    if (n_inside < 1000 || n_outside < 1000)
        throw config_error("sample_volume: need at least 1000 points per set");

    VolumeSampler vs;
    vs.shape = surface.shape;
    vs.trunc_radius = trunc_radius;
    vs.seed = seed;

    // Inside: rejection from the bounding box.
    const Vec3 h = surface.shape.bounding_box_halfwidths();
    const double box_volume = 8.0 * h.x * h.y * h.z;
    const CounterRng rin(seed, rng_stream::inside_trials);
    vs.inside_points.reserve(n_inside);
    std::uint64_t trials = 0;
    const std::uint64_t trial_cap = 1000ull * n_inside;
    while (vs.inside_points.size() < static_cast<std::size_t>(n_inside)) {
        if (trials >= trial_cap)
            throw config_error("sample_volume: inside rejection rate too low");
        const Vec3 p{h.x * rin.sym(3 * trials), h.y * rin.sym(3 * trials + 1),
                     h.z * rin.sym(3 * trials + 2)};
        ++trials;
        if (surface.inside(p)) vs.inside_points.push_back(p);
    }
    const double p_in = static_cast<double>(n_inside) / static_cast<double>(trials);
    vs.inside_volume = box_volume * p_in;
    vs.inside_volume_se = box_volume * binomial_se(p_in, trials);

    // Outside: rejection from B_R.
    const double ball_volume =
        4.0 / 3.0 * std::numbers::pi * trunc_radius * trunc_radius * trunc_radius;
    const CounterRng rout(seed, rng_stream::outside_trials);
    vs.outside_points.reserve(n_outside);
    trials = 0;
    const std::uint64_t out_cap = 1000ull * n_outside;
    while (vs.outside_points.size() < static_cast<std::size_t>(n_outside)) {
        if (trials >= out_cap)
            throw config_error("sample_volume: outside rejection rate too low");
        const double z = rout.sym(3 * trials);
        const double phi = 2.0 * std::numbers::pi * rout.u01(3 * trials + 1);
        const double r = trunc_radius * std::cbrt(rout.u01(3 * trials + 2));
        ++trials;
        const double st = std::sqrt(std::max(1.0 - z * z, 0.0));
        const Vec3 p{r * st * std::cos(phi), r * st * std::sin(phi), r * z};
        if (!surface.inside(p)) vs.outside_points.push_back(p);
    }
    const double p_out = static_cast<double>(n_outside) / static_cast<double>(trials);
    vs.shell_volume = ball_volume * p_out;
    vs.shell_volume_se = ball_volume * binomial_se(p_out, trials);
    return vs;
}

double g_tail_mass(double a, double delta) {
    return std::exp(-a * delta) * (delta / a + 1.0 / (a * a));
}

double auto_trunc_radius(const QuadratureSurface& surface,
                         std::span<const double> a_values, double tol) {
    const double rc = surface.circumscribed_radius();
    double r = 2.0 * rc;
    for (int k = 1; k < 6; ++k) {
        bool ok = true;
        for (double a : a_values) {
            const double delta = r - rc;
            if (std::exp(-a * delta) * (a * delta + 1.0) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) break;
        r *= 2.0;
    }
    return r;
}

} // namespace nlperim
