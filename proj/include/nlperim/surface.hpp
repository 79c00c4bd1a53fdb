#pragma once

#include "nlperim/vec3.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace nlperim {

// Analytic shape menu.  Every surface keeps its descriptor so inside-tests
// and coarser companions can be rebuilt exactly.
struct ShapeDescriptor {
    enum class Kind { sphere, ellipsoid, perturbed };
    Kind kind = Kind::sphere;
    double radius = 1.0;          // sphere
    double ax = 1.0, by = 1.0, cz = 1.0; // ellipsoid semiaxes
    double eps = 0.0;             // perturbed sphere amplitude
    int mode = 2;                 // perturbed sphere azimuthal mode

    bool inside(const Vec3& p) const;
    double circumscribed_radius() const;
    Vec3 bounding_box_halfwidths() const;
    bool is_ball() const;
    std::string name() const;
};

// Discrete closed surface: Gauss-Legendre nodes in cos(theta) x uniform
// longitudes, with outward unit normals and surface-measure weights.
struct QuadratureSurface {
    ShapeDescriptor shape;
    int resolution = 0; // N: latitude nodes; 2N longitudes
    std::vector<Vec3> nodes;
    std::vector<Vec3> normals;
    std::vector<double> weights;
    double lipschitz_estimate = 0.0; // max |nu_i - nu_j| / |x_i - x_j| over adjacent nodes

    std::size_t size() const { return nodes.size(); }
    double area() const;
    Vec3 weighted_normal_sum() const;
    bool inside(const Vec3& p) const { return shape.inside(p); }
    double circumscribed_radius() const { return shape.circumscribed_radius(); }
};

QuadratureSurface make_sphere(double radius, int resolution);
QuadratureSurface make_ellipsoid(double ax, double by, double cz, int resolution);
// r(theta, phi) = 1 + eps * cos(mode * phi) * sin^mode(theta); |eps| <= 0.3,
// mode >= 2 keeps the surface star-shaped and C^2 through the poles.
QuadratureSurface make_perturbed_sphere(double eps, int mode, int resolution);
QuadratureSurface make_surface(const ShapeDescriptor& shape, int resolution);

// Documented JSON schema: {shape, params, resolution, nodes, normals, weights}
nlohmann::json surface_to_json(const QuadratureSurface& s);
QuadratureSurface surface_from_json(const nlohmann::json& j);

} // namespace nlperim
