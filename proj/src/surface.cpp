#include "nlperim/surface.hpp"

#include "nlperim/errors.hpp"
#include "nlperim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlperim {

namespace {

constexpr int kMinResolution = 8;

double perturbed_rho(double eps, int mode, double sin_th, double cos_mphi) {
    return 1.0 + eps * cos_mphi * std::pow(sin_th, mode);
}

struct GridFrame {
    std::vector<double> u, lam, phi;
    int N, M;
    double dphi;
};

GridFrame grid_frame(int N) {
    GridFrame g;
    g.N = N;
    g.M = 2 * N;
    g.dphi = 2.0 * std::numbers::pi / g.M;
    gauss_legendre(N, g.u, g.lam);
    g.phi.resize(g.M);
    for (int j = 0; j < g.M; ++j) g.phi[j] = g.dphi * j;
    return g;
}

// max |nu_i - nu_j| / |x_i - x_j| over latitude- and longitude-adjacent
// node pairs; on smooth surfaces this approaches the largest principal
// curvature, realizing the normal-field Lipschitz bound as a mesh statistic.
double lipschitz_over_neighbors(const QuadratureSurface& s) {
    const int N = s.resolution, M = 2 * s.resolution;
    double best = 0.0;
    auto ratio = [&](int p, int q) {
        const double dx = (s.nodes[p] - s.nodes[q]).norm();
        if (dx <= 0.0) return;
        best = std::max(best, (s.normals[p] - s.normals[q]).norm() / dx);
    };
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < M; ++j) {
            const int p = i * M + j;
            if (i + 1 < N) ratio(p, (i + 1) * M + j);
            ratio(p, i * M + (j + 1) % M);
        }
    }
    return best;
}

void validate_resolution(int resolution) {
    if (resolution < kMinResolution)
        throw config_error("surface: resolution must be >= " +
                           std::to_string(kMinResolution));
}

} // namespace

bool ShapeDescriptor::inside(const Vec3& p) const {
    switch (kind) {
        case Kind::sphere:
            return p.norm2() < radius * radius;
        case Kind::ellipsoid: {
            const double q = (p.x / ax) * (p.x / ax) + (p.y / by) * (p.y / by) +
                             (p.z / cz) * (p.z / cz);
            return q < 1.0;
        }
        case Kind::perturbed: {
            const double r = p.norm();
            if (r == 0.0) return true;
            const double sin_th = std::sqrt(p.x * p.x + p.y * p.y) / r;
            const double phi = std::atan2(p.y, p.x);
            const double rho =
                perturbed_rho(eps, mode, sin_th, std::cos(mode * phi));
            return r < rho;
        }
    }
    return false;
}

double ShapeDescriptor::circumscribed_radius() const {
    switch (kind) {
        case Kind::sphere: return radius;
        case Kind::ellipsoid: return std::max({ax, by, cz});
        case Kind::perturbed: return 1.0 + std::abs(eps);
    }
    return 0.0;
}

Vec3 ShapeDescriptor::bounding_box_halfwidths() const {
    switch (kind) {
        case Kind::sphere: return {radius, radius, radius};
        case Kind::ellipsoid: return {ax, by, cz};
        case Kind::perturbed: {
            const double r = 1.0 + std::abs(eps);
            return {r, r, r};
        }
    }
    return {};
}

bool ShapeDescriptor::is_ball() const {
    switch (kind) {
        case Kind::sphere: return true;
        case Kind::ellipsoid: return ax == by && by == cz;
        case Kind::perturbed: return eps == 0.0;
    }
    return false;
}

std::string ShapeDescriptor::name() const {
    switch (kind) {
        case Kind::sphere: return "sphere";
        case Kind::ellipsoid: return "ellipsoid";
        case Kind::perturbed: return "perturbed";
    }
    return "?";
}

double QuadratureSurface::area() const {
    double s = 0.0, c = 0.0;
    for (double w : weights) { // Kahan
        const double y = w - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

Vec3 QuadratureSurface::weighted_normal_sum() const {
    Vec3 s{};
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * normals[i];
    return s;
}

QuadratureSurface make_sphere(double radius, int resolution) {
    if (!(radius > 0.0)) throw config_error("make_sphere: radius must be > 0");
    validate_resolution(resolution);
    const GridFrame g = grid_frame(resolution);
    QuadratureSurface s;
    s.shape.kind = ShapeDescriptor::Kind::sphere;
    s.shape.radius = radius;
    s.resolution = resolution;
    s.nodes.reserve(g.N * g.M);
    s.normals.reserve(g.N * g.M);
    s.weights.reserve(g.N * g.M);
    for (int i = 0; i < g.N; ++i) {
        const double st = std::sqrt(1.0 - g.u[i] * g.u[i]);
        for (int j = 0; j < g.M; ++j) {
            const Vec3 n{st * std::cos(g.phi[j]), st * std::sin(g.phi[j]), g.u[i]};
            s.nodes.push_back(radius * n);
            s.normals.push_back(n);
            s.weights.push_back(radius * radius * g.lam[i] * g.dphi);
        }
    }
    s.lipschitz_estimate = lipschitz_over_neighbors(s);
    return s;
}

QuadratureSurface make_ellipsoid(double ax, double by, double cz, int resolution) {
    if (!(ax > 0.0) || !(by > 0.0) || !(cz > 0.0))
        throw config_error("make_ellipsoid: semiaxes must be > 0");
    validate_resolution(resolution);
    const GridFrame g = grid_frame(resolution);
    QuadratureSurface s;
    s.shape.kind = ShapeDescriptor::Kind::ellipsoid;
    s.shape.ax = ax;
    s.shape.by = by;
    s.shape.cz = cz;
    s.resolution = resolution;
    for (int i = 0; i < g.N; ++i) {
        const double u = g.u[i];
        const double st = std::sqrt(1.0 - u * u);
        for (int j = 0; j < g.M; ++j) {
            const double cp = std::cos(g.phi[j]), sp = std::sin(g.phi[j]);
            const Vec3 p{ax * st * cp, by * st * sp, cz * u};
            // dsigma = sqrt(b^2 c^2 (1-u^2) cos^2 + a^2 c^2 (1-u^2) sin^2
            //               + a^2 b^2 u^2) du dphi
            const double jac = std::sqrt(by * by * cz * cz * st * st * cp * cp +
                                         ax * ax * cz * cz * st * st * sp * sp +
                                         ax * ax * by * by * u * u);
            // outward normal from the implicit-equation gradient
            const Vec3 grad{p.x / (ax * ax), p.y / (by * by), p.z / (cz * cz)};
            s.nodes.push_back(p);
            s.normals.push_back(grad.normalized());
            s.weights.push_back(g.lam[i] * g.dphi * jac);
        }
    }
    s.lipschitz_estimate = lipschitz_over_neighbors(s);
    return s;
}

QuadratureSurface make_perturbed_sphere(double eps, int mode, int resolution) {
    if (std::abs(eps) > 0.3)
        throw config_error("make_perturbed_sphere: |eps| must be <= 0.3");
    if (mode < 2) throw config_error("make_perturbed_sphere: mode must be >= 2");
    validate_resolution(resolution);
    const GridFrame g = grid_frame(resolution);
    QuadratureSurface s;
    s.shape.kind = ShapeDescriptor::Kind::perturbed;
    s.shape.eps = eps;
    s.shape.mode = mode;
    s.resolution = resolution;
    for (int i = 0; i < g.N; ++i) {
        const double u = g.u[i];
        const double st = std::sqrt(1.0 - u * u);
        for (int j = 0; j < g.M; ++j) {
            const double cp = std::cos(g.phi[j]), sp = std::sin(g.phi[j]);
            const double cm = std::cos(mode * g.phi[j]), sm = std::sin(mode * g.phi[j]);
            const double rho = perturbed_rho(eps, mode, st, cm);
            const double rho_th = eps * cm * mode * std::pow(st, mode - 1) * u;
            // rho_phi / sin(theta), regular through the poles for mode >= 2
            const double rho_ph_st = -eps * mode * sm * std::pow(st, mode - 1);
            const Vec3 rhat{st * cp, st * sp, u};
            const Vec3 that{u * cp, u * sp, -st};
            const Vec3 phat{-sp, cp, 0.0};
            const double slen =
                std::sqrt(rho * rho + rho_th * rho_th + rho_ph_st * rho_ph_st);
            s.nodes.push_back(rho * rhat);
            s.normals.push_back((rho * rhat - rho_th * that - rho_ph_st * phat) / slen);
            s.weights.push_back(g.lam[i] * g.dphi * rho * slen);
        }
    }
    s.lipschitz_estimate = lipschitz_over_neighbors(s);
    return s;
}

QuadratureSurface make_surface(const ShapeDescriptor& shape, int resolution) {
    switch (shape.kind) {
        case ShapeDescriptor::Kind::sphere:
            return make_sphere(shape.radius, resolution);
        case ShapeDescriptor::Kind::ellipsoid:
            return make_ellipsoid(shape.ax, shape.by, shape.cz, resolution);
        case ShapeDescriptor::Kind::perturbed:
            return make_perturbed_sphere(shape.eps, shape.mode, resolution);
    }
    throw config_error("make_surface: unknown shape");
}

nlohmann::json surface_to_json(const QuadratureSurface& s) {
    nlohmann::json j;
    j["shape"] = s.shape.name();
    nlohmann::json params;
    switch (s.shape.kind) {
        case ShapeDescriptor::Kind::sphere:
            params["R"] = s.shape.radius;
            break;
        case ShapeDescriptor::Kind::ellipsoid:
            params["a"] = s.shape.ax;
            params["b"] = s.shape.by;
            params["c"] = s.shape.cz;
            break;
        case ShapeDescriptor::Kind::perturbed:
            params["eps"] = s.shape.eps;
            params["mode"] = s.shape.mode;
            break;
    }
    j["params"] = params;
    j["resolution"] = s.resolution;
    auto vecs = [](const std::vector<Vec3>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Vec3& p : v) arr.push_back({p.x, p.y, p.z});
        return arr;
    };
    j["nodes"] = vecs(s.nodes);
    j["normals"] = vecs(s.normals);
    j["weights"] = s.weights;
    return j;
}

QuadratureSurface surface_from_json(const nlohmann::json& j) {
    QuadratureSurface s;
    try {
        const std::string kind = j.at("shape").get<std::string>();
        const auto& params = j.at("params");
        if (kind == "sphere") {
            s.shape.kind = ShapeDescriptor::Kind::sphere;
            s.shape.radius = params.at("R").get<double>();
        } else if (kind == "ellipsoid") {
            s.shape.kind = ShapeDescriptor::Kind::ellipsoid;
            s.shape.ax = params.at("a").get<double>();
            s.shape.by = params.at("b").get<double>();
            s.shape.cz = params.at("c").get<double>();
        } else if (kind == "perturbed") {
            s.shape.kind = ShapeDescriptor::Kind::perturbed;
            s.shape.eps = params.at("eps").get<double>();
            s.shape.mode = params.at("mode").get<int>();
        } else {
            throw io_error("surface_from_json: unknown shape '" + kind + "'");
        }
        s.resolution = j.at("resolution").get<int>();
        auto vecs = [](const nlohmann::json& arr) {
            std::vector<Vec3> v;
            v.reserve(arr.size());
            for (const auto& p : arr)
                v.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                             p.at(2).get<double>()});
            return v;
        };
        s.nodes = vecs(j.at("nodes"));
        s.normals = vecs(j.at("normals"));
        s.weights = j.at("weights").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("surface_from_json: ") + e.what());
    }
    if (s.nodes.size() != s.normals.size() || s.nodes.size() != s.weights.size())
        throw io_error("surface_from_json: node/normal/weight count mismatch");
    if (s.nodes.size() !=
        static_cast<std::size_t>(s.resolution) * 2 * s.resolution)
        throw io_error("surface_from_json: node count does not match resolution");
    s.lipschitz_estimate = lipschitz_over_neighbors(s);
    return s;
}

} // namespace nlperim
