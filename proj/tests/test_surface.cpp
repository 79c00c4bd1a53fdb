#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlperim/errors.hpp"
#include "nlperim/rng.hpp"
#include "nlperim/surface.hpp"

#include <cmath>
#include <numbers>

using namespace nlperim;

namespace {
constexpr double kPi = std::numbers::pi;

double prolate_area(double a, double b) {
    const double e = std::sqrt(1.0 - b * b / (a * a));
    return 2.0 * kPi * b * b * (1.0 + a / (b * e) * std::asin(e));
}

void check_invariants(const QuadratureSurface& s, double analytic_area) {
    double max_norm_dev = 0.0;
    for (const Vec3& n : s.normals)
        max_norm_dev = std::max(max_norm_dev, std::abs(n.norm() - 1.0));
    CHECK(max_norm_dev <= 1e-12);
    for (double w : s.weights) CHECK(w > 0.0);
    const double area = s.area();
    if (analytic_area > 0.0)
        CHECK(std::abs(area - analytic_area) <= 1e-2 * analytic_area);
    // Gauss null test with a roundoff floor (area quadrature is spectrally
    // exact on this menu, so 10x its error collapses to the floor)
    const double area_err =
        analytic_area > 0.0 ? std::abs(area - analytic_area) : 0.0;
    CHECK(s.weighted_normal_sum().norm() <=
          std::max(10.0 * area_err, 1e-10 * area));
    // Inside-test consistency at 1e-6 along the normal
    for (std::size_t i = 0; i < s.size(); i += 97) {
        CHECK(s.inside(s.nodes[i] - 1e-6 * s.normals[i]));
        CHECK(!s.inside(s.nodes[i] + 1e-6 * s.normals[i]));
    }
}

} // namespace

TEST_CASE("sphere construction") {
    const QuadratureSurface s = make_sphere(1.0, 64);
    CHECK(s.size() == 64u * 128u);
    CHECK(s.area() == doctest::Approx(4.0 * kPi).epsilon(1e-3));
    CHECK(std::abs(s.area() - 4.0 * kPi) < 1e-9); // GL x trapezoid is exact here
    check_invariants(s, 4.0 * kPi);
    for (std::size_t i = 0; i < s.size(); i += 53)
        CHECK((s.normals[i] - s.nodes[i]).norm() <= 1e-14);

    const QuadratureSurface s2 = make_sphere(2.0, 64);
    CHECK(s2.area() == doctest::Approx(16.0 * kPi).epsilon(1e-3));
    check_invariants(s2, 16.0 * kPi);

    CHECK(s.lipschitz_estimate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s2.lipschitz_estimate == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sphere configuration errors") {
    CHECK_THROWS_AS(make_sphere(0.0, 32), config_error);
    CHECK_THROWS_AS(make_sphere(-1.0, 32), config_error);
    CHECK_THROWS_AS(make_sphere(1.0, 4), config_error);
}

TEST_CASE("ellipsoid construction") {
    const QuadratureSurface ball = make_ellipsoid(1.0, 1.0, 1.0, 48);
    CHECK(ball.area() == doctest::Approx(make_sphere(1.0, 48).area()).epsilon(1e-3));

    const QuadratureSurface e = make_ellipsoid(2.0, 1.0, 1.0, 96);
    const double expect = prolate_area(2.0, 1.0);
    CHECK(expect == doctest::Approx(21.4784).epsilon(1e-4));
    CHECK(e.area() == doctest::Approx(expect).epsilon(2e-3));
    check_invariants(e, expect);

    CHECK_THROWS_AS(make_ellipsoid(0.0, 1.0, 1.0, 32), config_error);
    CHECK_THROWS_AS(make_ellipsoid(2.0, -1.0, 1.0, 32), config_error);
}

TEST_CASE("ellipsoid lipschitz estimate tracks max curvature") {
    // prolate (2,1,1): largest principal curvature a/b^2 = 2 at the tips
    const QuadratureSurface c = make_ellipsoid(2.0, 1.0, 1.0, 48);
    const QuadratureSurface f = make_ellipsoid(2.0, 1.0, 1.0, 96);
    CHECK(f.lipschitz_estimate == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::abs(f.lipschitz_estimate - c.lipschitz_estimate) <=
          0.2 * f.lipschitz_estimate);
}

TEST_CASE("perturbed sphere: zero perturbation reduces to the sphere") {
    const QuadratureSurface p = make_perturbed_sphere(0.0, 2, 24);
    const QuadratureSurface s = make_sphere(1.0, 24);
    REQUIRE(p.size() == s.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK((p.nodes[i] - s.nodes[i]).norm() <= 1e-14);
        CHECK((p.normals[i] - s.normals[i]).norm() <= 1e-14);
        CHECK(std::abs(p.weights[i] - s.weights[i]) <= 1e-14);
    }
}

TEST_CASE("perturbed sphere: area exceeds the unit sphere") {
    const QuadratureSurface p = make_perturbed_sphere(0.2, 2, 96);
    CHECK(p.area() > 4.0 * kPi);
    // fine-grid regression value
    CHECK(p.area() == doctest::Approx(13.093673).epsilon(1e-5));
    check_invariants(p, 0.0);
    CHECK(std::isfinite(p.lipschitz_estimate));

    CHECK_THROWS_AS(make_perturbed_sphere(0.31, 2, 32), config_error);
    CHECK_THROWS_AS(make_perturbed_sphere(0.1, 1, 32), config_error);
}

TEST_CASE("refinement: area error does not grow (roundoff floor)") {
    for (const auto& mk : {+[](int n) { return make_sphere(1.0, n); },
                           +[](int n) { return make_ellipsoid(2.0, 1.0, 1.0, n); }}) {
        const double exact = mk(200).area();
        const double e48 = std::abs(mk(48).area() - exact);
        const double e96 = std::abs(mk(96).area() - exact);
        CHECK(e96 <= std::max(0.5 * e48, 1e-12 * exact));
    }
}

TEST_CASE("lipschitz estimate stable under refinement") {
    for (const auto& mk :
         {+[](int n) { return make_sphere(1.0, n); },
          +[](int n) { return make_ellipsoid(2.0, 1.0, 1.0, n); },
          +[](int n) { return make_perturbed_sphere(0.2, 2, n); }}) {
        const double l48 = mk(48).lipschitz_estimate;
        const double l96 = mk(96).lipschitz_estimate;
        CHECK(std::isfinite(l96));
        CHECK(std::abs(l96 - l48) <= 0.2 * std::max(l96, l48));
    }
}

TEST_CASE("surface invariants across random shapes") {
    // deterministic generator over the full shape menu
    const CounterRng rng(99, 5);
    for (int k = 0; k < 12; ++k) {
        QuadratureSurface s;
        switch (k % 3) {
            case 0:
                s = make_sphere(0.3 + 3.0 * rng.u01(4 * k), 20);
                break;
            case 1:
                s = make_ellipsoid(0.5 + 2.0 * rng.u01(4 * k),
                                   0.5 + 2.0 * rng.u01(4 * k + 1),
                                   0.5 + 2.0 * rng.u01(4 * k + 2), 20);
                break;
            case 2:
                s = make_perturbed_sphere(-0.29 + 0.58 * rng.u01(4 * k),
                                          2 + static_cast<int>(rng.bits(4 * k + 1) % 4),
                                          20);
                break;
        }
        const double area = s.area();
        CHECK(area > 0.0);
        CHECK(std::isfinite(s.lipschitz_estimate));
        for (std::size_t i = 0; i < s.size(); i += 37) {
            CHECK(std::abs(s.normals[i].norm() - 1.0) <= 1e-12);
            CHECK(s.weights[i] > 0.0);
            CHECK(s.inside(s.nodes[i] - 1e-6 * s.normals[i]));
            CHECK(!s.inside(s.nodes[i] + 1e-6 * s.normals[i]));
        }
        // Gauss null within 10x the area quadrature error: odd perturbation
        // modes break the grid's half-turn symmetry, so the residual follows
        // the aliasing level a refinement step reveals
        const double area_err =
            std::abs(area - make_surface(s.shape, 40).area());
        CHECK(s.weighted_normal_sum().norm() <=
              10.0 * area_err + 1e-9 * area);
    }
}

TEST_CASE("surface JSON round trip") {
    const QuadratureSurface s = make_ellipsoid(2.0, 1.0, 1.0, 16);
    const nlohmann::json j = surface_to_json(s);
    for (const char* key : {"shape", "params", "resolution", "nodes", "normals",
                            "weights"})
        CHECK(j.contains(key));
    CHECK(j.size() == 6);
    const QuadratureSurface t = surface_from_json(j);
    REQUIRE(t.size() == s.size());
    CHECK(t.resolution == s.resolution);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(t.nodes[i].x == s.nodes[i].x);
        CHECK(t.nodes[i].y == s.nodes[i].y);
        CHECK(t.nodes[i].z == s.nodes[i].z);
        CHECK(t.weights[i] == s.weights[i]);
    }
    CHECK(t.shape.name() == "ellipsoid");
    CHECK(t.inside({0.0, 0.0, 0.0}));
    CHECK(!t.inside({3.0, 0.0, 0.0}));

    CHECK_THROWS_AS(surface_from_json(nlohmann::json{{"shape", "torus"}}), io_error);
    nlohmann::json bad = j;
    bad["weights"] = std::vector<double>{1.0};
    CHECK_THROWS_AS(surface_from_json(bad), io_error);
}
