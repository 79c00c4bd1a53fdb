#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlperim/functionals.hpp"
#include "nlperim/identity_checks.hpp"
#include "nlperim/kernels.hpp"
#include "nlperim/report.hpp"
#include "nlperim/sampler.hpp"
#include "nlperim/surface.hpp"

#include <array>
#include <vector>

namespace py = pybind11;
using namespace nlperim;

namespace {

std::vector<std::array<double, 3>> to_rows(const std::vector<Vec3>& v) {
    std::vector<std::array<double, 3>> out;
    out.reserve(v.size());
    for (const Vec3& p : v) out.push_back({p.x, p.y, p.z});
    return out;
}

py::dict sweep_dict(const ScenarioConfig& cfg) {
    const SweepReport rep = run_sweep(cfg);
    py::dict d;
    d["config_hash"] = rep.config_hash;
    d["version"] = rep.version;
    d["seed"] = rep.seed;
    d["trunc_radius"] = rep.trunc_radius;
    d["curve_check"] = rep.curve_check;
    d["curve_ok"] = rep.curve_ok;
    d["rows_ok"] = rep.rows_ok;
    py::list rows;
    for (const auto& r : rep.rows) {
        py::dict row;
        row["a"] = r.a;
        row["phi"] = r.phi;
        row["phi_boundary_term"] = r.phi_boundary_term;
        row["phi_solid_term"] = r.phi_solid_term;
        row["phi_derivative"] = r.phi_derivative;
        row["lambda"] = r.lambda;
        row["slack_thm23"] = r.slack_thm23;
        row["phi_err"] = r.phi_err;
        rows.append(row);
    }
    d["rows"] = rows;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nonlocal-perimeter functionals, Bessel kernels and surface "
              "quadrature for closed surfaces in R^3.";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<accuracy_error>(m, "AccuracyError");
    py::register_exception<io_error>(m, "IoError");

    py::class_<KernelValue>(m, "KernelValue")
        .def_readonly("value", &KernelValue::value)
        .def_readonly("abs_err", &KernelValue::abs_err)
        .def("__repr__", [](const KernelValue& v) {
            return "KernelValue(value=" + std::to_string(v.value) +
                   ", abs_err=" + std::to_string(v.abs_err) + ")";
        });

    py::class_<KernelContext>(m, "KernelContext")
        .def(py::init<int, double, double>(), py::arg("d"), py::arg("a"),
             py::arg("rel_tol") = 1e-10)
        .def_readonly("d", &KernelContext::d)
        .def_readonly("a", &KernelContext::a)
        .def_readonly("rel_tol", &KernelContext::rel_tol)
        .def_readonly("order", &KernelContext::order);

    m.def("bessel_k", &bessel_k, py::arg("order"), py::arg("t"),
          py::arg("rel_tol") = 1e-11);
    m.def("bessel_k_prime", &bessel_k_prime, py::arg("order"), py::arg("t"),
          py::arg("rel_tol") = 1e-11);
    m.def("green_g", &green_g, py::arg("ctx"), py::arg("r"));
    m.def("green_h", &green_h, py::arg("ctx"), py::arg("r"));
    m.def("weight_w", &weight_w, py::arg("ctx"), py::arg("r"));
    m.def("kernel_f", &kernel_f, py::arg("ctx"), py::arg("r"));
    m.def("kappa", &kappa, py::arg("d"), py::arg("rel_tol") = 1e-10);
    m.def("kappa_tilde", &kappa_tilde, py::arg("d"), py::arg("rel_tol") = 1e-11);

    py::class_<QuadratureSurface>(m, "QuadratureSurface")
        .def_property_readonly("resolution",
                               [](const QuadratureSurface& s) { return s.resolution; })
        .def_property_readonly("nodes",
                               [](const QuadratureSurface& s) { return to_rows(s.nodes); })
        .def_property_readonly(
            "normals", [](const QuadratureSurface& s) { return to_rows(s.normals); })
        .def_property_readonly(
            "weights", [](const QuadratureSurface& s) { return s.weights; })
        .def_property_readonly("lipschitz_estimate",
                               [](const QuadratureSurface& s) {
                                   return s.lipschitz_estimate;
                               })
        .def("area", &QuadratureSurface::area)
        .def("inside",
             [](const QuadratureSurface& s, double x, double y, double z) {
                 return s.inside({x, y, z});
             })
        .def("__len__", [](const QuadratureSurface& s) { return s.size(); });

    m.def("make_sphere", &make_sphere, py::arg("radius"), py::arg("resolution"));
    m.def("make_ellipsoid", &make_ellipsoid, py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("resolution"));
    m.def("make_perturbed_sphere", &make_perturbed_sphere, py::arg("eps"),
          py::arg("mode"), py::arg("resolution"));
    m.def("surface_to_json",
          [](const QuadratureSurface& s) { return surface_to_json(s).dump(); });
    m.def("surface_from_json", [](const std::string& text) {
        return surface_from_json(nlohmann::json::parse(text));
    });

    py::class_<VolumeSampler>(m, "VolumeSampler")
        .def_readonly("trunc_radius", &VolumeSampler::trunc_radius)
        .def_readonly("inside_volume", &VolumeSampler::inside_volume)
        .def_readonly("inside_volume_se", &VolumeSampler::inside_volume_se)
        .def_readonly("shell_volume", &VolumeSampler::shell_volume)
        .def_readonly("seed", &VolumeSampler::seed)
        .def_property_readonly("inside_points",
                               [](const VolumeSampler& v) {
                                   return to_rows(v.inside_points);
                               })
        .def_property_readonly("outside_points", [](const VolumeSampler& v) {
            return to_rows(v.outside_points);
        });
    m.def("sample_volume", &sample_volume, py::arg("surface"),
          py::arg("trunc_radius"), py::arg("n_inside"), py::arg("n_outside"),
          py::arg("seed"));
    m.def("auto_trunc_radius",
          [](const QuadratureSurface& s, const std::vector<double>& a, double tol) {
              return auto_trunc_radius(s, a, tol);
          },
          py::arg("surface"), py::arg("a_values"), py::arg("tol") = 2e-2);

    py::class_<FunctionalValue>(m, "FunctionalValue")
        .def_readonly("value", &FunctionalValue::value)
        .def_readonly("err", &FunctionalValue::err)
        .def_readonly("n_terms", &FunctionalValue::n_terms)
        .def_readonly("tag", &FunctionalValue::tag)
        .def("__repr__", [](const FunctionalValue& v) {
            return "FunctionalValue(" + v.tag + "=" + std::to_string(v.value) +
                   " +- " + std::to_string(v.err) + ")";
        });

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("lhs", &InequalityReport::lhs)
        .def_readonly("rhs", &InequalityReport::rhs)
        .def_readonly("slack", &InequalityReport::slack)
        .def_readonly("tol", &InequalityReport::tol)
        .def_readonly("satisfied", &InequalityReport::satisfied)
        .def_readonly("equality_case", &InequalityReport::equality_case)
        .def_readonly("exploratory", &InequalityReport::exploratory);

    m.def("gagliardo_seminorm_sq", &gagliardo_seminorm_sq, py::arg("surface"),
          py::arg("r"));
    m.def("abs_seminorm", &abs_seminorm, py::arg("surface"));
    m.def("frac_fundamental_form_sq", &frac_fundamental_form_sq,
          py::arg("surface"), py::arg("s"));
    m.def("nonlocal_perimeter_boundary", &nonlocal_perimeter_boundary,
          py::arg("surface"), py::arg("ctx"));
    m.def("nonlocal_perimeter_mc", &nonlocal_perimeter_mc, py::arg("sampler"),
          py::arg("ctx"));
    m.def("solid_f_term", &solid_f_term, py::arg("sampler"), py::arg("ctx"));
    m.def("phi_boundary_term", &phi_boundary_term, py::arg("surface"),
          py::arg("ctx"));
    m.def("phi", &phi, py::arg("surface"), py::arg("sampler"), py::arg("ctx"));
    m.def("phi_derivative", &phi_derivative, py::arg("surface"),
          py::arg("sampler"), py::arg("ctx"));
    m.def("check_theorem_1_1", &check_theorem_1_1, py::arg("surface"));
    m.def("check_inequality_2", &check_inequality_2, py::arg("surface"));
    m.def("check_theorem_2_3", &check_theorem_2_3, py::arg("surface"),
          py::arg("sampler"), py::arg("ctx"));
    m.def("check_conjecture_5", &check_conjecture_5, py::arg("surface"),
          py::arg("r"));
    m.def("check_identity_18", &check_identity_18, py::arg("surface"),
          py::arg("sampler"), py::arg("ctx"));
    m.def("a_max_for", &a_max_for, py::arg("surface"));

    m.def("run_sweep",
          [](const QuadratureSurface& surface, std::vector<double> a_grid,
             std::uint64_t seed, int mc_budget, double trunc_radius) {
              ScenarioConfig cfg;
              cfg.shape = surface.shape;
              cfg.resolution = surface.resolution;
              if (!a_grid.empty()) cfg.a_grid = std::move(a_grid);
              cfg.seed = seed;
              cfg.mc_budget = mc_budget;
              cfg.trunc_radius = trunc_radius;
              return sweep_dict(cfg);
          },
          py::arg("surface"), py::arg("a_grid") = std::vector<double>{},
          py::arg("seed") = 42, py::arg("mc_budget") = 200000,
          py::arg("trunc_radius") = 0.0);

    m.attr("__version__") = kVersion;
}
