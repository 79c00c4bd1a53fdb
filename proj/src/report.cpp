#include "nlperim/report.hpp"

#include "nlperim/errors.hpp"
#include "nlperim/identity_checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>
#include <ostream>
#include <sstream>

namespace nlperim {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string timestamp_utc() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void validate_grids(const ScenarioConfig& cfg) {
    if (cfg.a_grid.empty()) throw config_error("a_grid must not be empty");
    for (std::size_t i = 0; i < cfg.a_grid.size(); ++i) {
        if (!(cfg.a_grid[i] > 0.0)) throw config_error("a_grid values must be > 0");
        if (i > 0 && !(cfg.a_grid[i] > cfg.a_grid[i - 1]))
            throw config_error("a_grid must be sorted ascending");
    }
    for (double r : cfg.r_grid)
        if (!(r >= 0.0 && r < 1.0))
            throw config_error("r_grid values must lie in [0, 1)");
    if (cfg.mc_budget < 1000) throw config_error("mc_budget must be >= 1000");
}

VolumeSampler make_sampler(const ScenarioConfig& cfg, const QuadratureSurface& s) {
    const double R = cfg.trunc_radius > 0.0
                         ? cfg.trunc_radius
                         : auto_trunc_radius(s, cfg.a_grid);
    return sample_volume(s, R, cfg.mc_budget, cfg.mc_budget, cfg.seed);
}

CheckRecord record_from_report(const std::string& name, const InequalityReport& r) {
    CheckRecord c;
    c.name = name;
    c.lhs = r.lhs.value;
    c.rhs = r.rhs.value;
    c.slack = r.slack;
    c.err = r.tol;
    c.satisfied = r.satisfied;
    c.equality_case = r.equality_case;
    c.exploratory = r.exploratory;
    return c;
}

CheckRecord residual_record(const std::string& name, double residual, double tol) {
    CheckRecord c;
    c.name = name;
    c.lhs = residual;
    c.rhs = tol;
    c.slack = tol - residual;
    c.err = tol;
    c.satisfied = residual <= tol;
    c.equality_case = c.satisfied;
    return c;
}

std::string a_tag(double a) {
    std::ostringstream os;
    os << a;
    return os.str();
}

} // namespace

std::string shape_spec_string(const ShapeDescriptor& shape) {
    std::ostringstream os;
    switch (shape.kind) {
        case ShapeDescriptor::Kind::sphere:
            os << "sphere:R=" << fmt12(shape.radius);
            break;
        case ShapeDescriptor::Kind::ellipsoid:
            os << "ellipsoid:a=" << fmt12(shape.ax) << ",b=" << fmt12(shape.by)
               << ",c=" << fmt12(shape.cz);
            break;
        case ShapeDescriptor::Kind::perturbed:
            os << "perturbed:eps=" << fmt12(shape.eps) << ",mode=" << shape.mode;
            break;
    }
    return os.str();
}

std::string config_hash(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << shape_spec_string(cfg.shape) << "|N=" << cfg.resolution << "|a=";
    for (double a : cfg.a_grid) os << fmt12(a) << ",";
    os << "|r=";
    for (double r : cfg.r_grid) os << fmt12(r) << ",";
    os << "|seed=" << cfg.seed << "|mc=" << cfg.mc_budget
       << "|R=" << fmt12(cfg.trunc_radius) << "|fmt=" << cfg.format
       << "|tol=" << fmt12(cfg.tol.kernel_rel_tol) << ","
       << fmt12(cfg.tol.identity_rel_tol) << "," << fmt12(cfg.tol.constants_abs_tol)
       << "," << fmt12(cfg.tol.kappa_route_rel) << ","
       << fmt12(cfg.tol.ball_constancy_rel) << "," << fmt12(cfg.tol.sigma_factor)
       << "|v=" << kVersion;
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

SweepReport run_sweep(const ScenarioConfig& cfg) {
    validate_grids(cfg);
    const QuadratureSurface s = make_surface(cfg.shape, cfg.resolution);
    const double cap = a_max_for(s);
    if (cfg.a_grid.back() > cap)
        throw config_error("sweep: a_grid exceeds the regime cap a_max = " +
                           std::to_string(cap) + " at resolution " +
                           std::to_string(cfg.resolution));
    const VolumeSampler vs = make_sampler(cfg, s);

    SweepReport rep;
    rep.config_hash = config_hash(cfg);
    rep.version = kVersion;
    rep.seed = cfg.seed;
    rep.trunc_radius = vs.trunc_radius;
    rep.rows_ok = true;

    for (double a : cfg.a_grid) {
        const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
        const FunctionalValue w = phi_boundary_term(s, ctx);
        const FunctionalValue f = solid_f_term(vs, ctx);
        const FunctionalValue d = phi_derivative(s, vs, ctx);
        const FunctionalValue lam = nonlocal_perimeter_boundary(s, ctx);
        SweepRow row;
        row.a = a;
        row.phi_boundary_term = w.value;
        row.phi_solid_term = f.value;
        row.phi = w.value + f.value;
        row.phi_err = std::sqrt(w.err * w.err + f.err * f.err);
        row.phi_derivative = d.value;
        row.phi_derivative_err = d.err;
        row.lambda = lam.value;
        row.lambda_err = lam.err;
        row.slack_thm23 = -d.value;
        rep.rows.push_back(row);

        // Per-row invariants: Theorem 2.3 sign and the trivial perimeter bound.
        const double k = cfg.tol.sigma_factor;
        if (!(row.slack_thm23 >= -k * d.err)) rep.rows_ok = false;
        const double a2l = a * a * lam.value;
        const double upper = vs.inside_volume + k * vs.inside_volume_se +
                             k * a * a * lam.err;
        if (!(a2l > 0.0 && a2l <= upper)) rep.rows_ok = false;
    }

    if (cfg.shape.is_ball()) {
        rep.curve_check = "constancy";
        double lo = rep.rows.front().phi, hi = lo;
        for (const auto& r : rep.rows) {
            lo = std::min(lo, r.phi);
            hi = std::max(hi, r.phi);
        }
        const double mid = 0.5 * (lo + hi);
        rep.curve_ok = (hi - lo) <= cfg.tol.ball_constancy_rel * std::abs(mid);
    } else {
        rep.curve_check = "strict_decrease";
        rep.curve_ok = true;
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (!(rep.rows[i].phi < rep.rows[i - 1].phi)) rep.curve_ok = false;
    }
    return rep;
}

std::vector<CheckRecord> run_checks(const ScenarioConfig& cfg,
                                    const std::vector<std::string>& checks) {
    validate_grids(cfg);
    for (const auto& c : checks) {
        static const char* known[] = {"thm11",   "ineq2",   "thm23",
                                      "id17",    "id18",    "lemma21",
                                      "lemma31", "constants", "conjecture5"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                return c == k;
            }) == std::end(known))
            throw config_error("unknown check name: " + c);
    }
    auto wants = [&](const char* name) {
        return std::find(checks.begin(), checks.end(), name) != checks.end();
    };

    std::vector<CheckRecord> out;
    const bool needs_surface = wants("thm11") || wants("ineq2") || wants("thm23") ||
                               wants("id17") || wants("id18") || wants("conjecture5");
    const bool needs_sampler = wants("thm23") || wants("id17") || wants("id18");

    QuadratureSurface s;
    VolumeSampler vs;
    if (needs_surface) s = make_surface(cfg.shape, cfg.resolution);
    if (needs_sampler) vs = make_sampler(cfg, s);

    if (wants("constants")) {
        const KernelValue k3 = kappa(3, cfg.tol.kappa_route_rel);
        const KernelValue kt3 = kappa_tilde(3);
        const double k3_target = 1.0 / (4.0 * std::numbers::pi);
        {
            CheckRecord c;
            c.name = "constants_kappa3";
            c.lhs = k3.value;
            c.rhs = k3_target;
            c.slack = k3.value - k3_target;
            c.err = cfg.tol.constants_abs_tol;
            c.satisfied = std::abs(c.slack) <= c.err;
            c.equality_case = c.satisfied;
            out.push_back(c);
        }
        {
            CheckRecord c;
            c.name = "constants_kappa_tilde3";
            c.lhs = kt3.value;
            c.rhs = 4.0 * std::numbers::pi;
            c.slack = c.lhs - c.rhs;
            c.err = cfg.tol.constants_abs_tol;
            c.satisfied = std::abs(c.slack) <= c.err;
            c.equality_case = c.satisfied;
            out.push_back(c);
        }
        const KernelValue k4 = kappa(4, cfg.tol.kappa_route_rel);
        out.push_back(residual_record("constants_kappa4_routes",
                                      k4.abs_err / std::abs(k4.value),
                                      cfg.tol.kappa_route_rel));
    }

    if (wants("lemma21")) {
        const double pts[] = {0.5, 1.0, 2.0};
        for (int d : {3, 4}) {
            double worst15 = 0.0, worst16 = 0.0;
            for (double a : pts)
                for (double r : pts) {
                    worst15 = std::max(worst15, eq15_residual(d, a, r));
                    worst16 = std::max(worst16, eq16_residual(d, a, r));
                }
            out.push_back(residual_record("lemma21_eq15_d" + std::to_string(d),
                                          worst15, cfg.tol.identity_rel_tol));
            out.push_back(residual_record("lemma21_eq16_d" + std::to_string(d),
                                          worst16, cfg.tol.identity_rel_tol));
        }
    }

    if (wants("lemma31")) {
        const double pts[] = {0.5, 1.0, 2.0};
        for (int d : {3, 4}) {
            double worst32 = 0.0, worst33 = 0.0;
            for (double a : pts)
                for (double r : pts) {
                    worst32 = std::max(worst32, eq32_residual(d, a, r));
                    worst33 = std::max(worst33, eq33_residual(d, a, r));
                }
            out.push_back(residual_record("lemma31_eq32_d" + std::to_string(d),
                                          worst32, cfg.tol.identity_rel_tol));
            out.push_back(residual_record("lemma31_eq33_d" + std::to_string(d),
                                          worst33, cfg.tol.identity_rel_tol));
        }
        // F > 0 at sampled points, and int F_a dx independent of a (d = 3).
        double fmin = std::numeric_limits<double>::infinity();
        for (double a : pts)
            for (double r : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
                fmin = std::min(fmin, kernel_f(ctx, r).value);
            }
        CheckRecord fp;
        fp.name = "lemma31_f_positive";
        fp.lhs = fmin;
        fp.rhs = 0.0;
        fp.slack = fmin;
        fp.err = 0.0;
        fp.satisfied = fmin > 0.0;
        fp.equality_case = false;
        out.push_back(fp);

        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double a : pts) {
            const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
            const double v = f_l1_norm(ctx).value;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.push_back(residual_record("lemma31_f_l1_drift", (hi - lo) / hi,
                                      cfg.tol.identity_rel_tol));
    }

    if (wants("thm11")) out.push_back(record_from_report("thm11", check_theorem_1_1(s)));
    if (wants("ineq2")) out.push_back(record_from_report("ineq2", check_inequality_2(s)));

    if (wants("thm23"))
        for (double a : cfg.a_grid) {
            const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
            out.push_back(record_from_report("thm23[a=" + a_tag(a) + "]",
                                             check_theorem_2_3(s, vs, ctx)));
        }

    if (wants("id17"))
        for (double a : cfg.a_grid) {
            const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
            const FunctionalValue lb = nonlocal_perimeter_boundary(s, ctx);
            const FunctionalValue lm = nonlocal_perimeter_mc(vs, ctx);
            CheckRecord c;
            c.name = "id17[a=" + a_tag(a) + "]";
            c.lhs = lb.value;
            c.rhs = lm.value;
            c.slack = lb.value - lm.value;
            c.err = cfg.tol.sigma_factor *
                    std::sqrt(lb.err * lb.err + lm.err * lm.err);
            c.satisfied = std::abs(c.slack) <= c.err;
            c.equality_case = c.satisfied;
            out.push_back(c);
        }

    if (wants("id18"))
        for (double a : cfg.a_grid) {
            const KernelContext ctx(3, a, cfg.tol.kernel_rel_tol);
            const FunctionalValue res = check_identity_18(s, vs, ctx);
            CheckRecord c;
            c.name = "id18[a=" + a_tag(a) + "]";
            c.lhs = res.value;
            c.rhs = 0.0;
            c.slack = res.value;
            c.err = cfg.tol.sigma_factor * res.err;
            c.satisfied = std::abs(res.value) <= c.err;
            c.equality_case = c.satisfied;
            out.push_back(c);
        }

    if (wants("conjecture5"))
        for (double r : cfg.r_grid) {
            if (!(r > 0.0 && r < 1.0)) continue; // endpoint handled by thm11
            out.push_back(record_from_report("conjecture5[r=" + a_tag(r) + "]",
                                             check_conjecture_5(s, r)));
        }

    return out;
}

void write_sweep_csv(std::ostream& os, const ScenarioConfig& cfg,
                     const SweepReport& rep) {
    os << "# nlperim sweep\n";
    os << "# version=" << rep.version << "\n";
    os << "# config_hash=" << rep.config_hash << "\n";
    os << "# seed=" << rep.seed << "\n";
    os << "# shape=" << shape_spec_string(cfg.shape) << "\n";
    os << "# resolution=" << cfg.resolution << "\n";
    os << "# mc_budget=" << cfg.mc_budget << "\n";
    os << "# trunc_radius=" << fmt12(rep.trunc_radius) << "\n";
    os << "# kernel_rel_tol=" << fmt12(cfg.tol.kernel_rel_tol)
       << " identity_rel_tol=" << fmt12(cfg.tol.identity_rel_tol)
       << " constants_abs_tol=" << fmt12(cfg.tol.constants_abs_tol)
       << " ball_constancy_rel=" << fmt12(cfg.tol.ball_constancy_rel)
       << " sigma_factor=" << fmt12(cfg.tol.sigma_factor) << "\n";
    os << "# curve_check=" << rep.curve_check << " curve_ok=" << rep.curve_ok
       << " rows_ok=" << rep.rows_ok << "\n";
    os << "# timestamp=" << timestamp_utc() << "\n";
    os << "a,phi,phi_boundary_term,phi_solid_term,phi_derivative,lambda,"
          "slack_thm23\n";
    for (const auto& r : rep.rows) {
        os << fmt12(r.a) << "," << fmt12(r.phi) << "," << fmt12(r.phi_boundary_term)
           << "," << fmt12(r.phi_solid_term) << "," << fmt12(r.phi_derivative)
           << "," << fmt12(r.lambda) << "," << fmt12(r.slack_thm23) << "\n";
    }
}

nlohmann::json sweep_to_json(const ScenarioConfig& cfg, const SweepReport& rep) {
    nlohmann::json j;
    j["kind"] = "sweep";
    j["version"] = rep.version;
    j["config_hash"] = rep.config_hash;
    j["seed"] = rep.seed;
    j["shape"] = shape_spec_string(cfg.shape);
    j["resolution"] = cfg.resolution;
    j["mc_budget"] = cfg.mc_budget;
    j["trunc_radius"] = rep.trunc_radius;
    j["tolerances"] = {{"kernel_rel_tol", cfg.tol.kernel_rel_tol},
                       {"identity_rel_tol", cfg.tol.identity_rel_tol},
                       {"constants_abs_tol", cfg.tol.constants_abs_tol},
                       {"kappa_route_rel", cfg.tol.kappa_route_rel},
                       {"ball_constancy_rel", cfg.tol.ball_constancy_rel},
                       {"sigma_factor", cfg.tol.sigma_factor}};
    j["curve_check"] = rep.curve_check;
    j["curve_ok"] = rep.curve_ok;
    j["rows_ok"] = rep.rows_ok;
    j["timestamp"] = timestamp_utc();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"a", r.a},
                        {"phi", r.phi},
                        {"phi_boundary_term", r.phi_boundary_term},
                        {"phi_solid_term", r.phi_solid_term},
                        {"phi_derivative", r.phi_derivative},
                        {"lambda", r.lambda},
                        {"slack_thm23", r.slack_thm23},
                        {"phi_err", r.phi_err},
                        {"lambda_err", r.lambda_err},
                        {"phi_derivative_err", r.phi_derivative_err}});
    }
    j["rows"] = rows;
    return j;
}

void write_checks_csv(std::ostream& os, const ScenarioConfig& cfg,
                      const std::vector<CheckRecord>& records) {
    os << "# nlperim check\n";
    os << "# version=" << kVersion << "\n";
    os << "# config_hash=" << config_hash(cfg) << "\n";
    os << "# seed=" << cfg.seed << "\n";
    os << "# shape=" << shape_spec_string(cfg.shape) << "\n";
    os << "# resolution=" << cfg.resolution << "\n";
    os << "# timestamp=" << timestamp_utc() << "\n";
    os << "name,lhs,rhs,slack,err,satisfied,equality_case,exploratory\n";
    for (const auto& c : records) {
        os << c.name << "," << fmt12(c.lhs) << "," << fmt12(c.rhs) << ","
           << fmt12(c.slack) << "," << fmt12(c.err) << "," << (c.satisfied ? 1 : 0)
           << "," << (c.equality_case ? 1 : 0) << "," << (c.exploratory ? 1 : 0)
           << "\n";
    }
}

nlohmann::json checks_to_json(const ScenarioConfig& cfg,
                              const std::vector<CheckRecord>& records) {
    nlohmann::json j;
    j["kind"] = "check";
    j["version"] = kVersion;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    j["shape"] = shape_spec_string(cfg.shape);
    j["resolution"] = cfg.resolution;
    j["timestamp"] = timestamp_utc();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : records) {
        rows.push_back({{"name", c.name},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"slack", c.slack},
                        {"err", c.err},
                        {"satisfied", c.satisfied},
                        {"equality_case", c.equality_case},
                        {"exploratory", c.exploratory}});
    }
    j["records"] = rows;
    return j;
}

} // namespace nlperim
