#pragma once

#include "nlperim/functionals.hpp"
#include "nlperim/surface.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlperim {

inline constexpr const char* kVersion = "0.1.0";

// Per-check decision thresholds; all reports carry these so regressions are
// attributable.
struct Tolerances {
    double kernel_rel_tol = 1e-10;   // Bessel/kernel evaluations
    double identity_rel_tol = 1e-4;  // finite-difference identity residuals
    double constants_abs_tol = 1e-6; // kappa, kappa_tilde closed-form targets
    double kappa_route_rel = 1e-8;   // agreement of the two kappa integrals
    double ball_constancy_rel = 1e-2;
    double sigma_factor = 3.0;       // error multiplier for satisfied/equality
};

struct ScenarioConfig {
    ShapeDescriptor shape;
    int resolution = 96;
    std::vector<double> a_grid = {0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> r_grid = {0.25, 0.5, 0.75};
    std::uint64_t seed = 42;
    int mc_budget = 200000;
    double trunc_radius = 0.0; // 0 = auto (doubling rule on the G_a tail)
    Tolerances tol;
    std::string format = "csv"; // csv | json
};

struct SweepRow {
    double a = 0.0;
    double phi = 0.0;
    double phi_boundary_term = 0.0;
    double phi_solid_term = 0.0;
    double phi_derivative = 0.0;
    double lambda = 0.0;
    double slack_thm23 = 0.0;
    double phi_err = 0.0;
    double lambda_err = 0.0;
    double phi_derivative_err = 0.0;
};

struct SweepReport {
    std::string config_hash;
    std::string version;
    std::uint64_t seed = 0;
    double trunc_radius = 0.0;
    std::vector<SweepRow> rows;
    std::string curve_check;  // "constancy" (balls) or "strict_decrease"
    bool curve_ok = false;
    bool rows_ok = false;     // per-row invariants (thm23 sign, perimeter bound)
    bool ok() const { return curve_ok && rows_ok; }
};

struct CheckRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double err = 0.0; // decision threshold actually used
    bool satisfied = false;
    bool equality_case = false;
    bool exploratory = false;
};

// Named verification scenarios.
SweepReport run_sweep(const ScenarioConfig& cfg);

// checks drawn from {thm11, ineq2, thm23, id17, id18, lemma21, lemma31,
// constants, conjecture5}; unknown names raise config_error.
std::vector<CheckRecord> run_checks(const ScenarioConfig& cfg,
                                    const std::vector<std::string>& checks);

std::string config_hash(const ScenarioConfig& cfg);
std::string shape_spec_string(const ShapeDescriptor& shape);

void write_sweep_csv(std::ostream& os, const ScenarioConfig& cfg,
                     const SweepReport& report);
nlohmann::json sweep_to_json(const ScenarioConfig& cfg, const SweepReport& report);
void write_checks_csv(std::ostream& os, const ScenarioConfig& cfg,
                      const std::vector<CheckRecord>& records);
nlohmann::json checks_to_json(const ScenarioConfig& cfg,
                              const std::vector<CheckRecord>& records);

} // namespace nlperim
