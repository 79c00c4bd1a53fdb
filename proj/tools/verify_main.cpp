#include "nlperim/errors.hpp"
#include "nlperim/report.hpp"
#include "nlperim/surface.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nlperim;

ShapeDescriptor parse_shape(const std::string& spec) {
    ShapeDescriptor d;
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    std::vector<std::pair<std::string, double>> kv;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw config_error("bad shape parameter '" + item + "'");
        kv.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    }
    auto get = [&](const std::string& key, double dflt,
                   bool required = false) -> double {
        for (const auto& [k, v] : kv)
            if (k == key) return v;
        if (required) throw config_error("shape is missing parameter '" + key + "'");
        return dflt;
    };
    if (kind == "sphere") {
        d.kind = ShapeDescriptor::Kind::sphere;
        d.radius = get("R", 1.0);
    } else if (kind == "ellipsoid") {
        d.kind = ShapeDescriptor::Kind::ellipsoid;
        d.ax = get("a", 1.0, true);
        d.by = get("b", 1.0, true);
        d.cz = get("c", 1.0, true);
    } else if (kind == "perturbed") {
        d.kind = ShapeDescriptor::Kind::perturbed;
        d.eps = get("eps", 0.0, true);
        d.mode = static_cast<int>(get("mode", 2.0));
    } else {
        throw config_error("unknown shape '" + kind +
                           "' (expected sphere | ellipsoid | perturbed)");
    }
    return d;
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << content;
    if (!os) throw io_error("write to '" + path + "' failed");
}

struct CommonArgs {
    std::string shape = "sphere:R=1";
    int resolution = 96;
    std::string a_grid, r_grid;
    std::uint64_t seed = 42;
    int mc_budget = 200000;
    double trunc_radius = 0.0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--shape", a.shape,
                    "sphere:R=1 | ellipsoid:a=2,b=1,c=1 | perturbed:eps=0.2,mode=2");
    cmd->add_option("--resolution", a.resolution, "latitude nodes N (2N longitudes)");
    cmd->add_option("--a-grid", a.a_grid, "comma list of Helmholtz parameters");
    cmd->add_option("--r-grid", a.r_grid, "comma list of Gagliardo orders in [0,1)");
    cmd->add_option("--seed", a.seed, "Monte Carlo seed");
    cmd->add_option("--mc-budget", a.mc_budget, "points per Monte Carlo set");
    cmd->add_option("--trunc-radius", a.trunc_radius,
                    "complement truncation radius (0 = auto)");
    cmd->add_option("--out", a.out, "output path (default: stdout)");
    cmd->add_option("--format", a.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

ScenarioConfig to_config(const CommonArgs& a) {
    ScenarioConfig cfg;
    cfg.shape = parse_shape(a.shape);
    cfg.resolution = a.resolution;
    if (!a.a_grid.empty()) cfg.a_grid = parse_grid(a.a_grid);
    if (!a.r_grid.empty()) cfg.r_grid = parse_grid(a.r_grid);
    cfg.seed = a.seed;
    cfg.mc_budget = a.mc_budget;
    cfg.trunc_radius = a.trunc_radius;
    cfg.format = a.format;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "verify: nonlocal-perimeter functionals on closed surfaces.\n"
        "CSV sweep columns (in order): a, phi, phi_boundary_term,\n"
        "phi_solid_term, phi_derivative, lambda, slack_thm23.\n"
        "CSV check columns: name, lhs, rhs, slack, err, satisfied,\n"
        "equality_case, exploratory.\n"
        "Exit codes: 0 ok, 2 check failed, 3 configuration error, 4 I/O error.\n"
        "Environment: NLPERIM_THREADS overrides the worker count."};
    app.require_subcommand(1);

    CommonArgs sweep_args, check_args, export_args;
    std::string checks_csv = "thm11,ineq2,thm23,id17,id18,lemma21,lemma31,constants";

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate the Phi curve over a");
    add_common(sweep, sweep_args);
    CLI::App* check = app.add_subcommand("check", "run named verification checks");
    add_common(check, check_args);
    check->add_option("--checks", checks_csv,
                      "subset of thm11,ineq2,thm23,id17,id18,lemma21,lemma31,"
                      "constants,conjecture5");
    CLI::App* exp = app.add_subcommand("export", "write the surface JSON schema");
    add_common(exp, export_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (sweep->parsed()) {
            const ScenarioConfig cfg = to_config(sweep_args);
            const SweepReport rep = run_sweep(cfg);
            std::string content;
            if (cfg.format == "json") {
                content = sweep_to_json(cfg, rep).dump(2) + "\n";
            } else {
                std::ostringstream os;
                write_sweep_csv(os, cfg, rep);
                content = os.str();
            }
            write_output(sweep_args.out, content);
            return rep.ok() ? 0 : 2;
        }
        if (check->parsed()) {
            const ScenarioConfig cfg = to_config(check_args);
            const auto records = run_checks(cfg, parse_names(checks_csv));
            std::string content;
            if (cfg.format == "json") {
                content = checks_to_json(cfg, records).dump(2) + "\n";
            } else {
                std::ostringstream os;
                write_checks_csv(os, cfg, records);
                content = os.str();
            }
            write_output(check_args.out, content);
            for (const auto& r : records)
                if (!r.exploratory && !r.satisfied) return 2;
            return 0;
        }
        if (exp->parsed()) {
            const ScenarioConfig cfg = to_config(export_args);
            const QuadratureSurface s = make_surface(cfg.shape, cfg.resolution);
            write_output(export_args.out, surface_to_json(s).dump() + "\n");
            return 0;
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
