// Command-line front end: run simulations, print settling-time bounds, and
// sweep initial-condition disagreement scales from scenario files.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "salvo/errors.hpp"
#include "salvo/scenario.hpp"
#include "salvo/sim.hpp"
#include "salvo/sweep.hpp"
#include "salvo/trajectory.hpp"

namespace {

struct CommonOptions {
    std::string scenario;
    std::string out_dir = ".";
    std::string control_mode;
    double dt = 0.0;
    std::vector<std::string> drop_edges;
    double settle_xi_r = 0.0;
    double settle_xi_vr = 0.0;
    double settle_heading = 0.0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("scenario", opt.scenario, "scenario file or built-in name")->required();
    cmd->add_option("--out", opt.out_dir, "output directory for artifacts");
    cmd->add_option("--control-mode", opt.control_mode,
                    "neighbor-control resolution: delayed | fixed-point")
        ->check(CLI::IsMember({"delayed", "fixed-point"}));
    cmd->add_option("--dt", opt.dt, "integration step override, s");
    cmd->add_option("--drop-edge", opt.drop_edges,
                    "inject an edge failure, format i,j@t (repeatable)");
    cmd->add_option("--settle-xi-r", opt.settle_xi_r, "settling threshold for xi_r, m");
    cmd->add_option("--settle-xi-vr", opt.settle_xi_vr, "settling threshold for xi_vr, m/s");
    cmd->add_option("--settle-heading", opt.settle_heading,
                    "settling threshold for heading error, rad");
}

salvo::Scenario load_with_options(const CommonOptions& opt) {
    salvo::Scenario scenario = salvo::load_scenario(opt.scenario);
    if (!opt.control_mode.empty()) {
        scenario.mode = opt.control_mode == "delayed" ? salvo::ControlResolutionMode::delayed
                                                      : salvo::ControlResolutionMode::fixed_point;
    }
    if (opt.dt != 0.0) {
        if (opt.dt < 0.0) {
            throw salvo::ValidationError("--dt must be positive");
        }
        scenario.dt = opt.dt;
    }
    if (opt.settle_xi_r > 0.0) {
        scenario.settling.xi_r = opt.settle_xi_r;
    }
    if (opt.settle_xi_vr > 0.0) {
        scenario.settling.xi_vr = opt.settle_xi_vr;
    }
    if (opt.settle_heading > 0.0) {
        scenario.settling.heading = opt.settle_heading;
    }
    for (const std::string& spec : opt.drop_edges) {
        const size_t comma = spec.find(',');
        const size_t at = spec.find('@');
        if (comma == std::string::npos || at == std::string::npos || at < comma) {
            throw salvo::ValidationError("--drop-edge: expected i,j@t, got \"" + spec + "\"");
        }
        const int i = std::stoi(spec.substr(0, comma));
        const int j = std::stoi(spec.substr(comma + 1, at - comma - 1));
        const double t = std::stod(spec.substr(at + 1));
        salvo::drop_edge(scenario, i, j, t);
    }
    scenario.validate();
    return scenario;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw salvo::ValidationError("cannot write " + path.string());
    }
    return out;
}

void print_reference(const salvo::ReferenceValues& ref, std::ostream& out) {
    auto line = [&](const char* label, const std::optional<double>& v, const char* unit) {
        if (v) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "  %-28s %.3f %s\n", label, *v, unit);
            out << buf;
        }
    };
    if (ref.arrival || ref.settle_xi_r || ref.settle_xi_vr || ref.settle_heading ||
        ref.consensus_bound || ref.transverse_bound) {
        out << "reference values:\n";
        line("arrival", ref.arrival, "s");
        line("settle xi_r", ref.settle_xi_r, "s");
        line("settle xi_vr", ref.settle_xi_vr, "s");
        line("settle heading", ref.settle_heading, "s");
        line("consensus bound (T2)", ref.consensus_bound, "s");
        line("transverse bound (T3)", ref.transverse_bound, "s");
    }
}

int cmd_run(const CommonOptions& opt) {
    const salvo::Scenario scenario = load_with_options(opt);
    const auto [result, log] = salvo::run(scenario.sim_config(), scenario.agents);

    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);
    {
        auto csv = open_out(dir / "trajectory.csv");
        salvo::write_csv(log, csv);
    }
    {
        auto kv = open_out(dir / "result.kv");
        salvo::write_kv(result, kv);
    }
    std::ostringstream summary;
    salvo::write_summary(result, scenario.sim_config(), summary);
    print_reference(scenario.reference, summary);
    {
        auto file = open_out(dir / "summary.txt");
        file << summary.str();
    }
    std::cout << summary.str();
    std::cout << "artifacts: " << (dir / "trajectory.csv").string() << ", "
              << (dir / "summary.txt").string() << ", " << (dir / "result.kv").string() << "\n";
    return 0;
}

int cmd_bounds(const CommonOptions& opt) {
    const salvo::Scenario scenario = load_with_options(opt);
    const int n = scenario.schedule.agent_count();
    const salvo::BoundReport report = salvo::compute_bounds(scenario.guidance, n);
    auto name = [](salvo::BoundFormula f) {
        return f == salvo::BoundFormula::conservative ? "conservative" : "direct";
    };
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "T1 (surface reaching)         %.4f s  [%s]\n"
                  "T2 (range/velocity consensus) %.4f s  [%s]\n"
                  "T3 (transverse velocity)      %.4f s  [%s]\n",
                  report.reaching, name(report.reaching_formula), report.consensus,
                  name(report.consensus_formula), report.transverse,
                  name(report.transverse_formula));
    std::cout << "settling-time bounds for " << n << " agents:\n" << buf;
    print_reference(scenario.reference, std::cout);
    return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::string& scales_text) {
    const salvo::Scenario scenario = load_with_options(opt);
    std::vector<double> scales;
    std::stringstream ss(scales_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        scales.push_back(std::stod(item));
    }
    if (scales.empty()) {
        throw salvo::ValidationError("sweep: --scales must list at least one factor");
    }
    const std::vector<salvo::SweepRow> rows = salvo::run_scale_sweep(scenario, scales);
    std::ostringstream table;
    salvo::write_sweep_table(rows, table);
    std::filesystem::create_directories(opt.out_dir);
    {
        auto file = open_out(std::filesystem::path(opt.out_dir) / "sweep.txt");
        file << table.str();
    }
    std::cout << table.str();
    for (const salvo::SweepRow& row : rows) {
        if (!row.pass) {
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic multi-vehicle fixed-time cooperative guidance simulator"};
    app.require_subcommand(1);

    CommonOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "simulate a scenario and write CSV + summary");
    add_common(run_cmd, run_opt);

    CommonOptions bounds_opt;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "print analytic settling-time bounds for a scenario");
    add_common(bounds_cmd, bounds_opt);

    CommonOptions sweep_opt;
    std::string scales = "1,2,3,5";
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "re-run with scaled initial disagreement and tabulate settling vs the bound");
    add_common(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--scales", scales, "comma-separated disagreement scale factors");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run_opt);
        }
        if (bounds_cmd->parsed()) {
            return cmd_bounds(bounds_opt);
        }
        return cmd_sweep(sweep_opt, scales);
    } catch (const salvo::NumericError& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 2;
    } catch (const salvo::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
