#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI/CLI.hpp>

#include "pnm/app/commands.hpp"
#include "pnm/app/config.hpp"
#include "pnm/app/experiment.hpp"
#include "pnm/edge_list.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Errors go to stderr and, when possible, to the requested output file so
// scripts can read a machine-readable reason.
int report_failure(const std::exception& e, const std::optional<fs::path>& out) {
    const json body = pnm::app::error_json(e);
    std::cerr << body.dump() << '\n';
    if (out) {
        try {
            pnm::app::write_json_file(*out, body);
        } catch (...) {
        }
    }
    if (const auto* err = dynamic_cast<const pnm::Error*>(&e)) {
        return pnm::app::exit_code_for(err->code());
    }
    return pnm::app::exit_input_error;
}

fs::path parent_of(const fs::path& p) {
    return p.has_parent_path() ? p.parent_path() : fs::path(".");
}

int cmd_generate(const fs::path& config, const fs::path& out, std::optional<std::uint64_t> seed) {
    auto cfg = pnm::app::parse_generate_config(pnm::app::read_json_file(config), parent_of(config));
    if (seed) {
        cfg.seed = *seed;
    }
    const auto result = pnm::app::run_generate(cfg);
    pnm::app::write_generate_outputs(result, out);
    std::cout << "n=" << result.graph.nodes() << " edges=" << result.graph.edge_count() << '\n';
    return pnm::app::exit_ok;
}

int cmd_fit(const fs::path& edges, const fs::path& out, const std::string& solver) {
    pnm::FitOptions opts;
    opts.solver = pnm::app::parse_solver(solver);
    const pnm::Graph graph = pnm::read_edge_list_file(edges);
    const pnm::FitReport report = pnm::app::run_fit(graph, opts);
    pnm::app::write_json_file(out, pnm::app::fit_report_json(report, opts.solver));
    std::cout << "converged in " << report.iterations << " iterations, max residual " << report.max_residual
              << ", q_hat " << report.q_hat << '\n';
    return pnm::app::exit_ok;
}

int cmd_experiment(const fs::path& config, const fs::path& out) {
    const auto cfg = pnm::app::parse_experiment_config(pnm::app::read_json_file(config), parent_of(config));
    const auto result = pnm::app::run_experiment(cfg);
    {
        std::ofstream csv(out, std::ios::binary);
        if (!csv) {
            throw pnm::Error(pnm::ErrorCode::invalid_input, "cannot write " + out.string());
        }
        csv << pnm::app::format_csv(result.rows);
    }
    const json summary = pnm::app::summary_json(result.summary);
    fs::path sidecar = out;
    sidecar += ".summary.json";
    pnm::app::write_json_file(sidecar, summary);
    std::cout << summary.dump(2) << '\n';
    return pnm::app::exit_ok;
}

int cmd_diagnose(const fs::path& edges, const fs::path& fit, const fs::path& out) {
    const pnm::Graph graph = pnm::read_edge_list_file(edges);
    const auto alpha = pnm::app::alpha_from_fit_json(pnm::app::read_json_file(fit));
    const json report = pnm::app::run_diagnose(graph, alpha);
    pnm::app::write_json_file(out, report);
    std::cout << report.dump(2) << '\n';
    return pnm::app::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probit network model toolkit"};
    app.require_subcommand(1);

    fs::path config;
    fs::path out;
    fs::path edges;
    fs::path fit_path;
    std::optional<std::uint64_t> seed;
    std::string solver = "exact";

    auto* generate = app.add_subcommand("generate", "Sample a graph from a config");
    generate->add_option("--config", config, "JSON config")->required();
    generate->add_option("--out", out, "Edge-list output")->required();
    generate->add_option("--seed", seed, "Override the config seed");

    auto* fit = app.add_subcommand("fit", "Estimate node parameters from degrees");
    fit->add_option("--edges", edges, "Edge-list input")->required();
    fit->add_option("--out", out, "Fit report (JSON)")->required();
    fit->add_option("--solver", solver, "Newton variant")->check(CLI::IsMember({"exact", "diag"}));

    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo study");
    experiment->add_option("--config", config, "JSON config")->required();
    experiment->add_option("--out", out, "CSV output")->required();

    auto* diagnose = app.add_subcommand("diagnose", "Theory diagnostics for a fit");
    diagnose->add_option("--edges", edges, "Edge-list input")->required();
    diagnose->add_option("--fit", fit_path, "Fit report from `fit`")->required();
    diagnose->add_option("--out", out, "Diagnostics (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pnm::app::exit_ok : pnm::app::exit_input_error;
    }

    // An experiment's --out is a CSV; keep error JSON out of it.
    const std::optional<fs::path> error_out =
        experiment->parsed() ? std::optional<fs::path>() : std::optional<fs::path>(out);
    try {
        if (generate->parsed()) {
            return cmd_generate(config, out, seed);
        }
        if (fit->parsed()) {
            return cmd_fit(edges, out, solver);
        }
        if (experiment->parsed()) {
            return cmd_experiment(config, out);
        }
        return cmd_diagnose(edges, fit_path, out);
    } catch (const std::exception& e) {
        return report_failure(e, error_out);
    }
}
