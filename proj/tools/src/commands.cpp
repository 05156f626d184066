#include "pnm/app/commands.hpp"

#include <cmath>
#include <fstream>

#include "pnm/covariance.hpp"
#include "pnm/edge_list.hpp"
#include "pnm/generate.hpp"
#include "pnm/random.hpp"
#include "pnm/theory.hpp"

namespace pnm::app {

using nlohmann::json;

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::boundary_degree:
        case ErrorCode::no_convergence:
        case ErrorCode::singular_matrix:
        case ErrorCode::boundary_estimate:
            return exit_solver_error;
        default:
            return exit_input_error;
    }
}

json error_json(const std::exception& e) {
    json body = {{"message", e.what()}};
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        body["code"] = std::string(to_string(err->code()));
        if (const auto* b = dynamic_cast<const BoundaryDegreeError*>(err)) {
            body["node"] = b->node();
            body["degree"] = b->degree();
        } else if (const auto* nc = dynamic_cast<const NoConvergenceError*>(err)) {
            body["best_iterate"] = nc->best_iterate();
            body["residual_trace"] = nc->residual_trace();
        } else if (const auto* f = dynamic_cast<const FormatError*>(err)) {
            body["line"] = f->line();
        } else if (const auto* p = dynamic_cast<const NotPsdError*>(err)) {
            body["pivot"] = p->pivot();
            body["pivot_value"] = p->value();
        } else if (const auto* be = dynamic_cast<const BoundaryEstimateError*>(err)) {
            body["g_low"] = be->g_low();
            body["g_high"] = be->g_high();
        }
    } else {
        body["code"] = "internal";
    }
    return {{"error", body}};
}

GenerateOutput run_generate(const GenerateConfig& cfg) {
    const RandomStream root(cfg.seed);
    RandomStream alpha_rng = root.split(1);
    RandomStream graph_rng = root.split(2);
    const LatentCovariance cov = validate(cfg.covariance.build(cfg.n), cfg.n);
    std::vector<double> alpha = cfg.alpha_gen.draw(cfg.n, alpha_rng);
    Graph graph = generate_graph(NodeParams{alpha}, cov, graph_rng);
    json sidecar = {
        {"n", cfg.n},
        {"seed", cfg.seed},
        {"alpha_gen", to_json(cfg.alpha_gen)},
        {"alpha", alpha},
        {"covariance", to_json(cfg.covariance)},
        {"edges", graph.edge_count()},
    };
    return {std::move(graph), std::move(alpha), std::move(sidecar)};
}

void write_generate_outputs(const GenerateOutput& output, const std::filesystem::path& out) {
    write_edge_list_file(out, output.graph);
    std::filesystem::path meta = out;
    meta += ".meta.json";
    write_json_file(meta, output.sidecar);
}

FitReport run_fit(const Graph& graph, const FitOptions& opts) {
    return fit_alpha(graph.degree_targets(), opts);
}

namespace {
json kantorovich_json(const std::optional<KantorovichReport>& k) {
    if (!k) {
        return nullptr;
    }
    return {
        {"aleph", k->aleph},
        {"delta", k->delta},
        {"lambda", k->lambda},
        {"rho", k->rho},
        {"t_star", k->t_star ? json(*k->t_star) : json(nullptr)},
    };
}
}  // namespace

json fit_report_json(const FitReport& report, Solver solver) {
    return {
        {"n", report.alpha_hat.size()},
        {"solver", solver_name(solver)},
        {"converged", report.converged},
        {"iterations", report.iterations},
        {"max_residual", report.max_residual},
        {"q_hat", report.q_hat},
        {"alpha_hat", report.alpha_hat},
        {"residual_trace", report.residual_trace},
        {"kantorovich", kantorovich_json(report.kantorovich)},
    };
}

std::vector<double> alpha_from_fit_json(const json& j) {
    if (!j.is_object() || !j.contains("alpha_hat") || !j.at("alpha_hat").is_array()) {
        throw Error(ErrorCode::invalid_input, "fit file has no alpha_hat array");
    }
    try {
        return j.at("alpha_hat").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_input, std::string("fit file alpha_hat: ") + e.what());
    }
}

json run_diagnose(const Graph& graph, const std::vector<double>& alpha_hat) {
    const std::size_t n = graph.nodes();
    if (alpha_hat.size() != n) {
        throw Error(ErrorCode::invalid_input, "fit has " + std::to_string(alpha_hat.size()) +
                                                  " parameters for a graph with " + std::to_string(n) + " nodes");
    }
    const double q_hat = max_pair_sum(alpha_hat);
    const MatrixClassParams bounds = jacobian_class_bounds(q_hat);
    const Eigen::MatrixXd j = jacobian(alpha_hat);

    json out = {
        {"n", n},
        {"edges", graph.edge_count()},
        {"q_hat", q_hat},
        {"class_bounds", {{"m", bounds.m}, {"M", bounds.M}}},
        {"jacobian_in_class", matrix_class_check(j, bounds)},
        {"lipschitz_bound", lipschitz_bound(n)},
        {"concentration_threshold", concentration_threshold(n)},
        {"degree_deviation", degree_deviation(graph, NodeParams{alpha_hat})},
        {"two_stars", count_two_stars(graph)},
        {"triangles", count_triangles(graph)},
    };
    if (n >= 3) {
        out["inverse_approx_error"] = inverse_approx_error(j);
        out["inverse_approx_bound"] = inverse_approx_error_bound(n, bounds.m, bounds.M);
        const double nn = static_cast<double>(n);
        const auto r = static_cast<std::size_t>(std::max(1.0, std::floor(nn / std::log(nn))));
        out["pa_correlation_threshold"] = {{"r", r}, {"value", pa_correlation_threshold(n, std::min(r, n - 1))}};
    }
    try {
        out["kantorovich"] = kantorovich_json(kantorovich_report(alpha_hat, graph.degree_targets()));
    } catch (const Error& e) {
        out["kantorovich"] = error_json(e);
    }
    return out;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

}  // namespace pnm::app
