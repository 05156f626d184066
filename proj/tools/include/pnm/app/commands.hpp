#pragma once

#include <exception>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "pnm/app/config.hpp"
#include "pnm/error.hpp"
#include "pnm/estimate.hpp"
#include "pnm/graph.hpp"

namespace pnm::app {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_solver_error = 3;

/// 3 for solver failures (boundary degree, no convergence, singular
/// Jacobian, boundary estimate), 2 for every other input problem.
[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

/// {"error": {"code": ..., "message": ..., plus payload fields}}
[[nodiscard]] nlohmann::json error_json(const std::exception& e);

struct GenerateOutput {
    Graph graph;
    std::vector<double> alpha;
    /// Reproducibility record: n, seed, alpha, covariance, edge count.
    nlohmann::json sidecar;
};

/// Draws alpha from the generator (stream split 1 of the seed) and the graph
/// (stream split 2). Same config and seed give the same output.
[[nodiscard]] GenerateOutput run_generate(const GenerateConfig& cfg);

/// Writes the edge list to `out` and the sidecar to `out` + ".meta.json".
void write_generate_outputs(const GenerateOutput& output, const std::filesystem::path& out);

[[nodiscard]] FitReport run_fit(const Graph& graph, const FitOptions& opts);

[[nodiscard]] nlohmann::json fit_report_json(const FitReport& report, Solver solver);

/// alpha_hat from a fit file; throws invalid_input on a malformed document.
[[nodiscard]] std::vector<double> alpha_from_fit_json(const nlohmann::json& j);

/// Theoretical diagnostics of a fitted graph: class membership of the
/// Jacobian at alpha_hat, the diagonal inverse approximation against its
/// bound, Lipschitz and concentration thresholds, degree deviation, subgraph
/// counts and the Kantorovich quantities at alpha_hat.
[[nodiscard]] nlohmann::json run_diagnose(const Graph& graph, const std::vector<double>& alpha_hat);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace pnm::app
