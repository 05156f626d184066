#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pnm/app/config.hpp"
#include "pnm/covariance.hpp"

namespace pnm::app {

/// One Monte Carlo replication. Optional fields are empty when the fit (or
/// the sigma estimate) failed; `error` then holds the error code.
struct ExperimentRow {
    std::size_t n = 0;
    int rep = 0;
    /// Key of the replication stream, enough to replay it.
    std::uint64_t seed = 0;
    std::optional<double> max_abs_error;
    std::optional<double> mean_abs_error;
    int iterations = 0;
    bool converged = false;
    std::optional<double> sigma_hat;
    double q_true = 0.0;
    double runtime_ms = 0.0;
    std::string error;
};

struct SizeSummary {
    std::size_t n = 0;
    int converged = 0;
    std::optional<double> median_max_abs_error;
    std::optional<double> median_mean_abs_error;
    std::optional<double> median_sigma_hat;
};

struct ExperimentSummary {
    std::vector<SizeSummary> per_n;
    /// Least-squares slope of log(median max error) against log n.
    std::optional<double> loglog_slope;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    ExperimentSummary summary;
};

/// Runs every (n, rep) pair. Replication streams come from
/// replication_stream(master_seed, n, rep); alpha* uses split 1 and the graph
/// split 2 of it. Rows are ordered by (n, rep) whatever the thread count.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& cfg);

[[nodiscard]] ExperimentRow run_replication(const ExperimentConfig& cfg, const LatentCovariance& cov,
                                            std::size_t n, int rep);

[[nodiscard]] ExperimentSummary summarize(const std::vector<ExperimentRow>& rows);

/// Slope of the least-squares line through (log x, log y); needs >= 2 points.
[[nodiscard]] std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Column header, one line per row, then "# digest fnv1a64=<hex>" computed
/// over the header and rows with the runtime column removed.
[[nodiscard]] std::string format_csv(const std::vector<ExperimentRow>& rows);

/// FNV-1a over the CSV text without the runtime column.
[[nodiscard]] std::uint64_t deterministic_digest(const std::vector<ExperimentRow>& rows);

[[nodiscard]] nlohmann::json summary_json(const ExperimentSummary& summary);

}  // namespace pnm::app
