#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pnm/covariance.hpp"
#include "pnm/estimate.hpp"
#include "pnm/random.hpp"

namespace pnm::app {

/// How true node parameters are produced for a run.
struct AlphaGenerator {
    enum class Kind { constant, uniform, list };

    Kind kind = Kind::constant;
    double value = 0.0;
    double low = 0.0;
    double high = 0.0;
    std::vector<double> values;

    /// Throws invalid_input when a list generator has the wrong length.
    [[nodiscard]] std::vector<double> draw(std::size_t n, RandomStream& rng) const;
};

/// Covariance family as written in a config. Kept symbolic because some
/// parameters depend on n (equicorrelation given as rho * (N - 1)).
struct CovarianceConfig {
    enum class Kind { independent, power_decay, equicorrelated, additive_node, dense_explicit };

    Kind kind = Kind::independent;
    double sigma0 = 0.0;
    double rho = 0.0;
    /// When set, rho = scaled_rho / (N - 1) for each n.
    bool rho_is_scaled = false;
    std::vector<double> sigma;
    std::filesystem::path csv;

    [[nodiscard]] CovarianceSpec build(std::size_t n) const;
};

struct ExperimentConfig {
    std::vector<std::size_t> n_list;
    int replications = 1;
    AlphaGenerator alpha_gen;
    CovarianceConfig covariance;
    FitOptions fit;
    std::uint64_t master_seed = 0;
    bool estimate_sigma = false;
    /// Worker threads; results do not depend on it.
    unsigned threads = 1;
};

struct GenerateConfig {
    std::size_t n = 0;
    AlphaGenerator alpha_gen;
    CovarianceConfig covariance;
    std::uint64_t seed = 0;
};

/// Relative paths inside a config (the dense CSV) resolve against `base_dir`.
/// Schema violations throw Error(invalid_input).
[[nodiscard]] AlphaGenerator parse_alpha_generator(const nlohmann::json& j);
[[nodiscard]] CovarianceConfig parse_covariance(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
[[nodiscard]] FitOptions parse_fit_options(const nlohmann::json& j);
[[nodiscard]] ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                                       const std::filesystem::path& base_dir = {});
[[nodiscard]] GenerateConfig parse_generate_config(const nlohmann::json& j,
                                                   const std::filesystem::path& base_dir = {});

[[nodiscard]] nlohmann::json to_json(const AlphaGenerator& gen);
[[nodiscard]] nlohmann::json to_json(const CovarianceConfig& cov);

/// Reads and parses a UTF-8 JSON file; throws Error(invalid_input).
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);

[[nodiscard]] std::string solver_name(Solver solver);
[[nodiscard]] Solver parse_solver(const std::string& name);

}  // namespace pnm::app
