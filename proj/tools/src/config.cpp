#include "pnm/app/config.hpp"

#include <fstream>

#include "pnm/error.hpp"

namespace pnm::app {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorCode::invalid_input, "config: " + what);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        schema_error(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        schema_error(std::string("missing field '") + key + "'");
    }
    return get_or<T>(j, key, T{});
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            schema_error(std::string("unknown field '") + key + "' in " + where);
        }
    }
}

}  // namespace

std::vector<double> AlphaGenerator::draw(std::size_t n, RandomStream& rng) const {
    switch (kind) {
        case Kind::constant:
            return std::vector<double>(n, value);
        case Kind::uniform: {
            std::vector<double> alpha(n);
            for (double& a : alpha) {
                a = rng.uniform(low, high);
            }
            return alpha;
        }
        case Kind::list:
            if (values.size() != n) {
                throw Error(ErrorCode::invalid_input, "alpha list has " + std::to_string(values.size()) +
                                                          " entries for n=" + std::to_string(n));
            }
            return values;
    }
    return {};
}

CovarianceSpec CovarianceConfig::build(std::size_t n) const {
    switch (kind) {
        case Kind::independent:
            return Independent{};
        case Kind::power_decay:
            return PowerDecay{sigma0};
        case Kind::equicorrelated: {
            if (!rho_is_scaled) {
                return Equicorrelated{rho};
            }
            const double big_n = static_cast<double>(num_pairs(n));
            return Equicorrelated{big_n > 1.0 ? rho / (big_n - 1.0) : 0.0};
        }
        case Kind::additive_node:
            return AdditiveNode{sigma0, sigma};
        case Kind::dense_explicit: {
            std::ifstream in(csv);
            if (!in) {
                throw Error(ErrorCode::invalid_input, "cannot open covariance CSV " + csv.string());
            }
            return parse_dense_csv(in);
        }
    }
    return Independent{};
}

AlphaGenerator parse_alpha_generator(const json& j) {
    if (!j.is_object() || j.size() != 1) {
        schema_error("alpha_gen must be an object with exactly one of constant, uniform, list");
    }
    AlphaGenerator gen;
    if (j.contains("constant")) {
        gen.kind = AlphaGenerator::Kind::constant;
        gen.value = require<double>(j, "constant");
    } else if (j.contains("uniform")) {
        const auto range = require<std::vector<double>>(j, "uniform");
        if (range.size() != 2 || !(range[0] <= range[1])) {
            schema_error("alpha_gen.uniform must be [low, high] with low <= high");
        }
        gen.kind = AlphaGenerator::Kind::uniform;
        gen.low = range[0];
        gen.high = range[1];
    } else if (j.contains("list")) {
        gen.kind = AlphaGenerator::Kind::list;
        gen.values = require<std::vector<double>>(j, "list");
    } else {
        schema_error("alpha_gen must be one of constant, uniform, list");
    }
    return gen;
}

CovarianceConfig parse_covariance(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        schema_error("covariance must be an object");
    }
    CovarianceConfig cov;
    const auto type = require<std::string>(j, "type");
    if (type == "independent") {
        reject_unknown(j, {"type"}, "covariance");
        cov.kind = CovarianceConfig::Kind::independent;
    } else if (type == "power_decay") {
        reject_unknown(j, {"type", "sigma0"}, "covariance");
        cov.kind = CovarianceConfig::Kind::power_decay;
        cov.sigma0 = require<double>(j, "sigma0");
    } else if (type == "equicorrelated") {
        reject_unknown(j, {"type", "rho", "scaled_rho"}, "covariance");
        cov.kind = CovarianceConfig::Kind::equicorrelated;
        if (j.contains("rho") == j.contains("scaled_rho")) {
            schema_error("equicorrelated covariance needs exactly one of rho, scaled_rho");
        }
        cov.rho_is_scaled = j.contains("scaled_rho");
        cov.rho = require<double>(j, cov.rho_is_scaled ? "scaled_rho" : "rho");
    } else if (type == "additive_node") {
        reject_unknown(j, {"type", "sigma0", "sigma"}, "covariance");
        cov.kind = CovarianceConfig::Kind::additive_node;
        cov.sigma0 = require<double>(j, "sigma0");
        cov.sigma = require<std::vector<double>>(j, "sigma");
    } else if (type == "dense_explicit") {
        reject_unknown(j, {"type", "csv"}, "covariance");
        cov.kind = CovarianceConfig::Kind::dense_explicit;
        std::filesystem::path p = require<std::string>(j, "csv");
        cov.csv = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else {
        schema_error("unknown covariance type '" + type + "'");
    }
    return cov;
}

FitOptions parse_fit_options(const json& j) {
    FitOptions opts;
    if (j.is_null()) {
        return opts;
    }
    if (!j.is_object()) {
        schema_error("fit must be an object");
    }
    reject_unknown(j,
                   {"solver", "tol_residual", "tol_step", "max_iters", "damping", "boundary_epsilon", "kantorovich"},
                   "fit");
    opts.solver = parse_solver(get_or<std::string>(j, "solver", "exact"));
    opts.tol_residual = get_or(j, "tol_residual", opts.tol_residual);
    opts.tol_step = get_or(j, "tol_step", opts.tol_step);
    opts.max_iters = get_or(j, "max_iters", opts.max_iters);
    opts.damping = get_or(j, "damping", opts.damping);
    opts.boundary_epsilon = get_or(j, "boundary_epsilon", opts.boundary_epsilon);
    opts.kantorovich = get_or(j, "kantorovich", opts.kantorovich);
    if (!(opts.tol_residual > 0.0 && opts.tol_step > 0.0 && opts.max_iters >= 1 && opts.damping > 0.0 &&
          opts.damping <= 1.0 && opts.boundary_epsilon > 0.0 && opts.boundary_epsilon < 0.5)) {
        schema_error("fit options out of range");
    }
    return opts;
}

ExperimentConfig parse_experiment_config(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        schema_error("experiment config must be a JSON object");
    }
    reject_unknown(j,
                   {"n_list", "replications", "alpha_gen", "covariance", "fit", "master_seed", "estimate_sigma",
                    "threads"},
                   "experiment config");
    ExperimentConfig cfg;
    cfg.n_list = require<std::vector<std::size_t>>(j, "n_list");
    cfg.replications = require<int>(j, "replications");
    cfg.alpha_gen = parse_alpha_generator(require<json>(j, "alpha_gen"));
    cfg.covariance = parse_covariance(j.contains("covariance") ? j.at("covariance") : json{{"type", "independent"}},
                                      base_dir);
    cfg.fit = parse_fit_options(j.contains("fit") ? j.at("fit") : json());
    cfg.master_seed = require<std::uint64_t>(j, "master_seed");
    cfg.estimate_sigma = get_or(j, "estimate_sigma", false);
    cfg.threads = get_or(j, "threads", 1u);
    if (cfg.n_list.empty()) {
        schema_error("n_list must not be empty");
    }
    for (std::size_t n : cfg.n_list) {
        if (n < 3) {
            schema_error("every n in n_list must be >= 3");
        }
    }
    if (cfg.replications < 1) {
        schema_error("replications must be >= 1");
    }
    if (cfg.threads < 1) {
        schema_error("threads must be >= 1");
    }
    return cfg;
}

GenerateConfig parse_generate_config(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        schema_error("generate config must be a JSON object");
    }
    reject_unknown(j, {"n", "alpha_gen", "covariance", "seed"}, "generate config");
    GenerateConfig cfg;
    cfg.n = require<std::size_t>(j, "n");
    if (cfg.n < 2) {
        schema_error("n must be >= 2");
    }
    cfg.alpha_gen = parse_alpha_generator(require<json>(j, "alpha_gen"));
    cfg.covariance = parse_covariance(j.contains("covariance") ? j.at("covariance") : json{{"type", "independent"}},
                                      base_dir);
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    return cfg;
}

json to_json(const AlphaGenerator& gen) {
    switch (gen.kind) {
        case AlphaGenerator::Kind::constant:
            return {{"constant", gen.value}};
        case AlphaGenerator::Kind::uniform:
            return {{"uniform", {gen.low, gen.high}}};
        case AlphaGenerator::Kind::list:
            return {{"list", gen.values}};
    }
    return {};
}

json to_json(const CovarianceConfig& cov) {
    switch (cov.kind) {
        case CovarianceConfig::Kind::independent:
            return {{"type", "independent"}};
        case CovarianceConfig::Kind::power_decay:
            return {{"type", "power_decay"}, {"sigma0", cov.sigma0}};
        case CovarianceConfig::Kind::equicorrelated:
            return {{"type", "equicorrelated"}, {cov.rho_is_scaled ? "scaled_rho" : "rho", cov.rho}};
        case CovarianceConfig::Kind::additive_node:
            return {{"type", "additive_node"}, {"sigma0", cov.sigma0}, {"sigma", cov.sigma}};
        case CovarianceConfig::Kind::dense_explicit:
            return {{"type", "dense_explicit"}, {"csv", cov.csv.generic_string()}};
    }
    return {};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::invalid_input, path.string() + ": " + e.what());
    }
}

std::string solver_name(Solver solver) {
    return solver == Solver::exact_jacobian ? "exact" : "diag";
}

Solver parse_solver(const std::string& name) {
    if (name == "exact") {
        return Solver::exact_jacobian;
    }
    if (name == "diag") {
        return Solver::diagonal_approx;
    }
    schema_error("solver must be 'exact' or 'diag', got '" + name + "'");
}

}  // namespace pnm::app
