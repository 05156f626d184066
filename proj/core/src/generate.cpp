#include "pnm/generate.hpp"

#include <cmath>
#include <string>

#include "pnm/error.hpp"
#include "pnm/normal.hpp"

namespace pnm {

namespace {

void require_undirected(const LatentCovariance& cov, std::size_t n) {
    if (cov.layout() != PairLayout::undirected || cov.nodes() != n) {
        throw Error(ErrorCode::invalid_input,
                    "covariance was validated for a different node count or layout (expected n=" +
                        std::to_string(n) + ", undirected)");
    }
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw Error(ErrorCode::invalid_input, std::string(what) + " must be finite");
        }
    }
}

template <typename Threshold>
Graph threshold_graph(std::size_t n, const LatentCovariance& cov, RandomStream& rng,
                      Threshold threshold) {
    const std::vector<double> u = sample_latent(cov, rng);
    Graph g(n);
    std::size_t t = 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j, ++t) {
            if (threshold(i, j, t) >= u[t]) {
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

}  // namespace

double max_pair_sum(const std::vector<double>& alpha) {
    double q = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (std::size_t j = i + 1; j < alpha.size(); ++j) {
            q = std::max(q, std::abs(alpha[i] + alpha[j]));
        }
    }
    return q;
}

double edge_probability(const NodeParams& params, NodeId i, NodeId j) {
    if (i == j) {
        throw Error(ErrorCode::self_loop, "edge probability of a self-loop");
    }
    if (i >= params.size() || j >= params.size()) {
        throw Error(ErrorCode::invalid_pair, "node id out of range");
    }
    return std_normal_cdf(params.alpha[i] + params.alpha[j]);
}

Graph generate_graph(const NodeParams& params, const LatentCovariance& cov, RandomStream& rng) {
    const std::size_t n = params.size();
    require_undirected(cov, n);
    require_finite(params.alpha, "alpha");
    const auto& alpha = params.alpha;
    return threshold_graph(n, cov, rng,
                           [&](NodeId i, NodeId j, std::size_t) { return alpha[i] + alpha[j]; });
}

DirectedGraph generate_directed(const std::vector<double>& alpha, const std::vector<double>& beta,
                                const LatentCovariance& cov, RandomStream& rng) {
    const std::size_t n = alpha.size();
    if (beta.size() != n) {
        throw Error(ErrorCode::invalid_input, "alpha and beta must have the same length");
    }
    if (cov.layout() != PairLayout::directed || cov.nodes() != n) {
        throw Error(ErrorCode::invalid_input, "covariance must be validated for the directed layout with n=" +
                                                  std::to_string(n));
    }
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    const std::vector<double> u = sample_latent(cov, rng);
    DirectedGraph g(n);
    std::size_t t = 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (alpha[i] + beta[j] >= u[t]) {
                g.add_edge(i, j);
            }
            ++t;
        }
    }
    return g;
}

Graph generate_with_covariates(const NodeParams& params, const CovariateData& covariates,
                               const LatentCovariance& cov, RandomStream& rng) {
    const std::size_t n = params.size();
    require_undirected(cov, n);
    require_finite(params.alpha, "alpha");
    const auto pairs = static_cast<Eigen::Index>(num_pairs(n));
    const auto p = static_cast<Eigen::Index>(covariates.gamma.size());
    if (covariates.z.rows() != pairs || covariates.z.cols() != p) {
        throw Error(ErrorCode::invalid_input, "covariate matrix must be N x p with N = n(n-1)/2 and p = |gamma|");
    }
    const Eigen::Map<const Eigen::VectorXd> gamma(covariates.gamma.data(), p);
    const Eigen::VectorXd shift = covariates.z * gamma;
    const auto& alpha = params.alpha;
    return threshold_graph(n, cov, rng, [&](NodeId i, NodeId j, std::size_t t) {
        return shift(static_cast<Eigen::Index>(t)) + alpha[i] + alpha[j];
    });
}

}  // namespace pnm
