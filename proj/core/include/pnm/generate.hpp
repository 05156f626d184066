#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pnm/covariance.hpp"
#include "pnm/graph.hpp"
#include "pnm/random.hpp"

namespace pnm {

/// Node parameters alpha of the undirected model.
struct NodeParams {
    std::vector<double> alpha;

    [[nodiscard]] std::size_t size() const noexcept { return alpha.size(); }
};

/// max_{i<j} |alpha_i + alpha_j|, the smallest Q with alpha in Theta(Q).
[[nodiscard]] double max_pair_sum(const std::vector<double>& alpha);

/// Pair covariates for the homophily-augmented link rule. Row t of `z` is
/// the covariate vector of the pair with PairIndex t.
struct CovariateData {
    std::vector<double> gamma;
    Eigen::MatrixXd z;
};

/// Phi(alpha_i + alpha_j); throws self_loop for i == j.
[[nodiscard]] double edge_probability(const NodeParams& params, NodeId i, NodeId j);

/// One graph from the link surplus rule a_ij = 1(alpha_i + alpha_j >= u_ij),
/// with a single joint draw of the latent vector u.
[[nodiscard]] Graph generate_graph(const NodeParams& params, const LatentCovariance& cov,
                                   RandomStream& rng);

/// a_ij = 1(alpha_i + beta_j >= u_ij) over ordered pairs i != j. `cov` must
/// be validated with PairLayout::directed.
[[nodiscard]] DirectedGraph generate_directed(const std::vector<double>& alpha,
                                              const std::vector<double>& beta,
                                              const LatentCovariance& cov, RandomStream& rng);

/// a_ij = 1(z_ij' gamma + alpha_i + alpha_j >= u_ij). Consumes the random
/// stream exactly like generate_graph.
[[nodiscard]] Graph generate_with_covariates(const NodeParams& params, const CovariateData& covariates,
                                             const LatentCovariance& cov, RandomStream& rng);

}  // namespace pnm
