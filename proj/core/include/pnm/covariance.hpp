#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pnm/pair_index.hpp"
#include "pnm/random.hpp"

namespace pnm {

/// Sigma = identity.
struct Independent {};

/// Correlation sigma0^|t - s| between latent coordinates t and s.
struct PowerDecay {
    double sigma0 = 0.0;
};

/// All off-diagonal correlations equal to rho. Negative rho gives a
/// negatively associated latent vector.
struct Equicorrelated {
    double rho = 0.0;
};

/// Correlation sigma0 + sigma_i + sigma_j + sigma_k + sigma_l between u_ij
/// and u_kl, with the node effects summing to zero.
struct AdditiveNode {
    double sigma0 = 0.0;
    std::vector<double> sigma;
};

/// Explicit correlation matrix over the latent coordinates.
struct DenseExplicit {
    Eigen::MatrixXd matrix;
};

using CovarianceSpec = std::variant<Independent, PowerDecay, Equicorrelated, AdditiveNode, DenseExplicit>;

/// How latent coordinates map to node pairs: lexicographic unordered pairs,
/// or row-major ordered pairs with the diagonal skipped.
enum class PairLayout { undirected, directed };

struct ValidateOptions {
    /// Largest node count for which AdditiveNode/DenseExplicit may be
    /// materialized and factorized.
    std::size_t max_dense_nodes = 60;
};

/// Number of latent coordinates for n nodes under a layout.
[[nodiscard]] std::size_t latent_dimension(std::size_t n, PairLayout layout);

/// Off-diagonal entry (t, s) of Sigma. Pure evaluation of the structure
/// formula; throws diagonal_query for t == s and invalid_index when out of range.
[[nodiscard]] double correlation_of(const CovarianceSpec& spec, std::size_t t, std::size_t s,
                                    std::size_t n, PairLayout layout = PairLayout::undirected);

[[nodiscard]] inline double correlation_of(const CovarianceSpec& spec, PairIndex t, PairIndex s,
                                           std::size_t n) {
    return correlation_of(spec, t.value, s.value, n, PairLayout::undirected);
}

/// Dense Sigma (unit diagonal). Intended for small dimensions only.
[[nodiscard]] Eigen::MatrixXd materialize(const CovarianceSpec& spec, std::size_t n,
                                          PairLayout layout = PairLayout::undirected);

/// Validated, immutable latent covariance bound to a node count and layout.
/// Only `validate` constructs one, so every sampler input has passed the
/// structural and semidefiniteness checks.
class LatentCovariance {
public:
    [[nodiscard]] const CovarianceSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] PairLayout layout() const noexcept { return layout_; }

    [[nodiscard]] double correlation(std::size_t t, std::size_t s) const {
        return correlation_of(spec_, t, s, nodes_, layout_);
    }

    /// Fills `out` (size dimension()) with one draw of u ~ N(0, Sigma).
    void sample_into(RandomStream& rng, std::span<double> out) const;

private:
    friend LatentCovariance validate(const CovarianceSpec&, std::size_t, PairLayout, ValidateOptions);

    LatentCovariance(CovarianceSpec spec, std::size_t n, PairLayout layout);

    CovarianceSpec spec_;
    std::size_t nodes_;
    std::size_t dimension_;
    PairLayout layout_;
    // Lower Cholesky factor, row-major, for the dense paths.
    std::shared_ptr<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> factor_;
};

/// Checks the structure invariants (unit diagonal, symmetry, |entries| < 1,
/// zero-sum node effects, equicorrelation bound) and, for the dense variants,
/// semidefiniteness via a Cholesky factorization whose pivots may dip to
/// -1e-10 before being clamped to zero.
///
/// Throws invalid_spec for constraint violations, NotPsdError naming the
/// first failing pivot otherwise.
[[nodiscard]] LatentCovariance validate(const CovarianceSpec& spec, std::size_t n,
                                        PairLayout layout = PairLayout::undirected,
                                        ValidateOptions options = {});

/// One draw of the latent vector u.
///
/// PowerDecay runs the order-1 autoregression u_t = sigma0 u_{t-1} +
/// sqrt(1 - sigma0^2) e_t and Equicorrelated uses the closed-form spectral
/// square root of (1 - rho)I + rho 11^T; both are O(N). The dense variants
/// multiply by the stored Cholesky factor.
[[nodiscard]] std::vector<double> sample_latent(const LatentCovariance& cov, RandomStream& rng);

/// Reads an N x N comma-separated correlation matrix. Row t is latent index t.
[[nodiscard]] DenseExplicit parse_dense_csv(std::istream& in);

}  // namespace pnm
