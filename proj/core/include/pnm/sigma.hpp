#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pnm/graph.hpp"

namespace pnm {

struct SigmaOptions {
    /// Use every latent pair (t, s), t < s, with correlation sigma0^(s-t)
    /// instead of only lexicographic neighbours (t, t+1). O(N^2) terms.
    bool full_pairs = false;
    /// Search bracket is [-1 + margin, 1 - margin].
    double bracket_margin = 1e-6;
    /// Bisection stops once |g| <= tol_per_pair * (number of pairs).
    double tol_per_pair = 1e-8;
    int max_bisections = 200;

    /// Node-count cap for the additive estimator.
    std::size_t additive_max_nodes = 30;
    /// Pairwise correlations are clamped into (-1 + clamp, 1 - clamp).
    double additive_clamp = 1e-6;
    int additive_max_iters = 100;
    /// Converged when max residual <= tol_scale * (n-1)(n-2)/2.
    double additive_tol_scale = 1e-6;
};

/// Observed statistic of the common-correlation moment equation: sum of
/// a_t a_{t+1} over neighbouring latent indices, or of a_t a_s over all
/// t < s in full-pair mode.
[[nodiscard]] double common_pair_statistic(const Graph& graph, const SigmaOptions& opts = {});

/// g(sigma0) = observed - sum over the pair set of E[a_t a_s](sigma0),
/// strictly decreasing in sigma0 in neighbour mode.
[[nodiscard]] double common_moment_function(double observed, std::span<const double> alpha_hat,
                                            double sigma0, const SigmaOptions& opts = {});

/// Root of g by bisection on the bracket. Throws BoundaryEstimateError when g
/// has no sign change on it.
[[nodiscard]] double solve_sigma_common(double observed, std::span<const double> alpha_hat,
                                        const SigmaOptions& opts = {});

/// Power-decay sigma0 estimate from a graph and first-stage alpha_hat.
[[nodiscard]] double estimate_sigma_common(const Graph& graph, std::span<const double> alpha_hat,
                                           const SigmaOptions& opts = {});

struct AdditiveEstimate {
    double sigma0 = 0.0;
    /// Node effects; sums to zero by construction.
    std::vector<double> sigma;
    int iterations = 0;
    double max_residual = 0.0;
    std::vector<double> residual_trace;
    /// Some pairwise correlation sits on the clamp at the solution.
    bool clamp_active = false;
};

/// Observed statistic of node i's equation: sum over j < l (both != i) of
/// a_ij a_il, i.e. C(d_i, 2).
[[nodiscard]] std::vector<double> node_two_star_statistics(const Graph& graph);

/// Expected node statistics under (sigma0, sigma) with the clamp applied.
[[nodiscard]] std::vector<double> expected_two_star_statistics(std::span<const double> alpha_hat, double sigma0,
                                                               std::span<const double> sigma,
                                                               const SigmaOptions& opts = {});

/// Solves the n node equations for sigma0 and zero-sum node effects by a
/// damped Broyden iteration seeded with a finite-difference Jacobian.
/// Throws NoConvergenceError with the residual trace on failure.
[[nodiscard]] AdditiveEstimate solve_sigma_additive(std::span<const double> observed,
                                                    std::span<const double> alpha_hat,
                                                    const SigmaOptions& opts = {});

[[nodiscard]] AdditiveEstimate estimate_sigma_additive(const Graph& graph, std::span<const double> alpha_hat,
                                                       const SigmaOptions& opts = {});

}  // namespace pnm
