#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "pnm/generate.hpp"
#include "pnm/graph.hpp"
#include "pnm/random.hpp"

namespace pnm {

/// Entry bounds of the diagonally balanced class L_n(m, M).
struct MatrixClassParams {
    double m = 0.0;
    double M = 0.0;
};

/// Class bounds that every Jacobian with max|alpha_i + alpha_j| <= q satisfies:
/// m = phi(q), M = phi(0).
[[nodiscard]] MatrixClassParams jacobian_class_bounds(double q);

/// True iff v_ii = sum_{j != i} v_ij (relative 1e-10) and every off-diagonal
/// entry lies in [m, M].
[[nodiscard]] bool matrix_class_check(const Eigen::MatrixXd& v, MatrixClassParams params);

/// Max-entry bound on V^-1 - diag(1/v_ii) for V in L_n(m, M):
/// M(nM + (n-2)m) / (2 m^3 (n-2)(n-1)^2) + 1/(2m(n-1)^2) + 1/(m n (n-1)).
[[nodiscard]] double inverse_approx_error_bound(std::size_t n, double m, double M);

/// diag(1/v_11, ..., 1/v_nn); throws singular_matrix on a zero diagonal.
[[nodiscard]] Eigen::VectorXd diag_inverse_approx(const Eigen::MatrixXd& v);

/// max_ij |(V^-1 - S)_ij| with the exact inverse.
[[nodiscard]] double inverse_approx_error(const Eigen::MatrixXd& v);

/// Random member of L_n(m, M): off-diagonals uniform on [m, M], symmetric,
/// diagonal set to the row sums.
[[nodiscard]] Eigen::MatrixXd random_class_matrix(std::size_t n, MatrixClassParams params, RandomStream& rng);

/// (n-1) sqrt(2 / (e pi)), the Lipschitz constant of the degree-equation
/// Jacobian in the infinity norm.
[[nodiscard]] double lipschitz_bound(std::size_t n);

/// ||(F'(x) - F'(y)) v||_inf / ||x - y||_inf; the audited quantity.
[[nodiscard]] double jacobian_variation_ratio(std::span<const double> x, std::span<const double> y,
                                              std::span<const double> v);

/// sqrt(n ln n), the high-probability bound on max_i |d_i - E d_i| under
/// negatively associated latents.
[[nodiscard]] double concentration_threshold(std::size_t n);

/// exp(-(8/3) sqrt(r ln n)): largest within-star latent correlation the
/// positively associated branch tolerates. Diagnostic only.
[[nodiscard]] double pa_correlation_threshold(std::size_t n, std::size_t r);

/// sum_i C(d_i, 2)
[[nodiscard]] std::uint64_t count_two_stars(const Graph& graph);

/// Triples with all three edges present. Enumerates triples directly up to
/// 500 nodes, intersects neighbour bitsets above that.
[[nodiscard]] std::uint64_t count_triangles(const Graph& graph);

/// max_i |d_i - sum_{j != i} Phi(alpha_i + alpha_j)|
[[nodiscard]] double degree_deviation(const Graph& graph, const NodeParams& params);

}  // namespace pnm
