#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pnm/normal.hpp"
#include "pnm/pair_index.hpp"

namespace pnm {

enum class Solver {
    /// Full Newton step from a Cholesky solve of the Jacobian.
    exact_jacobian,
    /// Newton step with the inverse Jacobian replaced by diag(1/J_ii), plus
    /// an exact correction along the all-ones direction.
    diagonal_approx,
};

struct FitOptions {
    Solver solver = Solver::exact_jacobian;
    double tol_residual = 1e-8;
    double tol_step = 1e-10;
    int max_iters = 100;
    /// Initial step multiplier in (0, 1]; halved while the residual grows.
    double damping = 1.0;
    /// Clamp for d_i/(n-1) before the quantile at initialization.
    double boundary_epsilon = 1e-9;
    /// Attach the Newton-Kantorovich quantities at the starting point.
    bool kantorovich = true;
};

/// Newton-Kantorovich quantities at a starting point x0:
/// aleph = ||F'(x0)^-1||_inf, delta = ||F'(x0)^-1 F(x0)||_inf,
/// rho = 2 aleph lambda delta with lambda the Jacobian Lipschitz constant,
/// and the ball radius t* = 2 delta / (1 + sqrt(1 - rho)) when rho <= 1.
struct KantorovichReport {
    double aleph = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double rho = 0.0;
    std::optional<double> t_star;
};

struct FitReport {
    std::vector<double> alpha_hat;
    bool converged = false;
    int iterations = 0;
    double max_residual = 0.0;
    /// max_{i<j} |alpha_hat_i + alpha_hat_j|
    double q_hat = 0.0;
    /// Max residual before the first step and after every accepted step.
    std::vector<double> residual_trace;
    std::optional<KantorovichReport> kantorovich;
};

/// F_i(alpha) = d_i - sum_{j != i} Phi(alpha_i + alpha_j).
[[nodiscard]] std::vector<double> moment_residual(std::span<const double> alpha,
                                                  std::span<const double> target_degrees);

/// J = -F'(alpha): J_ij = phi(alpha_i + alpha_j) off the diagonal and
/// J_ii = sum_{j != i} J_ij.
[[nodiscard]] Eigen::MatrixXd jacobian(std::span<const double> alpha);

/// Solves the degree moment equations by damped Newton iteration started at
/// alpha_i = Phi^-1(d_i / (n-1)) / 2.
///
/// Throws BoundaryDegreeError if some d_i is not strictly inside (0, n-1), and
/// NoConvergenceError (carrying the best iterate) if the residual does not
/// reach tol_residual within max_iters.
[[nodiscard]] FitReport fit_alpha(std::span<const double> degrees, const FitOptions& opts = {});

/// Starting point used by fit_alpha.
[[nodiscard]] std::vector<double> initial_alpha(std::span<const double> degrees, double boundary_epsilon = 1e-9);

/// Throws singular_matrix when the Jacobian at alpha0 is not invertible.
[[nodiscard]] KantorovichReport kantorovich_report(std::span<const double> alpha0,
                                                   std::span<const double> degrees);

/// E[a_ij a_kl] = Phi2(alpha_i + alpha_j, alpha_k + alpha_l; rho) for the
/// pairs at latent indices t and s.
[[nodiscard]] double pair_moment(std::span<const double> alpha, PairIndex t, PairIndex s, Corr rho);

}  // namespace pnm
