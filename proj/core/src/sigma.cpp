#include "pnm/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "pnm/error.hpp"
#include "pnm/normal.hpp"

namespace pnm {

namespace {

std::vector<double> pair_sums(std::span<const double> alpha) {
    const std::size_t n = alpha.size();
    std::vector<double> s;
    s.reserve(num_pairs(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s.push_back(alpha[i] + alpha[j]);
        }
    }
    return s;
}

double max_abs(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double count_pairs(std::size_t n, const SigmaOptions& opts) {
    const double big_n = static_cast<double>(num_pairs(n));
    return opts.full_pairs ? big_n * (big_n - 1.0) / 2.0 : big_n - 1.0;
}

}  // namespace

double common_pair_statistic(const Graph& graph, const SigmaOptions& opts) {
    const auto& adj = graph.adjacency();
    if (opts.full_pairs) {
        const double m = static_cast<double>(graph.edge_count());
        return m * (m - 1.0) / 2.0;
    }
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < adj.size(); ++t) {
        if (adj[t] && adj[t + 1]) {
            total += 1.0;
        }
    }
    return total;
}

double common_moment_function(double observed, std::span<const double> alpha_hat, double sigma0,
                              const SigmaOptions& opts) {
    const std::vector<double> s = pair_sums(alpha_hat);
    double expected = 0.0;
    if (!opts.full_pairs) {
        const Corr rho(sigma0);
        for (std::size_t t = 0; t + 1 < s.size(); ++t) {
            expected += bivariate_cdf(s[t], s[t + 1], rho);
        }
    } else {
        for (std::size_t t = 0; t < s.size(); ++t) {
            double power = 1.0;
            for (std::size_t u = t + 1; u < s.size(); ++u) {
                power *= sigma0;
                expected += bivariate_cdf(s[t], s[u], Corr(power));
            }
        }
    }
    return observed - expected;
}

double solve_sigma_common(double observed, std::span<const double> alpha_hat, const SigmaOptions& opts) {
    if (alpha_hat.size() < 3) {
        throw Error(ErrorCode::invalid_size, "common correlation estimate needs n >= 3");
    }
    double lo = -1.0 + opts.bracket_margin;
    double hi = 1.0 - opts.bracket_margin;
    const double g_lo = common_moment_function(observed, alpha_hat, lo, opts);
    const double g_hi = common_moment_function(observed, alpha_hat, hi, opts);
    if (g_lo == 0.0) {
        return lo;
    }
    if (g_hi == 0.0) {
        return hi;
    }
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw BoundaryEstimateError(g_lo, g_hi);
    }
    const double tol = opts.tol_per_pair * count_pairs(alpha_hat.size(), opts);
    const bool lo_positive = g_lo > 0.0;
    for (int it = 0; it < opts.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = common_moment_function(observed, alpha_hat, mid, opts);
        if (std::abs(g) <= tol || hi - lo <= 1e-15) {
            return mid;
        }
        if ((g > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double estimate_sigma_common(const Graph& graph, std::span<const double> alpha_hat, const SigmaOptions& opts) {
    if (alpha_hat.size() != graph.nodes()) {
        throw Error(ErrorCode::invalid_input, "alpha_hat length does not match the graph");
    }
    return solve_sigma_common(common_pair_statistic(graph, opts), alpha_hat, opts);
}

std::vector<double> node_two_star_statistics(const Graph& graph) {
    std::vector<double> out;
    out.reserve(graph.nodes());
    for (std::size_t d : graph.degrees()) {
        const double dd = static_cast<double>(d);
        out.push_back(dd * (dd - 1.0) / 2.0);
    }
    return out;
}

std::vector<double> expected_two_star_statistics(std::span<const double> alpha_hat, double sigma0,
                                                 std::span<const double> sigma, const SigmaOptions& opts) {
    const std::size_t n = alpha_hat.size();
    if (sigma.size() != n) {
        throw Error(ErrorCode::invalid_input, "node effects must have one entry per node");
    }
    const double bound = 1.0 - opts.additive_clamp;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            for (std::size_t l = j + 1; l < n; ++l) {
                if (l == i) {
                    continue;
                }
                const double r = std::clamp(sigma0 + 2.0 * sigma[i] + sigma[j] + sigma[l], -bound, bound);
                total += bivariate_cdf(alpha_hat[i] + alpha_hat[j], alpha_hat[i] + alpha_hat[l], Corr(r));
            }
        }
        out[i] = total;
    }
    return out;
}

AdditiveEstimate solve_sigma_additive(std::span<const double> observed, std::span<const double> alpha_hat,
                                      const SigmaOptions& opts) {
    const std::size_t n = alpha_hat.size();
    if (n < 3 || observed.size() != n) {
        throw Error(ErrorCode::invalid_input, "additive estimate needs n >= 3 and one statistic per node");
    }
    if (n > opts.additive_max_nodes) {
        throw Error(ErrorCode::invalid_size, "additive estimate is capped at " +
                                                 std::to_string(opts.additive_max_nodes) + " nodes");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    const double nn = static_cast<double>(n);
    const double tol = opts.additive_tol_scale * (nn - 1.0) * (nn - 2.0) / 2.0;

    // theta = (sigma0, sigma_0, ..., sigma_{n-2}); sigma_{n-1} = -sum.
    auto unpack = [n](const Eigen::VectorXd& theta) {
        std::vector<double> sigma(n);
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            sigma[k] = theta(static_cast<Eigen::Index>(k + 1));
            sum += sigma[k];
        }
        sigma[n - 1] = -sum;
        return sigma;
    };
    auto residual = [&](const Eigen::VectorXd& theta) {
        const std::vector<double> expected = expected_two_star_statistics(alpha_hat, theta(0), unpack(theta), opts);
        Eigen::VectorXd r(dim);
        for (std::size_t i = 0; i < n; ++i) {
            r(static_cast<Eigen::Index>(i)) = observed[i] - expected[i];
        }
        return r;
    };
    auto fd_jacobian = [&](const Eigen::VectorXd& theta, const Eigen::VectorXd& r0) {
        constexpr double h = 1e-6;
        Eigen::MatrixXd b(dim, dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            Eigen::VectorXd shifted = theta;
            shifted(k) += h;
            b.col(k) = (residual(shifted) - r0) / h;
        }
        return b;
    };

    AdditiveEstimate est;
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd r = residual(theta);
    double norm = max_abs(r);
    est.residual_trace.push_back(norm);
    Eigen::MatrixXd b = fd_jacobian(theta, r);
    bool fresh = true;

    int iter = 0;
    while (norm > tol) {
        if (iter >= opts.additive_max_iters) {
            throw NoConvergenceError("additive correlation equations did not converge", unpack(theta),
                                     est.residual_trace);
        }
        ++iter;
        const Eigen::VectorXd step = b.partialPivLu().solve(-r);
        double scale = 1.0;
        bool accepted = false;
        Eigen::VectorXd trial_theta;
        Eigen::VectorXd trial_r;
        if (step.allFinite()) {
            for (int halving = 0; halving < 30; ++halving) {
                trial_theta = theta + scale * step;
                trial_r = residual(trial_theta);
                if (max_abs(trial_r) < norm) {
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
        }
        if (!accepted) {
            if (fresh) {
                throw NoConvergenceError("no step length decreases the additive residual", unpack(theta),
                                         est.residual_trace);
            }
            b = fd_jacobian(theta, r);
            fresh = true;
            continue;
        }
        const Eigen::VectorXd dtheta = trial_theta - theta;
        const Eigen::VectorXd dr = trial_r - r;
        b += ((dr - b * dtheta) * dtheta.transpose()) / dtheta.squaredNorm();
        fresh = false;
        theta = trial_theta;
        r = trial_r;
        norm = max_abs(r);
        est.residual_trace.push_back(norm);
    }

    est.sigma0 = theta(0);
    est.sigma = unpack(theta);
    est.iterations = iter;
    est.max_residual = norm;
    const double bound = 1.0 - opts.additive_clamp;
    for (std::size_t i = 0; i < n && !est.clamp_active; ++i) {
        for (std::size_t j = 0; j < n && !est.clamp_active; ++j) {
            for (std::size_t l = j + 1; l < n; ++l) {
                if (j == i || l == i) {
                    continue;
                }
                const double raw = est.sigma0 + 2.0 * est.sigma[i] + est.sigma[j] + est.sigma[l];
                if (std::abs(raw) >= bound) {
                    est.clamp_active = true;
                    break;
                }
            }
        }
    }
    return est;
}

AdditiveEstimate estimate_sigma_additive(const Graph& graph, std::span<const double> alpha_hat,
                                         const SigmaOptions& opts) {
    if (alpha_hat.size() != graph.nodes()) {
        throw Error(ErrorCode::invalid_input, "alpha_hat length does not match the graph");
    }
    const std::vector<double> observed = node_two_star_statistics(graph);
    return solve_sigma_additive(observed, alpha_hat, opts);
}

}  // namespace pnm
