#include "pnm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pnm/error.hpp"
#include "pnm/generate.hpp"
#include "pnm/theory.hpp"

namespace pnm {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

void check_interior(std::span<const double> degrees) {
    const double top = static_cast<double>(degrees.size() - 1);
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!(degrees[i] > 0.0 && degrees[i] < top)) {
            throw BoundaryDegreeError(i, degrees[i]);
        }
    }
}

Eigen::VectorXd as_vector(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd newton_step(const Eigen::MatrixXd& j, const Eigen::VectorXd& f, Solver solver) {
    if (solver == Solver::exact_jacobian) {
        Eigen::LLT<Eigen::MatrixXd> llt(j);
        if (llt.info() == Eigen::Success) {
            return llt.solve(f);
        }
        return j.partialPivLu().solve(f);
    }
    // diag(1/J_ii) F overshoots the common-shift direction by a factor of two
    // (J 1 = 2 diag(J)), so that component is solved exactly.
    const Eigen::VectorXd diag = j.diagonal();
    Eigen::VectorXd step = f.cwiseQuotient(diag);
    step.array() -= f.sum() / (2.0 * diag.sum());
    return step;
}

}  // namespace

std::vector<double> moment_residual(std::span<const double> alpha, std::span<const double> target_degrees) {
    const std::size_t n = alpha.size();
    if (n < 2 || target_degrees.size() != n) {
        throw Error(ErrorCode::invalid_input, "alpha and degrees must have equal length n >= 2");
    }
    std::vector<double> f(target_degrees.begin(), target_degrees.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = std_normal_cdf(alpha[i] + alpha[j]);
            f[i] -= p;
            f[j] -= p;
        }
    }
    return f;
}

Eigen::MatrixXd jacobian(std::span<const double> alpha) {
    const auto n = static_cast<Eigen::Index>(alpha.size());
    if (n < 2) {
        throw Error(ErrorCode::invalid_input, "jacobian needs n >= 2");
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double v = std_normal_pdf(alpha[static_cast<std::size_t>(a)] + alpha[static_cast<std::size_t>(b)]);
            j(a, b) = v;
            j(b, a) = v;
            j(a, a) += v;
            j(b, b) += v;
        }
    }
    return j;
}

std::vector<double> initial_alpha(std::span<const double> degrees, double boundary_epsilon) {
    const double top = static_cast<double>(degrees.size() - 1);
    std::vector<double> alpha(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const double p = std::clamp(degrees[i] / top, boundary_epsilon, 1.0 - boundary_epsilon);
        alpha[i] = 0.5 * std_normal_quantile(p);
    }
    return alpha;
}

KantorovichReport kantorovich_report(std::span<const double> alpha0, std::span<const double> degrees) {
    const std::vector<double> f = moment_residual(alpha0, degrees);
    const Eigen::MatrixXd j = jacobian(alpha0);
    const auto n = j.rows();

    Eigen::MatrixXd inverse;
    Eigen::LLT<Eigen::MatrixXd> llt(j);
    if (llt.info() == Eigen::Success) {
        inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(j);
        if (!lu.isInvertible()) {
            throw Error(ErrorCode::singular_matrix, "Jacobian is singular at the starting point");
        }
        inverse = lu.inverse();
    }
    if (!inverse.allFinite()) {
        throw Error(ErrorCode::singular_matrix, "Jacobian is numerically singular at the starting point");
    }

    KantorovichReport r;
    // F' = -J, so both norms are those of J^-1.
    r.aleph = inverse.cwiseAbs().rowwise().sum().maxCoeff();
    r.delta = (inverse * as_vector(f)).cwiseAbs().maxCoeff();
    r.lambda = lipschitz_bound(alpha0.size());
    r.rho = 2.0 * r.aleph * r.lambda * r.delta;
    if (r.rho <= 1.0) {
        r.t_star = 2.0 * r.delta / (1.0 + std::sqrt(1.0 - r.rho));
    }
    return r;
}

FitReport fit_alpha(std::span<const double> degrees, const FitOptions& opts) {
    const std::size_t n = degrees.size();
    if (n < 2) {
        throw Error(ErrorCode::invalid_input, "need at least 2 degrees");
    }
    if (!(opts.tol_residual > 0.0 && opts.tol_step > 0.0 && opts.max_iters >= 1 && opts.damping > 0.0 &&
          opts.damping <= 1.0)) {
        throw Error(ErrorCode::invalid_input, "invalid fit options");
    }
    check_interior(degrees);

    FitReport report;
    std::vector<double> alpha = initial_alpha(degrees, opts.boundary_epsilon);
    if (opts.kantorovich) {
        try {
            report.kantorovich = kantorovich_report(alpha, degrees);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::singular_matrix) {
                throw;
            }
        }
    }

    std::vector<double> f = moment_residual(alpha, degrees);
    double residual = max_abs(f);
    report.residual_trace.push_back(residual);

    int iter = 0;
    while (residual > opts.tol_residual) {
        if (iter >= opts.max_iters) {
            throw NoConvergenceError("Newton iteration did not reach tolerance in " +
                                         std::to_string(opts.max_iters) + " iterations",
                                     alpha, report.residual_trace);
        }
        ++iter;
        const Eigen::VectorXd step = newton_step(jacobian(alpha), as_vector(f), opts.solver);
        if (!step.allFinite()) {
            throw NoConvergenceError("Newton step is not finite", alpha, report.residual_trace);
        }

        double scale = opts.damping;
        bool accepted = false;
        std::vector<double> trial(n);
        std::vector<double> trial_f;
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = alpha[i] + scale * step(static_cast<Eigen::Index>(i));
            }
            trial_f = moment_residual(trial, degrees);
            if (max_abs(trial_f) <= residual) {
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) {
            throw NoConvergenceError("no step length decreases the residual", alpha, report.residual_trace);
        }
        const double step_norm = scale * step.cwiseAbs().maxCoeff();
        alpha.swap(trial);
        f.swap(trial_f);
        residual = max_abs(f);
        report.residual_trace.push_back(residual);
        if (step_norm <= opts.tol_step && residual > opts.tol_residual) {
            throw NoConvergenceError("Newton steps stalled above the residual tolerance", alpha,
                                     report.residual_trace);
        }
    }

    report.alpha_hat = std::move(alpha);
    report.converged = true;
    report.iterations = iter;
    report.max_residual = residual;
    report.q_hat = max_pair_sum(report.alpha_hat);
    return report;
}

double pair_moment(std::span<const double> alpha, PairIndex t, PairIndex s, Corr rho) {
    if (t == s) {
        throw Error(ErrorCode::invalid_pair, "pair moment needs two distinct pairs");
    }
    const std::size_t n = alpha.size();
    const auto [i, j] = index_to_pair(t, n);
    const auto [k, l] = index_to_pair(s, n);
    return bivariate_cdf(alpha[i] + alpha[j], alpha[k] + alpha[l], rho);
}

}  // namespace pnm
