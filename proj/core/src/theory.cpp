#include "pnm/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pnm/error.hpp"
#include "pnm/estimate.hpp"
#include "pnm/normal.hpp"

namespace pnm {

MatrixClassParams jacobian_class_bounds(double q) {
    return {std_normal_pdf(q), inv_sqrt_2pi};
}

bool matrix_class_check(const Eigen::MatrixXd& v, MatrixClassParams params) {
    const auto n = v.rows();
    if (v.cols() != n) {
        return false;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const double x = v(i, j);
            if (!(x >= params.m && x <= params.M)) {
                return false;
            }
            row_sum += x;
        }
        if (std::abs(v(i, i) - row_sum) > 1e-10 * std::max(1.0, std::abs(row_sum))) {
            return false;
        }
    }
    return true;
}

double inverse_approx_error_bound(std::size_t n, double m, double M) {
    if (n < 3) {
        throw Error(ErrorCode::invalid_size, "inverse approximation bound needs n >= 3");
    }
    if (!(m > 0.0 && M >= m)) {
        throw Error(ErrorCode::invalid_input, "class bounds need 0 < m <= M");
    }
    const double nn = static_cast<double>(n);
    const double n1sq = (nn - 1.0) * (nn - 1.0);
    return M * (nn * M + (nn - 2.0) * m) / (2.0 * m * m * m * (nn - 2.0) * n1sq) + 1.0 / (2.0 * m * n1sq) +
           1.0 / (m * nn * (nn - 1.0));
}

Eigen::VectorXd diag_inverse_approx(const Eigen::MatrixXd& v) {
    Eigen::VectorXd s(v.rows());
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (v(i, i) == 0.0) {
            throw Error(ErrorCode::singular_matrix, "zero diagonal entry at row " + std::to_string(i));
        }
        s(i) = 1.0 / v(i, i);
    }
    return s;
}

double inverse_approx_error(const Eigen::MatrixXd& v) {
    Eigen::MatrixXd w = v.partialPivLu().inverse();
    w.diagonal() -= diag_inverse_approx(v);
    return w.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd random_class_matrix(std::size_t n, MatrixClassParams params, RandomStream& rng) {
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = i + 1; j < size; ++j) {
            const double x = rng.uniform(params.m, params.M);
            v(i, j) = x;
            v(j, i) = x;
        }
    }
    for (Eigen::Index i = 0; i < size; ++i) {
        v(i, i) = v.row(i).sum();
    }
    return v;
}

double lipschitz_bound(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::invalid_size, "Lipschitz bound needs n >= 2");
    }
    return static_cast<double>(n - 1) * std::sqrt(2.0 / (std::numbers::e * std::numbers::pi));
}

double jacobian_variation_ratio(std::span<const double> x, std::span<const double> y, std::span<const double> v) {
    if (x.size() != y.size() || x.size() != v.size()) {
        throw Error(ErrorCode::invalid_input, "x, y and v must have equal length");
    }
    const Eigen::MatrixXd diff = jacobian(x) - jacobian(y);
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
    double dx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dx = std::max(dx, std::abs(x[i] - y[i]));
    }
    return (diff * vv).cwiseAbs().maxCoeff() / dx;
}

double concentration_threshold(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::invalid_size, "concentration threshold needs n >= 2");
    }
    const double nn = static_cast<double>(n);
    return std::sqrt(nn * std::log(nn));
}

double pa_correlation_threshold(std::size_t n, std::size_t r) {
    if (!(r >= 1 && r < n)) {
        throw Error(ErrorCode::invalid_input, "need 1 <= r < n");
    }
    return std::exp(-(8.0 / 3.0) * std::sqrt(static_cast<double>(r) * std::log(static_cast<double>(n))));
}

std::uint64_t count_two_stars(const Graph& graph) {
    std::uint64_t total = 0;
    for (std::size_t d : graph.degrees()) {
        total += static_cast<std::uint64_t>(d) * (d > 0 ? d - 1 : 0) / 2;
    }
    return total;
}

std::uint64_t count_triangles(const Graph& graph) {
    const std::size_t n = graph.nodes();
    const auto& adj = graph.adjacency();
    std::uint64_t total = 0;
    if (n <= 500) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!adj[pair_offset_unchecked(i, j, n)]) {
                    continue;
                }
                for (std::size_t k = j + 1; k < n; ++k) {
                    if (adj[pair_offset_unchecked(i, k, n)] && adj[pair_offset_unchecked(j, k, n)]) {
                        ++total;
                    }
                }
            }
        }
        return total;
    }
    // Upper neighbour sets as bitsets; each triangle i<j<k counted once at (i, j).
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> upper(n * words, 0);
    for (const auto& [i, j] : graph.edges()) {
        upper[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!adj[pair_offset_unchecked(i, j, n)]) {
                continue;
            }
            for (std::size_t w = j / 64; w < words; ++w) {
                total += static_cast<std::uint64_t>(std::popcount(upper[i * words + w] & upper[j * words + w]));
            }
        }
    }
    return total;
}

double degree_deviation(const Graph& graph, const NodeParams& params) {
    if (params.size() != graph.nodes()) {
        throw Error(ErrorCode::invalid_input, "parameter length does not match the graph");
    }
    const std::vector<double> f = moment_residual(params.alpha, graph.degree_targets());
    double worst = 0.0;
    for (double x : f) {
        worst = std::max(worst, std::abs(x));
    }
    return worst;
}

}  // namespace pnm
