#include "pnm/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "pnm/error.hpp"

namespace pnm {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double pivot_tolerance = 1e-10;
constexpr double zero_sum_tolerance = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::pair<NodeId, NodeId> decode(std::size_t t, std::size_t n, PairLayout layout) {
    return layout == PairLayout::undirected ? index_to_pair(PairIndex{t}, n)
                                            : ordered_index_to_pair(t, n);
}

double additive_entry(const AdditiveNode& a, std::size_t t, std::size_t s, std::size_t n,
                      PairLayout layout) {
    const auto [i, j] = decode(t, n, layout);
    const auto [k, l] = decode(s, n, layout);
    // Pair sums first so the entry is bitwise symmetric in (t, s).
    return a.sigma0 + ((a.sigma[i] + a.sigma[j]) + (a.sigma[k] + a.sigma[l]));
}

[[noreturn]] void invalid_spec(const std::string& what) {
    throw Error(ErrorCode::invalid_spec, what);
}

// Cholesky of a unit-diagonal correlation matrix, tolerating semidefinite
// input: pivots in [-tol, tiny] become exact zeros with a zero column.
RowMajorMatrix semidefinite_cholesky(const Eigen::MatrixXd& a) {
    const auto dim = a.rows();
    RowMajorMatrix l = RowMajorMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
        if (pivot < -pivot_tolerance) {
            throw NotPsdError(static_cast<std::size_t>(j), pivot);
        }
        if (pivot <= 1e-14) {
            continue;
        }
        const double root = std::sqrt(pivot);
        l(j, j) = root;
        for (Eigen::Index i = j + 1; i < dim; ++i) {
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / root;
        }
    }
    return l;
}

void check_dense_size(std::size_t n, const ValidateOptions& options, const char* what) {
    if (n > options.max_dense_nodes) {
        invalid_spec(std::string(what) + " needs a dense factorization; n=" + std::to_string(n) +
                     " exceeds the cap of " + std::to_string(options.max_dense_nodes) + " nodes");
    }
}

void check_off_diagonal(const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (!(std::abs(m(i, j)) < 1.0)) {
                invalid_spec("correlation (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") = " + std::to_string(m(i, j)) + " is outside (-1, 1)");
            }
        }
    }
}

}  // namespace

std::size_t latent_dimension(std::size_t n, PairLayout layout) {
    return layout == PairLayout::undirected ? num_pairs(n) : num_ordered_pairs(n);
}

double correlation_of(const CovarianceSpec& spec, std::size_t t, std::size_t s, std::size_t n,
                      PairLayout layout) {
    const std::size_t dim = latent_dimension(n, layout);
    if (t >= dim || s >= dim) {
        throw Error(ErrorCode::invalid_index, "latent index out of range");
    }
    if (t == s) {
        throw Error(ErrorCode::diagonal_query, "diagonal of Sigma is fixed at 1");
    }
    return std::visit(
        overloaded{
            [](const Independent&) { return 0.0; },
            [&](const PowerDecay& p) {
                const std::size_t lag = t > s ? t - s : s - t;
                return std::pow(p.sigma0, static_cast<double>(lag));
            },
            [](const Equicorrelated& e) { return e.rho; },
            [&](const AdditiveNode& a) {
                if (a.sigma.size() != n) {
                    invalid_spec("additive node effects need one entry per node");
                }
                return additive_entry(a, t, s, n, layout);
            },
            [&](const DenseExplicit& d) {
                if (static_cast<std::size_t>(d.matrix.rows()) != dim ||
                    static_cast<std::size_t>(d.matrix.cols()) != dim) {
                    invalid_spec("dense matrix dimension does not match the latent dimension");
                }
                return d.matrix(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
            },
        },
        spec);
}

Eigen::MatrixXd materialize(const CovarianceSpec& spec, std::size_t n, PairLayout layout) {
    const std::size_t dim = latent_dimension(n, layout);
    if (const auto* d = std::get_if<DenseExplicit>(&spec)) {
        return d->matrix;
    }
    const auto size = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(size, size);
    for (std::size_t t = 0; t < dim; ++t) {
        for (std::size_t s = t + 1; s < dim; ++s) {
            const double v = correlation_of(spec, t, s, n, layout);
            m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = v;
            m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = v;
        }
    }
    return m;
}

LatentCovariance::LatentCovariance(CovarianceSpec spec, std::size_t n, PairLayout layout)
    : spec_(std::move(spec)), nodes_(n), dimension_(latent_dimension(n, layout)), layout_(layout) {}

LatentCovariance validate(const CovarianceSpec& spec, std::size_t n, PairLayout layout,
                          ValidateOptions options) {
    LatentCovariance cov(spec, n, layout);
    const std::size_t dim = cov.dimension();

    std::visit(
        overloaded{
            [](const Independent&) {},
            [](const PowerDecay& p) {
                if (!(std::abs(p.sigma0) < 1.0)) {
                    invalid_spec("power-decay sigma0 must lie in (-1, 1)");
                }
            },
            [&](const Equicorrelated& e) {
                if (!(std::abs(e.rho) < 1.0)) {
                    invalid_spec("equicorrelation must lie in (-1, 1)");
                }
                // Cholesky pivots of (1-rho)I + rho 11^T in closed form:
                // d_0 = 1, d_k = (1-rho)(1+k rho)/(1+(k-1) rho).
                // The smallest eigenvalue is 1 + (N-1) rho.
                const double smallest = 1.0 + (static_cast<double>(dim) - 1.0) * e.rho;
                if (smallest < -pivot_tolerance) {
                    for (std::size_t k = 1; k < dim; ++k) {
                        const double kk = static_cast<double>(k);
                        if (1.0 + kk * e.rho < 0.0) {
                            const double denom = 1.0 + (kk - 1.0) * e.rho;
                            throw NotPsdError(
                                k, denom > 0.0 ? (1.0 - e.rho) * (1.0 + kk * e.rho) / denom : smallest);
                        }
                    }
                }
            },
            [&](const AdditiveNode& a) {
                if (a.sigma.size() != n) {
                    invalid_spec("additive node effects need one entry per node");
                }
                double total = 0.0;
                for (double v : a.sigma) {
                    total += v;
                }
                if (std::abs(total) > zero_sum_tolerance) {
                    invalid_spec("additive node effects must sum to zero, got " + std::to_string(total));
                }
                check_dense_size(n, options, "additive node covariance");
                const Eigen::MatrixXd m = materialize(a, n, layout);
                check_off_diagonal(m);
                cov.factor_ = std::make_shared<const RowMajorMatrix>(semidefinite_cholesky(m));
            },
            [&](const DenseExplicit& d) {
                const auto size = static_cast<Eigen::Index>(dim);
                if (d.matrix.rows() != size || d.matrix.cols() != size) {
                    invalid_spec("dense matrix is " + std::to_string(d.matrix.rows()) + "x" +
                                 std::to_string(d.matrix.cols()) + ", expected " +
                                 std::to_string(dim) + "x" + std::to_string(dim));
                }
                check_dense_size(n, options, "dense covariance");
                for (Eigen::Index i = 0; i < size; ++i) {
                    if (std::abs(d.matrix(i, i) - 1.0) > 1e-12) {
                        invalid_spec("dense matrix diagonal must be 1 (row " + std::to_string(i) + ")");
                    }
                    for (Eigen::Index j = i + 1; j < size; ++j) {
                        if (std::abs(d.matrix(i, j) - d.matrix(j, i)) > 1e-12) {
                            invalid_spec("dense matrix is not symmetric at (" + std::to_string(i) +
                                         ", " + std::to_string(j) + ")");
                        }
                    }
                }
                check_off_diagonal(d.matrix);
                cov.factor_ = std::make_shared<const RowMajorMatrix>(semidefinite_cholesky(d.matrix));
            },
        },
        spec);
    return cov;
}

void LatentCovariance::sample_into(RandomStream& rng, std::span<double> out) const {
    if (out.size() != dimension_) {
        throw Error(ErrorCode::invalid_input, "latent buffer size does not match the dimension");
    }
    const std::size_t dim = dimension_;
    std::visit(
        overloaded{
            [&](const Independent&) {
                for (double& u : out) {
                    u = rng.normal();
                }
            },
            [&](const PowerDecay& p) {
                const double innovation = std::sqrt(1.0 - p.sigma0 * p.sigma0);
                double prev = rng.normal();
                out[0] = prev;
                for (std::size_t t = 1; t < dim; ++t) {
                    prev = p.sigma0 * prev + innovation * rng.normal();
                    out[t] = prev;
                }
            },
            [&](const Equicorrelated& e) {
                // u = sqrt(1-rho) (eps - mean(eps) 1) + sqrt(1+(N-1)rho) mean(eps) 1
                const double nn = static_cast<double>(dim);
                double mean = 0.0;
                for (double& u : out) {
                    u = rng.normal();
                    mean += u;
                }
                mean /= nn;
                const double a = std::sqrt(1.0 - e.rho);
                const double b = std::sqrt(std::max(0.0, 1.0 + (nn - 1.0) * e.rho));
                for (double& u : out) {
                    u = a * (u - mean) + b * mean;
                }
            },
            [&](const auto&) {
                const RowMajorMatrix& l = *factor_;
                Eigen::VectorXd eps(static_cast<Eigen::Index>(dim));
                for (Eigen::Index i = 0; i < eps.size(); ++i) {
                    eps(i) = rng.normal();
                }
                for (Eigen::Index i = 0; i < eps.size(); ++i) {
                    out[static_cast<std::size_t>(i)] = l.row(i).head(i + 1).dot(eps.head(i + 1));
                }
            },
        },
        spec_);
}

std::vector<double> sample_latent(const LatentCovariance& cov, RandomStream& rng) {
    std::vector<double> u(cov.dimension());
    cov.sample_into(rng, u);
    return u;
}

DenseExplicit parse_dense_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::logic_error&) {
                throw FormatError(ErrorCode::format, line_no, "not a decimal number: '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw FormatError(ErrorCode::format, line_no, "ragged row in covariance CSV");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.size() != rows.front().size()) {
        throw FormatError(ErrorCode::format, line_no, "covariance CSV must be a square matrix");
    }
    const auto size = static_cast<Eigen::Index>(rows.size());
    DenseExplicit dense{Eigen::MatrixXd(size, size)};
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            dense.matrix(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return dense;
}

}  // namespace pnm
