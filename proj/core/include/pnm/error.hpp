#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pnm {

enum class ErrorCode {
    invalid_size,
    invalid_pair,
    invalid_index,
    domain,
    not_psd,
    invalid_spec,
    diagonal_query,
    self_loop,
    invalid_input,
    boundary_degree,
    no_convergence,
    singular_matrix,
    boundary_estimate,
    duplicate_edge,
    format,
};

/// Stable kebab-case name, used in machine-readable error output.
[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class NotPsdError : public Error {
public:
    NotPsdError(std::size_t pivot, double value);

    [[nodiscard]] std::size_t pivot() const noexcept { return pivot_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::size_t pivot_;
    double value_;
};

class BoundaryDegreeError : public Error {
public:
    BoundaryDegreeError(std::size_t node, double degree);

    [[nodiscard]] std::size_t node() const noexcept { return node_; }
    [[nodiscard]] double degree() const noexcept { return degree_; }

private:
    std::size_t node_;
    double degree_;
};

/// Carries the best iterate seen and the per-iteration max residual.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& what, std::vector<double> best_iterate,
                       std::vector<double> residual_trace);

    [[nodiscard]] const std::vector<double>& best_iterate() const noexcept { return best_; }
    [[nodiscard]] const std::vector<double>& residual_trace() const noexcept { return trace_; }

private:
    std::vector<double> best_;
    std::vector<double> trace_;
};

/// Root search found no sign change on the admissible bracket.
class BoundaryEstimateError : public Error {
public:
    BoundaryEstimateError(double g_low, double g_high);

    [[nodiscard]] double g_low() const noexcept { return g_low_; }
    [[nodiscard]] double g_high() const noexcept { return g_high_; }

private:
    double g_low_;
    double g_high_;
};

class FormatError : public Error {
public:
    FormatError(ErrorCode code, std::size_t line, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pnm
