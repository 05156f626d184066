#include "pnm/error.hpp"

#include <sstream>
#include <utility>

namespace pnm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_size: return "invalid-size";
        case ErrorCode::invalid_pair: return "invalid-pair";
        case ErrorCode::invalid_index: return "invalid-index";
        case ErrorCode::domain: return "domain";
        case ErrorCode::not_psd: return "not-positive-semidefinite";
        case ErrorCode::invalid_spec: return "invalid-spec";
        case ErrorCode::diagonal_query: return "diagonal-query";
        case ErrorCode::self_loop: return "self-loop";
        case ErrorCode::invalid_input: return "invalid-input";
        case ErrorCode::boundary_degree: return "boundary-degree";
        case ErrorCode::no_convergence: return "no-convergence";
        case ErrorCode::singular_matrix: return "singular-matrix";
        case ErrorCode::boundary_estimate: return "boundary-estimate";
        case ErrorCode::duplicate_edge: return "duplicate-edge";
        case ErrorCode::format: return "format";
    }
    return "unknown";
}

namespace {
std::string not_psd_message(std::size_t pivot, double value) {
    std::ostringstream os;
    os << "covariance is not positive semidefinite: Cholesky pivot " << pivot << " is " << value;
    return os.str();
}

std::string boundary_degree_message(std::size_t node, double degree) {
    std::ostringstream os;
    os << "node " << node << " has boundary degree " << degree
       << "; the moment equations have no finite solution";
    return os.str();
}

std::string boundary_estimate_message(double lo, double hi) {
    std::ostringstream os;
    os << "moment function has no sign change on the correlation bracket (g(low)=" << lo
       << ", g(high)=" << hi << ")";
    return os.str();
}

std::string line_message(std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << "line " << line << ": " << what;
    return os.str();
}
}  // namespace

NotPsdError::NotPsdError(std::size_t pivot, double value)
    : Error(ErrorCode::not_psd, not_psd_message(pivot, value)), pivot_(pivot), value_(value) {}

BoundaryDegreeError::BoundaryDegreeError(std::size_t node, double degree)
    : Error(ErrorCode::boundary_degree, boundary_degree_message(node, degree)),
      node_(node),
      degree_(degree) {}

NoConvergenceError::NoConvergenceError(const std::string& what, std::vector<double> best_iterate,
                                       std::vector<double> residual_trace)
    : Error(ErrorCode::no_convergence, what),
      best_(std::move(best_iterate)),
      trace_(std::move(residual_trace)) {}

BoundaryEstimateError::BoundaryEstimateError(double g_low, double g_high)
    : Error(ErrorCode::boundary_estimate, boundary_estimate_message(g_low, g_high)),
      g_low_(g_low),
      g_high_(g_high) {}

FormatError::FormatError(ErrorCode code, std::size_t line, const std::string& what)
    : Error(code, line_message(line, what)), line_(line) {}

}  // namespace pnm
