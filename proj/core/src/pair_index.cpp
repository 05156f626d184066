#include "pnm/pair_index.hpp"

#include <cmath>
#include <string>

#include "pnm/error.hpp"

namespace pnm {

std::size_t num_pairs(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::invalid_size, "need at least 2 nodes, got " + std::to_string(n));
    }
    return n * (n - 1) / 2;
}

PairIndex pair_to_index(NodeId i, NodeId j, std::size_t n) {
    if (!(i < j && j < n)) {
        throw Error(ErrorCode::invalid_pair, "invalid node pair (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ") for n=" + std::to_string(n));
    }
    return PairIndex{pair_offset_unchecked(i, j, n)};
}

std::pair<NodeId, NodeId> index_to_pair(PairIndex t, std::size_t n) {
    const std::size_t total = num_pairs(n);
    if (t.value >= total) {
        throw Error(ErrorCode::invalid_index, "pair index " + std::to_string(t.value) +
                                                  " out of range for n=" + std::to_string(n));
    }
    // Row i starts at start(i) = i*n - i(i+1)/2. Invert the quadratic for a
    // first guess, then correct for rounding.
    const double nn = static_cast<double>(n);
    const double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(t.value);
    auto i = static_cast<std::size_t>(std::floor(((2.0 * nn - 1.0) - std::sqrt(disc)) / 2.0));
    auto start = [n](std::size_t row) { return row * n - row * (row + 1) / 2; };
    if (i > n - 2) {
        i = n - 2;
    }
    while (i > 0 && start(i) > t.value) {
        --i;
    }
    while (i + 1 <= n - 2 && start(i + 1) <= t.value) {
        ++i;
    }
    const std::size_t j = t.value - start(i) + i + 1;
    return {i, j};
}

std::size_t num_ordered_pairs(std::size_t n) {
    return 2 * num_pairs(n);
}

std::pair<NodeId, NodeId> ordered_index_to_pair(std::size_t t, std::size_t n) {
    if (t >= num_ordered_pairs(n)) {
        throw Error(ErrorCode::invalid_index, "ordered pair index " + std::to_string(t) +
                                                  " out of range for n=" + std::to_string(n));
    }
    const std::size_t i = t / (n - 1);
    const std::size_t r = t % (n - 1);
    return {i, r < i ? r : r + 1};
}

}  // namespace pnm
