#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

namespace pnm {

using NodeId = std::size_t;

/// 0-based lexicographic position of the unordered pair (i, j), i < j, among
/// the n(n-1)/2 pairs of an n-node graph. This is the coordinate of the latent
/// utility u_ij and the row/column of its covariance matrix.
///
/// The 1-based textbook form is [(n-1) + ... + (n-(i-1))] + j - i with
/// 1-based nodes; relabelling i -> i+1 and subtracting one gives
/// t = i*n - i(i+1)/2 + (j - i - 1).
struct PairIndex {
    std::size_t value = 0;

    friend constexpr bool operator==(PairIndex, PairIndex) = default;
    friend constexpr auto operator<=>(PairIndex, PairIndex) = default;
};

/// n(n-1)/2; throws invalid_size for n < 2.
[[nodiscard]] std::size_t num_pairs(std::size_t n);

/// Throws invalid_pair unless i < j < n.
[[nodiscard]] PairIndex pair_to_index(NodeId i, NodeId j, std::size_t n);

/// Inverse of pair_to_index; throws invalid_index for t >= num_pairs(n).
[[nodiscard]] std::pair<NodeId, NodeId> index_to_pair(PairIndex t, std::size_t n);

/// Unchecked forms for inner loops that already validated their inputs.
[[nodiscard]] constexpr std::size_t pair_offset_unchecked(NodeId i, NodeId j, std::size_t n) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Row-major position of the ordered pair (i, j), i != j, among the n(n-1)
/// ordered pairs with the diagonal skipped. Used for directed latent vectors.
[[nodiscard]] constexpr std::size_t ordered_pair_offset_unchecked(NodeId i, NodeId j,
                                                                  std::size_t n) noexcept {
    return i * (n - 1) + (j < i ? j : j - 1);
}

[[nodiscard]] std::size_t num_ordered_pairs(std::size_t n);
[[nodiscard]] std::pair<NodeId, NodeId> ordered_index_to_pair(std::size_t t, std::size_t n);

}  // namespace pnm
