#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pnm/pair_index.hpp"

namespace pnm {

/// Simple undirected graph on nodes 0..n-1. Adjacency is one bit per
/// unordered pair, addressed by PairIndex; degrees are kept in sync.
class Graph {
public:
    /// Empty graph; throws invalid_size for n < 2.
    explicit Graph(std::size_t n);

    [[nodiscard]] std::size_t nodes() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_; }

    /// Either argument order; throws self_loop for i == j.
    [[nodiscard]] bool has_edge(NodeId i, NodeId j) const;
    [[nodiscard]] bool has_edge(PairIndex t) const { return adjacency_[t.value]; }

    /// Returns false (and leaves the graph unchanged) if the edge already exists.
    bool add_edge(NodeId i, NodeId j);

    [[nodiscard]] const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }

    /// Degrees as reals, the form the moment equations take.
    [[nodiscard]] std::vector<double> degree_targets() const;

    [[nodiscard]] const std::vector<bool>& adjacency() const noexcept { return adjacency_; }

    /// Edges (i, j), i < j, in lexicographic order.
    [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t n_;
    std::size_t edges_ = 0;
    std::vector<bool> adjacency_;
    std::vector<std::size_t> degrees_;
};

/// Directed graph without self-loops; adjacency over the row-major ordered
/// pair enumeration.
class DirectedGraph {
public:
    explicit DirectedGraph(std::size_t n);

    [[nodiscard]] std::size_t nodes() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_; }
    [[nodiscard]] bool has_edge(NodeId from, NodeId to) const;
    bool add_edge(NodeId from, NodeId to);

    [[nodiscard]] const std::vector<std::size_t>& out_degrees() const noexcept { return out_; }
    [[nodiscard]] const std::vector<std::size_t>& in_degrees() const noexcept { return in_; }

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
    std::size_t n_;
    std::size_t edges_ = 0;
    std::vector<bool> adjacency_;
    std::vector<std::size_t> out_;
    std::vector<std::size_t> in_;
};

}  // namespace pnm
