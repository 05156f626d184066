#include "pnm/graph.hpp"

#include <string>

#include "pnm/error.hpp"

namespace pnm {

namespace {
void check_nodes(NodeId i, NodeId j, std::size_t n) {
    if (i == j) {
        throw Error(ErrorCode::self_loop, "self-loop at node " + std::to_string(i));
    }
    if (i >= n || j >= n) {
        throw Error(ErrorCode::invalid_pair, "node id out of range for n=" + std::to_string(n));
    }
}
}  // namespace

Graph::Graph(std::size_t n) : n_(n), adjacency_(num_pairs(n), false), degrees_(n, 0) {}

bool Graph::has_edge(NodeId i, NodeId j) const {
    check_nodes(i, j, n_);
    if (i > j) {
        std::swap(i, j);
    }
    return adjacency_[pair_offset_unchecked(i, j, n_)];
}

bool Graph::add_edge(NodeId i, NodeId j) {
    check_nodes(i, j, n_);
    if (i > j) {
        std::swap(i, j);
    }
    auto bit = adjacency_[pair_offset_unchecked(i, j, n_)];
    if (bit) {
        return false;
    }
    bit = true;
    ++degrees_[i];
    ++degrees_[j];
    ++edges_;
    return true;
}

std::vector<double> Graph::degree_targets() const {
    return {degrees_.begin(), degrees_.end()};
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edges_);
    std::size_t t = 0;
    for (NodeId i = 0; i < n_; ++i) {
        for (NodeId j = i + 1; j < n_; ++j, ++t) {
            if (adjacency_[t]) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

DirectedGraph::DirectedGraph(std::size_t n)
    : n_(n), adjacency_(num_ordered_pairs(n), false), out_(n, 0), in_(n, 0) {}

bool DirectedGraph::has_edge(NodeId from, NodeId to) const {
    check_nodes(from, to, n_);
    return adjacency_[ordered_pair_offset_unchecked(from, to, n_)];
}

bool DirectedGraph::add_edge(NodeId from, NodeId to) {
    check_nodes(from, to, n_);
    auto bit = adjacency_[ordered_pair_offset_unchecked(from, to, n_)];
    if (bit) {
        return false;
    }
    bit = true;
    ++out_[from];
    ++in_[to];
    ++edges_;
    return true;
}

}  // namespace pnm
