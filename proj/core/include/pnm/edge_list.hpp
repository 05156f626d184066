#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pnm/graph.hpp"

namespace pnm {

/// Parses the edge-list text format:
///
///     # comment lines start with '#'
///     n <node count>
///     <i> <j>
///     ...
///
/// Either endpoint order is accepted. Throws FormatError carrying the
/// 1-based line number: code `duplicate_edge` for a repeated edge, `format`
/// for everything else (missing header, bad token, self-loop, id >= n).
[[nodiscard]] Graph parse_edge_list(std::string_view text);

/// Canonical form: header, then edges `i j` with i < j in lexicographic
/// order, one per line, each line terminated by '\n'.
[[nodiscard]] std::string write_edge_list(const Graph& graph);

[[nodiscard]] Graph read_edge_list_file(const std::filesystem::path& path);
void write_edge_list_file(const std::filesystem::path& path, const Graph& graph);

}  // namespace pnm
