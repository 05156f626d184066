#include "pnm/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "pnm/error.hpp"

namespace pnm {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') {
            ++pos;
        }
        if (pos > start) {
            tokens.push_back(line.substr(start, pos - start));
        }
    }
    return tokens;
}

std::size_t parse_id(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw FormatError(ErrorCode::format, line, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    std::optional<Graph> graph;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty() && line.front() == '#') {
            continue;
        }
        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        if (!graph) {
            if (tokens.size() != 2 || tokens[0] != "n") {
                throw FormatError(ErrorCode::format, line_no, "expected header 'n <int>'");
            }
            const std::size_t n = parse_id(tokens[1], line_no);
            if (n < 2) {
                throw FormatError(ErrorCode::format, line_no, "graph needs at least 2 nodes");
            }
            graph.emplace(n);
            continue;
        }
        if (tokens.size() != 2) {
            throw FormatError(ErrorCode::format, line_no, "expected an edge '<i> <j>'");
        }
        const std::size_t i = parse_id(tokens[0], line_no);
        const std::size_t j = parse_id(tokens[1], line_no);
        if (i == j) {
            throw FormatError(ErrorCode::format, line_no, "self-loop at node " + std::to_string(i));
        }
        if (i >= graph->nodes() || j >= graph->nodes()) {
            throw FormatError(ErrorCode::format, line_no, "node id out of range");
        }
        if (!graph->add_edge(i, j)) {
            throw FormatError(ErrorCode::duplicate_edge, line_no,
                              "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
        }
    }
    if (!graph) {
        throw FormatError(ErrorCode::format, line_no, "missing header 'n <int>'");
    }
    return std::move(*graph);
}

std::string write_edge_list(const Graph& graph) {
    std::string out = "n " + std::to_string(graph.nodes()) + "\n";
    for (const auto& [i, j] : graph.edges()) {
        out += std::to_string(i);
        out += ' ';
        out += std::to_string(j);
        out += '\n';
    }
    return out;
}

Graph read_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_edge_list(buffer.str());
}

void write_edge_list_file(const std::filesystem::path& path, const Graph& graph) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
    }
    out << write_edge_list(graph);
}

}  // namespace pnm
