#include "modk/graph_io.hpp"

#include <sstream>

namespace modk {

namespace {

// Content lines with their 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text)
{
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto last = line.find_last_not_of(" \t\r");
        out.emplace_back(no, line.substr(first, last - first + 1));
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what)
{
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

MultiGraph parse_graph(const std::string& text)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError("empty graph file");
    std::istringstream head(lines[0].second);
    std::string tag, extra;
    long long n = -1, m = -1;
    if (!(head >> tag >> n >> m) || tag != "mg" || (head >> extra))
        fail(lines[0].first, "expected 'mg <n> <m>'");
    if (n < 0 || m < 0 || n > 64)
        fail(lines[0].first, "vertex count must be in [0, 64] and edge count nonnegative");
    if (static_cast<long long>(lines.size()) - 1 != m)
        fail(lines.back().first, "expected " + std::to_string(m) + " edge lines, found " +
                                     std::to_string(lines.size() - 1));
    MultiGraph g(static_cast<int>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream in(lines[i].second);
        long long u = -1, v = -1;
        if (!(in >> tag >> u >> v) || tag != "e" || (in >> extra))
            fail(lines[i].first, "expected 'e <u> <v>'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail(lines[i].first, "vertex out of range");
        if (u == v)
            fail(lines[i].first, "loops are not allowed");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return g;
}

std::string format_graph(const MultiGraph& g)
{
    std::ostringstream out;
    out << "mg " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges())
        out << "e " << e.u << ' ' << e.v << '\n';
    return out.str();
}

Orientation parse_orientation(const MultiGraph& g, const std::string& text)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError("empty orientation file");
    std::istringstream head(lines[0].second);
    std::string tag;
    long long m = -1;
    if (!(head >> tag >> m) || tag != "or")
        fail(lines[0].first, "expected 'or <m>'");
    if (m != g.edge_count())
        fail(lines[0].first, "orientation has " + std::to_string(m) + " edges, graph has " +
                                 std::to_string(g.edge_count()));
    if (static_cast<long long>(lines.size()) - 1 != m)
        fail(lines.back().first, "expected " + std::to_string(m) + " direction lines");
    Orientation d(g);
    auto ids = g.edge_ids();
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& s = lines[i].second;
        if (s != "+" && s != "-")
            fail(lines[i].first, "expected '+' or '-'");
        d.set(ids[i - 1], s == "+" ? Dir::forward : Dir::backward);
    }
    return d;
}

std::string format_orientation(const MultiGraph& g, const Orientation& d)
{
    std::ostringstream out;
    out << "or " << g.edge_count() << '\n';
    for (auto e : g.edge_ids()) {
        if (!d.is_set(e))
            throw std::invalid_argument("format_orientation: edge " + std::to_string(e) + " is not oriented");
        out << (d.get(e) == Dir::forward ? '+' : '-') << '\n';
    }
    return out.str();
}

std::string format_edge_set(const std::vector<EdgeId>& edges)
{
    std::ostringstream out;
    out << "es " << edges.size() << '\n';
    for (auto e : edges)
        out << e << '\n';
    return out.str();
}

}  // namespace modk
