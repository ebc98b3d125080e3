#pragma once

#include "modk/graph.hpp"

#include <stdexcept>
#include <string>

namespace modk {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "mg <n> <m>" then m lines "e <u> <v>"; ids follow file order. Blank lines
// and lines starting with '#' are skipped.
MultiGraph parse_graph(const std::string& text);
// Edges in ascending id order, so ids are renumbered densely.
std::string format_graph(const MultiGraph& g);

// "or <m>" then one '+' (u -> v) or '-' (v -> u) per edge in id order.
Orientation parse_orientation(const MultiGraph& g, const std::string& text);
std::string format_orientation(const MultiGraph& g, const Orientation& d);

// "es <m>" then one id per line.
std::string format_edge_set(const std::vector<EdgeId>& edges);

}  // namespace modk
