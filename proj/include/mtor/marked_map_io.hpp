#pragma once

#include <iosfwd>
#include <string>

#include "mtor/graph.hpp"

namespace mtor {

// Line-oriented marked-map format:
//
//   # comment to end of line
//   vertices: v0 v1 ...
//   edge <name> <v_init> <v_term>
//   map <name> = <edge path>
//   boundary = <edge path>
//
// Edge paths are whitespace-separated tokens, "~x" for the reverse of x.
MarkedMap parse_marked_map(std::istream& in);
MarkedMap parse_marked_map_text(const std::string& text);
MarkedMap load_marked_map(const std::string& path);

std::string format_marked_map(const MarkedMap& mm);

} // namespace mtor
