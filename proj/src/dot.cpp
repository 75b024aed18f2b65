#include "reqtax/dot.hpp"

#include <sstream>

#include "reqtax/util.hpp"

namespace reqtax {

namespace {

const char* fill_color(Origin o) {
  switch (o) {
    case Origin::legal: return "yellow";
    case Origin::safety: return "green";
    case Origin::perception_legal_text: return "darkblue";
    case Origin::perception_dataset: return "lightblue";
    case Origin::deferred: return "orange";
  }
  return "yellow";
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const Taxonomy& tree) {
  std::ostringstream out;
  out << "digraph taxonomy {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=filled];\n";
  for (const auto& [id, node] : tree.nodes) {
    std::vector<std::string> escaped;
    escaped.reserve(node.display_names.size());
    for (const auto& name : node.display_names) escaped.push_back(escape(name));
    out << "  \"" << escape(id) << "\" [label=\"" << join(escaped, "\\n")
        << "\", fillcolor=" << fill_color(node.origin);
    if (node.origin == Origin::perception_legal_text) out << ", fontcolor=white";
    out << "];\n";
  }
  for (const auto& [id, node] : tree.nodes) {
    for (const auto& child : node.children) {
      out << "  \"" << escape(id) << "\" -> \"" << escape(child) << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace reqtax
