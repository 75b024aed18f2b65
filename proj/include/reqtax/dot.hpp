#pragma once

#include <string>

#include "reqtax/taxonomy.hpp"

namespace reqtax {

/// Graphviz rendering, one color per node origin. Output is byte-stable:
/// nodes and edges appear in sorted order.
std::string export_dot(const Taxonomy& tree);

}  // namespace reqtax
