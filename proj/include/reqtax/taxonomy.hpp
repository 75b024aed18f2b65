#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reqtax/requirement_set.hpp"

namespace reqtax {

enum class Origin {
  legal,
  safety,
  perception_legal_text,
  perception_dataset,
  deferred,
};

std::string to_string(Origin o);
std::optional<Origin> origin_from_string(const std::string& s);

/// Legal-layer nodes carry the subset-lattice semantics; deferred nodes are
/// legal placeholders whose interior is intentionally not expanded.
inline bool is_legal_layer(Origin o) { return o == Origin::legal || o == Origin::deferred; }
inline bool is_perception(Origin o) {
  return o == Origin::perception_legal_text || o == Origin::perception_dataset;
}

struct TaxonomyNode {
  std::string id;
  std::vector<std::string> display_names;  // sorted, non-empty
  RequirementSet requirements;
  Origin origin = Origin::legal;
  std::vector<std::string> children;  // sorted node ids

  /// Safety nodes: the member names partitioned into this split group.
  std::vector<std::string> members;
  /// Perception leaves: source tags ("legal_text", "dataset:<name>").
  std::vector<std::string> provenance;
  bool velocity_critical = false;

  bool operator==(const TaxonomyNode&) const = default;
};

/// Rooted tree of categories. The root is the empty-requirement-set
/// "no regulation" node. Immutable by convention once built; all operations
/// in this project take it by const reference.
struct Taxonomy {
  std::string root;
  std::map<std::string, TaxonomyNode> nodes;

  const TaxonomyNode& at(const std::string& id) const;
  bool has(const std::string& id) const { return nodes.count(id) != 0; }

  bool operator==(const Taxonomy&) const = default;
};

/// child id -> parent id (root absent).
std::map<std::string, std::string> parent_map(const Taxonomy& t);

/// Edge depth per node (root = 0).
std::map<std::string, int> depth_map(const Taxonomy& t);

/// Number of levels: max edge depth + 1. A root-only tree has depth 1.
int level_depth(const Taxonomy& t);

/// Names a node can be matched by: safety nodes expose their member
/// partition, every other node its display names.
const std::vector<std::string>& match_names(const TaxonomyNode& n);

/// Check every structural invariant. Returns human-readable violations,
/// empty when the taxonomy is valid:
///  - exactly one root, empty requirement set, legal origin;
///  - tree shape (single parent, acyclic, fully reachable, children sorted);
///  - legal layer: unique sets, proper-subset chains, no skipped node
///    (no legal X with parent.set c X.set c child.set strictly);
///  - safety/perception nodes carry their parent's set unchanged;
///  - perception nodes are leaves with provenance;
///  - deferred nodes restricted to the two placeholder names.
std::vector<std::string> validate_taxonomy(const Taxonomy& t);

/// Throws Error listing all violations.
void require_valid(const Taxonomy& t, const std::string& where = "taxonomy");

/// Byte-deterministic interchange JSON (sorted keys, two-space indent,
/// trailing newline).
std::string export_json(const Taxonomy& t);

/// Inverse of export_json; validates the result. Unknown keys rejected.
Taxonomy import_json(const std::string& json_text, const std::string& source_name = "taxonomy");

}  // namespace reqtax
