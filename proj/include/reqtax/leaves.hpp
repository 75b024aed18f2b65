#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reqtax/corpus.hpp"
#include "reqtax/safety.hpp"
#include "reqtax/taxonomy.hpp"

namespace reqtax {

struct PlacedLeaf {
  std::string name;
  std::string parent_id;
  std::string node_id;
  bool operator==(const PlacedLeaf&) const = default;
};

struct UnplacedLeaf {
  std::string name;
  std::string reason;
  bool operator==(const UnplacedLeaf&) const = default;
};

struct PlacementReport {
  std::vector<PlacedLeaf> placed;
  std::vector<UnplacedLeaf> unplaced;
  bool operator==(const PlacementReport&) const = default;
};

/// Where a single leaf candidate would go, or why it cannot be placed.
/// Does not modify the tree.
struct PlacementDecision {
  std::optional<std::string> parent_id;
  std::string reason;  // set when parent_id is empty
};

PlacementDecision place_leaf(const Taxonomy& tree, const SpecDocument& corpus,
                             const LeafCandidate& candidate,
                             UnannotatedPolicy policy = UnannotatedPolicy::worst_case);

/// Insert all leaf candidates: legal-text candidates first, then dataset
/// candidates, lexicographically by name within each group. A candidate
/// whose name already exists under the chosen parent merges into that leaf
/// (provenance union) instead of duplicating it.
PlacementReport add_leaves(Taxonomy& tree, const SpecDocument& corpus,
                           UnannotatedPolicy policy = UnannotatedPolicy::worst_case);

}  // namespace reqtax
