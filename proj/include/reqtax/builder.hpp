#pragma once

#include <string>
#include <vector>

#include "reqtax/corpus.hpp"
#include "reqtax/taxonomy.hpp"

namespace reqtax {

/// Category after hyponym inheritance and identical-set merging.
struct MergedCategory {
  std::vector<std::string> names;  // sorted union of merged category names
  RequirementSet requirements;
  bool velocity_critical = false;  // any merged member flagged
  bool deferred = false;           // all merged members deferred

  bool operator==(const MergedCategory&) const = default;
};

/// Add to every category the requirements of each category whose term lies
/// in its hypernym closure (general obligations propagate to subcategories).
/// Categories without a term pass through unchanged; input order preserved.
std::vector<CategorySpec> expand_inheritance(const std::vector<CategorySpec>& categories,
                                             const Lexicon& lexicon);

/// Merge categories with equal requirement sets into one entry per distinct
/// set; output sorted by canonical serialized set.
std::vector<MergedCategory> merge_identical(const std::vector<CategorySpec>& categories);

/// Legal-layer nodes whose sets are proper subsets of new_set and maximal
/// under inclusion among those subsets, sorted by node id. The root survives
/// only when it is the sole subset. Throws Error if new_set already names a
/// legal node.
std::vector<std::string> parent_candidates(const Taxonomy& tree, const RequirementSet& new_set);

/// Among the candidates, pick the one whose complement new_set \ candidate
/// carries the severest penalty; ties resolved to the smallest node id.
std::string select_parent(const SpecDocument& corpus, const std::vector<std::string>& candidates,
                          const RequirementSet& new_set, const Taxonomy& tree);

/// Order of insertion inside one cardinality tier. The resulting tree is
/// tier-order independent (every proper subset has a smaller cardinality),
/// so `canonical` only fixes diagnostics and id-suffix assignment.
enum class TierOrder { canonical, as_given };

/// Iteratively insert the merged categories, smallest requirement sets
/// first, under the no-regulation root. Precondition: `categories` already
/// passed expand_inheritance + merge_identical.
Taxonomy build_legal_tree(const SpecDocument& corpus, const std::vector<MergedCategory>& categories,
                          TierOrder tier_order = TierOrder::canonical);

/// expand_inheritance + merge_identical + build_legal_tree.
Taxonomy build_legal_taxonomy(const SpecDocument& corpus);

}  // namespace reqtax
