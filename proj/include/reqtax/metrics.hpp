#pragma once

#include <string>
#include <vector>

#include "reqtax/corpus.hpp"
#include "reqtax/lexicon.hpp"
#include "reqtax/taxonomy.hpp"

namespace reqtax {

/// Which nodes a matrix covers.
enum class Selection { leaves, legal, all };

std::string to_string(Selection s);
Selection selection_from_string(const std::string& s);

/// Node ids for a selection, sorted lexicographically. `leaves` means
/// childless nodes, `legal` the legal layer (deferred included), `all`
/// every node.
std::vector<std::string> select_nodes(const Taxonomy& tree, Selection selection);

std::string lca(const Taxonomy& tree, const std::string& a, const std::string& b);

/// Number of edges on the path between two nodes.
int tree_distance(const Taxonomy& tree, const std::string& a, const std::string& b);

/// Square distance matrix over the selected nodes, labels sorted.
struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> cells;
  bool operator==(const DistanceMatrix&) const = default;
};

/// Row-parallel when built with OpenMP.
DistanceMatrix distance_matrix(const Taxonomy& tree, Selection selection);

/// Straightforward single-threaded reference; kept for testing and the
/// benchmark tool.
DistanceMatrix distance_matrix_serial(const Taxonomy& tree, Selection selection);

/// Like distance_matrix, but each edge weighs the offense class of the
/// severest penalty among the requirements the child adds over its parent.
/// Safety and perception nodes add no requirements, so their edges weigh 0.
DistanceMatrix weighted_distance_matrix(const Taxonomy& tree, const SpecDocument& corpus,
                                        Selection selection);

/// Asymmetric confusion cost: cell[truth][predicted] names the offense
/// class of the severest requirement the predicted label misses.
struct SeverityTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> cells;
  bool operator==(const SeverityTable&) const = default;
};

SeverityTable severity_table(const Taxonomy& tree, const SpecDocument& corpus,
                             Selection selection);

/// Legal nodes with exactly one legal-origin child: the parent label could
/// stand in for the whole subtree. Velocity-critical subtrees are reported
/// but excluded.
struct ConservativeCandidate {
  std::string node_id;
  std::string child_id;
  std::string verdict;  // "candidate" or "excluded: velocity"
  bool operator==(const ConservativeCandidate&) const = default;
};

std::vector<ConservativeCandidate> conservative_candidates(const Taxonomy& tree);

/// One class of an external label set to compare against.
struct ExternalClass {
  std::string name;
  std::vector<std::string> synonyms;
};

std::vector<ExternalClass> parse_external(const std::string& json_text,
                                          const std::string& source_name = "external");

struct ComparisonReport {
  std::vector<std::pair<std::string, std::string>> exact;     // external -> node id
  std::vector<std::pair<std::string, std::string>> synonym;   // external -> node id
  std::vector<std::pair<std::string, std::string>> ancestor;  // external -> node id
  std::vector<std::string> unmatched;                         // external names
  std::vector<std::string> uncovered_internal;                // perception leaf node ids
  bool operator==(const ComparisonReport&) const = default;
};

/// Match external class names against the taxonomy: exact leaf-name match,
/// then synonym match through the lexicon, then mapping onto an ancestor via
/// the hypernym relation. Internal perception leaves nothing external maps
/// onto directly are listed as uncovered.
ComparisonReport compare_external(const Taxonomy& tree, const std::vector<ExternalClass>& external,
                                  const Lexicon& lexicon);

std::string matrix_to_csv(const DistanceMatrix& m);
std::string table_to_csv(const SeverityTable& t);
std::string comparison_to_json(const ComparisonReport& r);

}  // namespace reqtax
