#pragma once

#include <set>
#include <string>

#include "reqtax/leaves.hpp"
#include "reqtax/metrics.hpp"
#include "reqtax/safety.hpp"
#include "reqtax/taxonomy.hpp"

namespace reqtax {

struct BuildConfig {
  std::string corpus_path;
  std::string output_dir = ".";
  UnannotatedPolicy policy = UnannotatedPolicy::worst_case;
  std::set<std::string> emit = {"json", "dot", "matrix", "report"};
  bool strict = false;
  Selection matrix_selection = Selection::leaves;
};

struct BuildResult {
  Taxonomy tree;
  PlacementReport report;
  std::string summary;  // "legal=.. safety=.. perception=.. depth=.. unplaced=.."
};

/// Full build: parse, legal tree, safety augmentation, leaf placement.
/// Pure computation; writes nothing.
BuildResult run_build(const SpecDocument& corpus, UnannotatedPolicy policy);

std::string summarize(const Taxonomy& tree, const PlacementReport& report);
std::string placement_report_json(const PlacementReport& report,
                                  const std::vector<ConservativeCandidate>& conservative);

/// Subcommand drivers. Each returns the process exit code: 0 success,
/// 1 invalid input, 2 only from cmd_build under strict mode when a leaf
/// was ambiguous.
int cmd_build(const BuildConfig& config);
int cmd_metrics(const std::string& taxonomy_path, Selection selection);
int cmd_compare(const std::string& taxonomy_path, const std::string& external_path,
                const std::string& lexicon_path);
int cmd_validate(const std::string& corpus_path);

}  // namespace reqtax
