#include "reqtax/pipeline.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "reqtax/builder.hpp"
#include "reqtax/corpus.hpp"
#include "reqtax/dot.hpp"
#include "reqtax/util.hpp"

namespace reqtax {

BuildResult run_build(const SpecDocument& corpus, UnannotatedPolicy policy) {
  BuildResult result;
  result.tree = build_legal_taxonomy(corpus);
  augment_safety(result.tree, corpus, policy);
  result.report = add_leaves(result.tree, corpus, policy);
  require_valid(result.tree);
  result.summary = summarize(result.tree, result.report);
  return result;
}

std::string summarize(const Taxonomy& tree, const PlacementReport& report) {
  int legal = 0, safety = 0, perception = 0;
  for (const auto& [id, node] : tree.nodes) {
    if (is_legal_layer(node.origin)) ++legal;
    else if (node.origin == Origin::safety) ++safety;
    else ++perception;
  }
  std::ostringstream out;
  out << "legal=" << legal << " safety=" << safety << " perception=" << perception
      << " depth=" << level_depth(tree) << " unplaced=" << report.unplaced.size() << "\n";
  out << "legal_excluding_root=" << (legal - 1) << "\n";
  return out.str();
}

std::string placement_report_json(const PlacementReport& report,
                                  const std::vector<ConservativeCandidate>& conservative) {
  nlohmann::json j;
  j["placed"] = nlohmann::json::array();
  for (const auto& p : report.placed) {
    j["placed"].push_back({{"name", p.name}, {"node", p.node_id}, {"parent", p.parent_id}});
  }
  j["unplaced"] = nlohmann::json::array();
  for (const auto& u : report.unplaced) {
    j["unplaced"].push_back({{"name", u.name}, {"reason", u.reason}});
  }
  j["conservative_estimates"] = nlohmann::json::array();
  for (const auto& c : conservative) {
    j["conservative_estimates"].push_back(
        {{"node", c.node_id}, {"child", c.child_id}, {"verdict", c.verdict}});
  }
  return j.dump(2) + "\n";
}

namespace {

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

}  // namespace

int cmd_build(const BuildConfig& config) {
  try {
    SpecDocument corpus = parse_spec(read_file(config.corpus_path), config.corpus_path);
    BuildResult result = run_build(corpus, config.policy);

    std::filesystem::create_directories(config.output_dir);
    auto out_path = [&](const std::string& name) {
      return (std::filesystem::path(config.output_dir) / name).string();
    };
    if (config.emit.count("json"))
      write_file(out_path("taxonomy.json"), export_json(result.tree));
    if (config.emit.count("dot")) write_file(out_path("taxonomy.dot"), export_dot(result.tree));
    if (config.emit.count("matrix")) {
      write_file(out_path("distance_matrix.csv"),
                 matrix_to_csv(distance_matrix(result.tree, config.matrix_selection)));
      write_file(
          out_path("distance_matrix_weighted.csv"),
          matrix_to_csv(weighted_distance_matrix(result.tree, corpus, config.matrix_selection)));
      write_file(out_path("severity_table.csv"),
                 table_to_csv(severity_table(result.tree, corpus, config.matrix_selection)));
    }
    if (config.emit.count("report"))
      write_file(out_path("placement_report.json"),
                 placement_report_json(result.report, conservative_candidates(result.tree)));

    std::cout << result.summary;
    if (config.strict) {
      for (const auto& u : result.report.unplaced) {
        if (u.reason.rfind("ambiguous", 0) == 0) {
          std::cerr << "strict: leaf \"" << u.name << "\" " << u.reason << "\n";
          return 2;
        }
      }
    }
    return 0;
  } catch (const Error& e) {
    return fail(e.what());
  }
}

int cmd_metrics(const std::string& taxonomy_path, Selection selection) {
  try {
    Taxonomy tree = import_json(read_file(taxonomy_path), taxonomy_path);
    std::string csv = matrix_to_csv(distance_matrix(tree, selection));
    std::string out = "distance_matrix.csv";
    write_file(out, csv);
    std::cout << "wrote " << out << " (" << to_string(selection) << ", "
              << select_nodes(tree, selection).size() << " labels)\n";
    return 0;
  } catch (const Error& e) {
    return fail(e.what());
  }
}

int cmd_compare(const std::string& taxonomy_path, const std::string& external_path,
                const std::string& lexicon_path) {
  try {
    Taxonomy tree = import_json(read_file(taxonomy_path), taxonomy_path);
    auto external = parse_external(read_file(external_path), external_path);
    Lexicon lexicon;
    if (!lexicon_path.empty()) lexicon = Lexicon::parse(read_file(lexicon_path), lexicon_path);
    ComparisonReport report = compare_external(tree, external, lexicon);
    write_file("comparison_report.json", comparison_to_json(report));
    std::cout << "exact=" << report.exact.size() << " synonym=" << report.synonym.size()
              << " ancestor=" << report.ancestor.size()
              << " unmatched=" << report.unmatched.size()
              << " uncovered=" << report.uncovered_internal.size() << "\n";
    return 0;
  } catch (const Error& e) {
    return fail(e.what());
  }
}

int cmd_validate(const std::string& corpus_path) {
  try {
    SpecDocument corpus = parse_spec(read_file(corpus_path), corpus_path);
    std::cout << "ok: requirements=" << corpus.requirements.size()
              << " categories=" << corpus.categories.size()
              << " annotations=" << corpus.safety_annotations.size()
              << " leaf_candidates=" << corpus.leaf_candidates.size() << "\n";
    return 0;
  } catch (const Error& e) {
    return fail(e.what());
  }
}

}  // namespace reqtax
