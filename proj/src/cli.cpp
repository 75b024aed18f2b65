#include "reqtax/cli.hpp"

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reqtax/pipeline.hpp"
#include "reqtax/util.hpp"

namespace reqtax::cli {

namespace {

std::set<std::string> parse_emit(const std::string& arg) {
  std::set<std::string> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "json" && item != "dot" && item != "matrix" && item != "report")
      throw Error("unknown emit target \"" + item + "\" (expected json, dot, matrix, report)");
    out.insert(item);
  }
  if (out.empty()) throw Error("--emit needs at least one of json, dot, matrix, report");
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Behavioral-requirement taxonomy builder"};
  app.require_subcommand(1);

  BuildConfig config;
  std::string emit_arg = "json,dot,matrix,report";
  std::string policy_arg = "worst-case";
  std::string selection_arg = "leaves";

  auto* build = app.add_subcommand("build", "Build the taxonomy from a corpus");
  build->add_option("corpus", config.corpus_path, "Corpus JSON file")->required();
  build->add_option("--out", config.output_dir, "Output directory (default: .)");
  build->add_option("--emit", emit_arg, "Comma-separated artifacts: json,dot,matrix,report");
  build->add_option("--unannotated-policy", policy_arg,
                    "Members without a safety annotation: worst-case or error")
      ->check(CLI::IsMember({"worst-case", "error"}));
  build->add_flag("--strict", config.strict, "Fail (exit 2) on ambiguous leaf placement");
  build->add_option("--matrix-selection", selection_arg,
                    "Node selection for emitted matrices: leaves, legal or all")
      ->check(CLI::IsMember({"leaves", "legal", "all"}));

  std::string taxonomy_path, external_path, lexicon_path, metrics_selection = "leaves";
  auto* metrics = app.add_subcommand("metrics", "Distance matrix for a built taxonomy");
  metrics->add_option("taxonomy", taxonomy_path, "Taxonomy JSON file")->required();
  metrics->add_option("--selection", metrics_selection, "leaves, legal or all")
      ->check(CLI::IsMember({"leaves", "legal", "all"}));

  auto* compare = app.add_subcommand("compare", "Compare against an external label set");
  compare->add_option("taxonomy", taxonomy_path, "Taxonomy JSON file")->required();
  compare->add_option("external", external_path, "External classes JSON file")->required();
  compare->add_option("--lexicon", lexicon_path, "Lexicon JSON file for synonym matching");

  std::string corpus_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a corpus");
  validate->add_option("corpus", corpus_path, "Corpus JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) {
      config.emit = parse_emit(emit_arg);
      config.policy = policy_arg == "error" ? UnannotatedPolicy::error
                                            : UnannotatedPolicy::worst_case;
      config.matrix_selection = selection_from_string(selection_arg);
      return cmd_build(config);
    }
    if (metrics->parsed())
      return cmd_metrics(taxonomy_path, selection_from_string(metrics_selection));
    if (compare->parsed()) return cmd_compare(taxonomy_path, external_path, lexicon_path);
    return cmd_validate(corpus_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace reqtax::cli
