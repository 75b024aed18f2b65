#include <doctest.h>

#include "support/fixtures.hpp"
#include "reqtax/builder.hpp"
#include "reqtax/leaves.hpp"
#include "reqtax/pipeline.hpp"

using namespace reqtax;

namespace {

const UnplacedLeaf* find_unplaced(const PlacementReport& report, const std::string& name) {
  for (const auto& u : report.unplaced)
    if (u.name == name) return &u;
  return nullptr;
}

}  // namespace

TEST_CASE("demo corpus placements") {
  SpecDocument corpus = testfix::load_corpus("demo_corpus.json");
  BuildResult result = run_build(corpus, UnannotatedPolicy::worst_case);
  const Taxonomy& tree = result.tree;
  const std::string obstacle = "animal_cardboard_box_traffic_cone_tree_wall";

  SUBCASE("explicit requirement sets match the legal node exactly") {
    REQUIRE(tree.has("road_user/zebra_crossing"));
    CHECK(tree.at("road_user/zebra_crossing").origin == Origin::perception_legal_text);
    CHECK(tree.at("road_user/zebra_crossing").provenance ==
          std::vector<std::string>{"legal_text"});
  }

  SUBCASE("terms route through hypernym levels into safety groups") {
    REQUIRE(tree.has(obstacle + "/harmful/erratic/deer"));
    CHECK(tree.at(obstacle + "/harmful/erratic/deer").origin == Origin::perception_dataset);
    REQUIRE(tree.has(obstacle + "/harmful/nominal/tree"));
    REQUIRE(tree.has(obstacle + "/other/nominal/traffic_cone"));
  }

  SUBCASE("synonym canonicalization maps car onto the merged node") {
    REQUIRE(tree.has("car_vehicle/car"));
    REQUIRE(tree.has("car_vehicle/truck"));  // truck -> vehicle at level one
  }

  SUBCASE("same name from two sources merges with provenance union") {
    REQUIRE(tree.has("cyclist_pedestrian/pedestrian"));
    const auto& leaf = tree.at("cyclist_pedestrian/pedestrian");
    CHECK(leaf.origin == Origin::perception_legal_text);
    CHECK(leaf.provenance ==
          std::vector<std::string>{"dataset:detection_demo", "legal_text"});
  }

  SUBCASE("unplaced candidates carry their reasons") {
    REQUIRE(result.report.unplaced.size() == 3);
    const auto* road = find_unplaced(result.report, "road");
    REQUIRE(road != nullptr);
    CHECK(road->reason == "no requirement set match");

    const auto* vegetation = find_unplaced(result.report, "vegetation");
    REQUIRE(vegetation != nullptr);
    CHECK(vegetation->reason == "unknown term \"vegetation\"");

    const auto* horse = find_unplaced(result.report, "horse");
    REQUIRE(horse != nullptr);
    CHECK(horse->reason ==
          "ambiguous match at equal hypernym distance: "
          "animal_cardboard_box_traffic_cone_tree_wall/harmful/erratic vs road_user");
  }

  SUBCASE("legal-text candidates are placed before dataset candidates") {
    std::vector<std::string> names;
    for (const auto& p : result.report.placed) names.push_back(p.name);
    CHECK(names == std::vector<std::string>{"bus", "car", "pedestrian", "traffic cone", "tree",
                                            "zebra crossing", "deer", "pedestrian", "taxi",
                                            "truck", "wall"});
  }
}

TEST_CASE("taxi coexists with the car leaf under one parent") {
  SpecDocument corpus = testfix::load_corpus("coexistence.json");
  BuildResult result = run_build(corpus, UnannotatedPolicy::worst_case);

  REQUIRE(result.tree.has("car/car"));
  REQUIRE(result.tree.has("car/taxi"));
  CHECK(result.tree.at("car").children == std::vector<std::string>{"car/car", "car/taxi"});
  CHECK(result.tree.at("car/car").origin == Origin::perception_legal_text);
  CHECK(result.tree.at("car/taxi").origin == Origin::perception_dataset);
  CHECK(result.report.unplaced.empty());
}

TEST_CASE("place_leaf is a pure decision") {
  SpecDocument corpus = testfix::load_corpus("coexistence.json");
  Taxonomy tree = build_legal_taxonomy(corpus);
  augment_safety(tree, corpus);
  std::string before = export_json(tree);

  LeafCandidate taxi;
  taxi.name = "taxi";
  taxi.source = "dataset:detection_demo";
  taxi.term = "taxi";
  PlacementDecision first = place_leaf(tree, corpus, taxi);
  PlacementDecision second = place_leaf(tree, corpus, taxi);
  REQUIRE(first.parent_id.has_value());
  CHECK(*first.parent_id == "car");
  CHECK(first.parent_id == second.parent_id);
  CHECK(export_json(tree) == before);
}

TEST_CASE("descent into safety splits needs an annotation under the error policy") {
  SpecDocument corpus = parse_spec(R"({
    "requirements": [
      {"id": "R_A", "description": "a", "penalty": {"class": "fine", "fine_eur": 10, "points": 0}}
    ],
    "categories": [
      {"name": "deer", "requirements": ["R_A"]},
      {"name": "cone", "requirements": ["R_A"]}
    ],
    "safety_annotations": [
      {"category": "deer", "severity": "injury_expected", "erratic": true},
      {"category": "cone", "severity": "property_damage_only", "erratic": false}
    ],
    "leaf_candidates": [
      {"name": "mystery thing", "source": "dataset:gen", "requirements": ["R_A"]}
    ],
    "lexicon": {"terms": ["object"]}
  })");

  BuildResult strict = run_build(corpus, UnannotatedPolicy::error);
  REQUIRE(strict.report.unplaced.size() == 1);
  CHECK(strict.report.unplaced[0].reason == "no safety annotation under error policy");

  BuildResult lax = run_build(corpus, UnannotatedPolicy::worst_case);
  CHECK(lax.report.unplaced.empty());
  REQUIRE(lax.report.placed.size() == 1);
  // Worst case drops the leaf into the harmful side.
  CHECK(lax.report.placed[0].parent_id == "cone_deer/harmful");
}

TEST_CASE("candidate-level safety annotations steer the descent") {
  SpecDocument corpus = parse_spec(R"({
    "requirements": [
      {"id": "R_A", "description": "a", "penalty": {"class": "fine", "fine_eur": 10, "points": 0}}
    ],
    "categories": [
      {"name": "deer", "requirements": ["R_A"]},
      {"name": "cone", "requirements": ["R_A"]}
    ],
    "safety_annotations": [
      {"category": "deer", "severity": "injury_expected", "erratic": true},
      {"category": "cone", "severity": "property_damage_only", "erratic": false}
    ],
    "leaf_candidates": [
      {"name": "barrel", "source": "dataset:gen", "requirements": ["R_A"],
       "safety": {"severity": "property_damage_only", "erratic": false}}
    ],
    "lexicon": {"terms": ["object"]}
  })");

  BuildResult result = run_build(corpus, UnannotatedPolicy::worst_case);
  REQUIRE(result.report.placed.size() == 1);
  CHECK(result.report.placed[0].parent_id == "cone_deer/other");
  CHECK(result.report.placed[0].node_id == "cone_deer/other/barrel");
}

TEST_CASE("same leaf name from two datasets merges provenance") {
  SpecDocument corpus = parse_spec(R"({
    "requirements": [
      {"id": "R_A", "description": "a", "penalty": {"class": "fine", "fine_eur": 10, "points": 0}}
    ],
    "categories": [
      {"name": "cone", "requirements": ["R_A"]}
    ],
    "leaf_candidates": [
      {"name": "pylon", "source": "dataset:alpha", "requirements": ["R_A"]},
      {"name": "pylon", "source": "dataset:beta", "requirements": ["R_A"]}
    ],
    "lexicon": {"terms": ["object"]}
  })");

  BuildResult result = run_build(corpus, UnannotatedPolicy::worst_case);
  REQUIRE(result.tree.has("cone/pylon"));
  CHECK(result.tree.at("cone/pylon").origin == Origin::perception_dataset);
  CHECK(result.tree.at("cone/pylon").provenance ==
        std::vector<std::string>{"dataset:alpha", "dataset:beta"});
}
