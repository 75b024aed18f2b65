#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "reqtax/corpus.hpp"

using namespace reqtax;

namespace {

Penalty penalty(OffenseClass c, double fine, int points) { return Penalty{c, fine, points}; }

}  // namespace

TEST_CASE("penalty order: class first, then fine, then points") {
  CHECK(compare_penalty(penalty(OffenseClass::warning, 500, 4),
                        penalty(OffenseClass::fine, 0, 0)) < 0);
  CHECK(compare_penalty(penalty(OffenseClass::fine, 80, 2),
                        penalty(OffenseClass::fine, 80, 1)) > 0);
  CHECK(compare_penalty(penalty(OffenseClass::fine, 79, 3),
                        penalty(OffenseClass::fine, 80, 0)) < 0);
  CHECK(compare_penalty(penalty(OffenseClass::fine, 80, 2),
                        penalty(OffenseClass::fine, 80, 2)) == 0);
  CHECK(compare_penalty(penalty(OffenseClass::none, 0, 0),
                        penalty(OffenseClass::criminal_offense, 0, 0)) < 0);
}

TEST_CASE("penalty order is total over random triples") {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    return penalty(static_cast<OffenseClass>(rng() % 7), double(rng() % 20) * 5,
                   int(rng() % 4));
  };
  for (int i = 0; i < 300; ++i) {
    Penalty a = draw(), b = draw(), c = draw();
    // Antisymmetry and transitivity via the key tuple.
    CHECK((compare_penalty(a, b) < 0) == (oracle::penalty_key(a) < oracle::penalty_key(b)));
    if (compare_penalty(a, b) <= 0 && compare_penalty(b, c) <= 0)
      CHECK(compare_penalty(a, c) <= 0);
  }
}

TEST_CASE("max_penalty over the demo corpus") {
  SpecDocument corpus = testfix::load_corpus("demo_corpus.json");
  Penalty p = corpus.max_penalty(RequirementSet{"R_PERCEIVE_ROAD_USER", "R_YIELD_VRU"});
  CHECK(p.offense_class == OffenseClass::fine_endangerment);
  CHECK(p.fine_eur == 160);
  CHECK(p.points == 2);

  CHECK_THROWS_AS(corpus.max_penalty(RequirementSet{}), Error);
  CHECK_THROWS_AS(corpus.max_penalty(RequirementSet{"R_NOT_THERE"}), Error);
}

TEST_CASE("max_penalty distributes over union") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    SpecDocument corpus = testgen::random_corpus(rng, testgen::small_params());
    std::vector<std::string> pool;
    for (const auto& r : corpus.requirements) pool.push_back(r.id);
    auto draw_set = [&] {
      RequirementSet s;
      int n = 1 + int(rng() % 4);
      for (int i = 0; i < n; ++i) s.insert(pool[rng() % pool.size()]);
      return s;
    };
    for (int i = 0; i < 10; ++i) {
      RequirementSet a = draw_set(), b = draw_set();
      Penalty united = corpus.max_penalty(a.unite(b));
      Penalty split = max_penalty_of(corpus.max_penalty(a), corpus.max_penalty(b));
      CHECK(united == split);
      CHECK(united == oracle::severest(corpus, a.unite(b)));
    }
  }
}

TEST_CASE("offense class and severity tokens round-trip") {
  for (int i = 0; i <= 6; ++i) {
    auto c = static_cast<OffenseClass>(i);
    CHECK(offense_class_from_string(to_string(c)) == c);
  }
  CHECK(!offense_class_from_string("bogus"));
  for (auto s : {CollisionSeverity::injury_expected, CollisionSeverity::property_damage_only})
    CHECK(severity_from_string(to_string(s)) == s);
  CHECK(!severity_from_string("mild"));
}

TEST_CASE("dangling requirement references are diagnosed") {
  CHECK_THROWS_WITH_AS(
      testfix::load_corpus("bad_dangling.json"),
      doctest::Contains("dangling requirement reference R_MISSING in category \"car\""), Error);
}

TEST_CASE("corpus parse rejections") {
  auto wrap = [](const std::string& body) { return parse_spec(body, "corpus"); };
  const std::string lex = R"("lexicon": {"terms": ["object"]})";
  const std::string one_req = R"("requirements": [{"id": "R_A", "description": "d",
      "penalty": {"class": "fine", "fine_eur": 10, "points": 0}}])";

  SUBCASE("duplicate requirement id") {
    CHECK_THROWS_WITH_AS(wrap(R"({"requirements": [
        {"id": "R_A", "description": "d", "penalty": {"class": "none", "fine_eur": 0, "points": 0}},
        {"id": "R_A", "description": "d", "penalty": {"class": "none", "fine_eur": 0, "points": 0}}],
        "categories": [], "lexicon": {"terms": ["object"]}})"),
                         doctest::Contains("duplicate requirement id R_A"), Error);
  }
  SUBCASE("duplicate category name") {
    CHECK_THROWS_WITH_AS(
        wrap(R"({)" + one_req + R"(, "categories": [
          {"name": "x", "requirements": ["R_A"]}, {"name": "x", "requirements": []}], )" + lex +
             "}"),
        doctest::Contains("duplicate category name \"x\""), Error);
  }
  SUBCASE("offense class none forbids fine and points") {
    CHECK_THROWS_AS(wrap(R"({"requirements": [{"id": "R_A", "description": "d",
        "penalty": {"class": "none", "fine_eur": 5, "points": 0}}],
        "categories": [], "lexicon": {"terms": ["object"]}})"),
                    Error);
  }
  SUBCASE("malformed requirement id") {
    CHECK_THROWS_WITH_AS(wrap(R"({"requirements": [{"id": "X_1", "description": "d",
        "penalty": {"class": "fine", "fine_eur": 5, "points": 0}}],
        "categories": [], "lexicon": {"terms": ["object"]}})"),
                         doctest::Contains("R_[A-Z0-9_]+"), Error);
  }
  SUBCASE("unknown top-level key") {
    CHECK_THROWS_WITH_AS(wrap(R"({)" + one_req +
                              R"(, "categories": [], "surprise": 1, )" + lex + "}"),
                         doctest::Contains("surprise"), Error);
  }
  SUBCASE("syntax errors carry line and column") {
    CHECK_THROWS_WITH_AS(wrap("{\n  \"requirements\": }"), doctest::Contains("corpus:2:"), Error);
  }
  SUBCASE("dangling term reference") {
    CHECK_THROWS_WITH_AS(
        wrap(R"({)" + one_req + R"(, "categories": [
          {"name": "x", "term": "ghost", "requirements": ["R_A"]}], )" + lex + "}"),
        doctest::Contains("dangling term reference \"ghost\""), Error);
  }
  SUBCASE("deferred flag is reserved") {
    CHECK_THROWS_AS(wrap(R"({)" + one_req + R"(, "categories": [
          {"name": "x", "requirements": ["R_A"], "deferred": true}], )" + lex + "}"),
                    Error);
  }
  SUBCASE("leaf candidate needs term or requirements") {
    CHECK_THROWS_WITH_AS(wrap(R"({)" + one_req + R"(, "categories": [],
          "leaf_candidates": [{"name": "x", "source": "legal_text"}], )" + lex + "}"),
                         doctest::Contains("needs a term or explicit requirements"), Error);
  }
  SUBCASE("leaf candidate source grammar") {
    CHECK_THROWS_AS(wrap(R"({)" + one_req + R"(, "categories": [],
          "leaf_candidates": [{"name": "x", "source": "dataset:", "term": "object"}], )" + lex +
                    "}"),
                    Error);
    CHECK_THROWS_AS(wrap(R"({)" + one_req + R"(, "categories": [],
          "leaf_candidates": [{"name": "x", "source": "datasetx:y", "term": "object"}], )" + lex +
                    "}"),
                    Error);
  }
  SUBCASE("annotation must reference a known name") {
    CHECK_THROWS_WITH_AS(wrap(R"({)" + one_req + R"(, "categories": [],
          "safety_annotations": [{"category": "ghost", "severity": "injury_expected",
          "erratic": true}], )" + lex + "}"),
                         doctest::Contains("unknown category \"ghost\""), Error);
  }
}

TEST_CASE("duplicate annotations: identical collapse, contradictory reject") {
  const std::string head = R"({"requirements": [{"id": "R_A", "description": "d",
      "penalty": {"class": "fine", "fine_eur": 10, "points": 0}}],
      "categories": [{"name": "x", "requirements": ["R_A"]}],)";
  const std::string tail = R"("lexicon": {"terms": ["object"]}})";

  SpecDocument same = parse_spec(head + R"("safety_annotations": [
      {"category": "x", "severity": "injury_expected", "erratic": true},
      {"category": "x", "severity": "injury_expected", "erratic": true}],)" + tail);
  CHECK(same.safety_annotations.size() == 1);

  CHECK_THROWS_WITH_AS(parse_spec(head + R"("safety_annotations": [
      {"category": "x", "severity": "injury_expected", "erratic": true},
      {"category": "x", "severity": "property_damage_only", "erratic": true}],)" + tail),
                       doctest::Contains("contradictory duplicate annotations"), Error);
}

TEST_CASE("find helpers") {
  SpecDocument corpus = testfix::load_corpus("demo_corpus.json");
  REQUIRE(corpus.find_requirement("R_YIELD_VRU") != nullptr);
  CHECK(corpus.find_requirement("R_YIELD_VRU")->penalty.points == 2);
  CHECK(corpus.find_requirement("R_NOPE") == nullptr);

  const SafetyAnnotation* a = corpus.find_annotation("deer");
  CHECK(a == nullptr);  // deer is a leaf candidate without its own annotation
  const SafetyAnnotation* b = corpus.find_annotation("cardboard box");
  REQUIRE(b != nullptr);
  CHECK(b->severity == CollisionSeverity::property_damage_only);
  CHECK(b->erratic);
}
