#include <doctest.h>

#include <random>

#include "reqtax/requirement_set.hpp"
#include "reqtax/util.hpp"

using namespace reqtax;

TEST_CASE("slugify") {
  CHECK(slugify("Pedestrian crossing") == "pedestrian_crossing");
  CHECK(slugify("traffic signs/markings") == "traffic_signs_markings");
  CHECK(slugify("  --Weird__Name  42 ") == "weird_name_42");
  CHECK(slugify("already_a_slug") == "already_a_slug");
  CHECK(slugify("") == "");
  CHECK(slugify("///") == "");
}

TEST_CASE("join") {
  CHECK(join({"a", "b", "a"}, " -> ") == "a -> b -> a");
  CHECK(join({"x"}, ",") == "x");
  CHECK(join({}, ",") == "");
}

TEST_CASE("fnv1a_hex matches the reference constants") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("hello") != fnv1a_hex("hellp"));
}

TEST_CASE("requirement set normalization and algebra") {
  RequirementSet s{"R_B", "R_A", "R_B"};
  CHECK(s.ids() == std::vector<std::string>{"R_A", "R_B"});
  CHECK(s.serialize() == "R_A,R_B");
  CHECK(s.contains("R_A"));
  CHECK(!s.contains("R_C"));

  RequirementSet super{"R_A", "R_B", "R_C"};
  CHECK(s.subset_of(super));
  CHECK(s.proper_subset_of(super));
  CHECK(!super.proper_subset_of(super));
  CHECK(super.difference(s).serialize() == "R_C");
  CHECK(s.unite(RequirementSet{"R_C"}) == super);

  RequirementSet grown = s;
  grown.insert("R_C");
  grown.insert("R_A");
  CHECK(grown == super);
}

TEST_CASE("requirement set ordering agrees with serialized byte order") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pool = {"R_A", "R_AB", "R_B", "R_C1", "R_D", "R_DD", "R_E"};
  auto draw = [&] {
    std::vector<std::string> ids;
    int n = int(rng() % 4);
    for (int i = 0; i < n; ++i) ids.push_back(pool[rng() % pool.size()]);
    return RequirementSet(ids);
  };
  for (int i = 0; i < 500; ++i) {
    RequirementSet a = draw(), b = draw();
    CHECK((a < b) == (a.serialize() < b.serialize()));
    CHECK((a == b) == (a.serialize() == b.serialize()));
  }
}
