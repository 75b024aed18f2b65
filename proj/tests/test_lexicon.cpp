#include <doctest.h>

#include <set>

#include "reqtax/lexicon.hpp"
#include "reqtax/util.hpp"

using namespace reqtax;

namespace {

Lexicon parse_lex(const std::string& body) { return Lexicon::parse(body, "lexicon"); }

const char* kDiamond = R"({
  "terms": ["a", "b", "c", "d"],
  "synonyms": [],
  "hypernyms": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]]
})";

}  // namespace

TEST_CASE("hypernym closure over a diamond") {
  Lexicon lex = parse_lex(kDiamond);
  CHECK(lex.hypernym_closure("a") == std::set<std::string>{"b", "c", "d"});
  CHECK(lex.hypernym_closure("b") == std::set<std::string>{"d"});
  CHECK(lex.hypernym_closure("d").empty());
}

TEST_CASE("hyponyms invert the closure") {
  Lexicon lex = parse_lex(kDiamond);
  CHECK(lex.hyponyms("d") == std::set<std::string>{"a", "b", "c"});
  CHECK(lex.hyponyms("a").empty());

  // Duality on every pair: y in closure(x) <=> x in hyponyms(y).
  for (const auto& x : lex.terms())
    for (const auto& y : lex.terms()) {
      bool up = lex.hypernym_closure(x).count(y) != 0;
      bool down = lex.hyponyms(y).count(x) != 0;
      CHECK(up == down);
    }
}

TEST_CASE("hypernym levels are a breadth-first frontier") {
  Lexicon lex = parse_lex(kDiamond);
  auto levels = lex.hypernym_levels("a");
  REQUIRE(levels.size() == 3);
  CHECK(levels[0] == std::vector<std::string>{"a"});
  CHECK(levels[1] == std::vector<std::string>{"b", "c"});
  CHECK(levels[2] == std::vector<std::string>{"d"});
}

TEST_CASE("synonym groups normalize to the smallest member") {
  Lexicon lex = parse_lex(R"({
    "terms": ["car", "automobile", "vehicle"],
    "synonyms": [["car", "automobile"]],
    "hypernyms": [["car", "vehicle"]]
  })");
  CHECK(lex.resolve("car") == "automobile");
  CHECK(lex.resolve("automobile") == "automobile");
  CHECK(lex.terms().count("automobile") == 1);
  CHECK(lex.terms().count("car") == 0);
  CHECK(lex.hypernym_closure("car") == std::set<std::string>{"vehicle"});

  for (const auto& name : {"car", "automobile", "vehicle"})
    CHECK(lex.resolve(lex.resolve(name)) == lex.resolve(name));
}

TEST_CASE("overlapping synonym groups are rejected") {
  CHECK_THROWS_WITH_AS(parse_lex(R"({
    "terms": ["car", "auto", "taxi"],
    "synonyms": [["car", "auto"], ["auto", "taxi"]],
    "hypernyms": []
  })"),
                       doctest::Contains("overlapping synonym groups"), Error);
}

TEST_CASE("hypernym cycles are reported with the node sequence") {
  CHECK_THROWS_WITH_AS(parse_lex(R"({
    "terms": ["a", "b"],
    "synonyms": [],
    "hypernyms": [["a", "b"], ["b", "a"]]
  })"),
                       doctest::Contains("cycle: a -> b -> a"), Error);
}

TEST_CASE("edges over undeclared terms are rejected") {
  CHECK_THROWS_WITH_AS(parse_lex(R"({
    "terms": ["a"],
    "synonyms": [],
    "hypernyms": [["a", "ghost"]]
  })"),
                       doctest::Contains("undeclared term \"ghost\""), Error);
}

TEST_CASE("duplicate terms are rejected") {
  CHECK_THROWS_AS(parse_lex(R"({"terms": ["a", "a"], "synonyms": [], "hypernyms": []})"), Error);
}

TEST_CASE("is_object walks the inheritance to the object root") {
  Lexicon lex = parse_lex(R"({
    "terms": ["object", "vehicle", "car", "idea"],
    "synonyms": [],
    "hypernyms": [["vehicle", "object"], ["car", "vehicle"]]
  })");
  CHECK(lex.is_object("object"));
  CHECK(lex.is_object("vehicle"));
  CHECK(lex.is_object("car"));
  CHECK(!lex.is_object("idea"));

  // Monotone: everything below an object term is an object term.
  for (const auto& t : lex.terms())
    if (lex.is_object(t))
      for (const auto& below : lex.hyponyms(t)) CHECK(lex.is_object(below));
}

TEST_CASE("unknown term lookups throw") {
  Lexicon lex = parse_lex(kDiamond);
  CHECK(lex.knows("a"));
  CHECK(!lex.knows("nope"));
  CHECK_THROWS_WITH_AS(lex.resolve("nope"), doctest::Contains("unknown term \"nope\""), Error);
  CHECK(lex.try_resolve("nope") == std::nullopt);
}
