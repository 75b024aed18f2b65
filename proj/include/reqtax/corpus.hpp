#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reqtax/lexicon.hpp"
#include "reqtax/requirement_set.hpp"

namespace reqtax {

/// Offense classes of the penalty catalogue, ordered by severity.
enum class OffenseClass : int {
  none = 0,
  warning = 1,
  fine = 2,
  fine_hindrance = 3,
  fine_endangerment = 4,
  fine_property_damage = 5,
  criminal_offense = 6,
};

std::string to_string(OffenseClass c);
std::optional<OffenseClass> offense_class_from_string(const std::string& s);

/// Penalty attached to a behavioral requirement. Totally ordered by
/// (offense_class, fine_eur, points), most significant first.
struct Penalty {
  OffenseClass offense_class = OffenseClass::none;
  double fine_eur = 0.0;
  int points = 0;

  bool operator==(const Penalty&) const = default;
};

/// Lexicographic total order over (offense_class, fine_eur, points).
std::strong_ordering compare_penalty(const Penalty& a, const Penalty& b);

inline const Penalty& max_penalty_of(const Penalty& a, const Penalty& b) {
  return compare_penalty(a, b) < 0 ? b : a;
}

/// One identified behavioral obligation.
struct Requirement {
  std::string id;  // token matching R_[A-Z0-9_]+
  std::string description;
  Penalty penalty;

  bool operator==(const Requirement&) const = default;
};

/// A named object category with the requirement ids that apply to it.
struct CategorySpec {
  std::string name;
  std::optional<std::string> term;  // reference into the lexicon
  RequirementSet requirements;
  bool velocity_critical = false;
  bool deferred = false;  // placeholder category, rendered but not expanded

  bool operator==(const CategorySpec&) const = default;
};

enum class CollisionSeverity { injury_expected, property_damage_only };

std::string to_string(CollisionSeverity s);
std::optional<CollisionSeverity> severity_from_string(const std::string& s);

/// Expert judgment about one category or leaf-candidate name.
struct SafetyAnnotation {
  std::string category;
  CollisionSeverity severity = CollisionSeverity::injury_expected;
  bool erratic = false;

  bool operator==(const SafetyAnnotation&) const = default;
};

/// Perceptual category proposed as a leaf, from the legal text or a dataset.
struct LeafCandidate {
  std::string name;
  std::string source;  // "legal_text" or "dataset:<name>"
  std::optional<std::string> term;
  std::optional<RequirementSet> explicit_requirements;
  std::optional<SafetyAnnotation> safety;  // category field mirrors name

  bool from_legal_text() const { return source == "legal_text"; }
  bool operator==(const LeafCandidate&) const = default;
};

/// Fully validated requirement corpus. Immutable after parse.
struct SpecDocument {
  std::vector<Requirement> requirements;
  std::vector<CategorySpec> categories;
  std::vector<SafetyAnnotation> safety_annotations;
  std::vector<LeafCandidate> leaf_candidates;
  Lexicon lexicon;

  const Requirement* find_requirement(const std::string& id) const;

  /// Severest penalty over the referenced requirements.
  /// Throws Error on an empty set or an unknown id.
  Penalty max_penalty(const RequirementSet& ids) const;

  /// Safety annotation for a category/leaf name, if any.
  const SafetyAnnotation* find_annotation(const std::string& name) const;

private:
  friend SpecDocument parse_spec(const std::string&, const std::string&);
  std::map<std::string, std::size_t> requirement_index_;
  std::map<std::string, std::size_t> annotation_index_;
};

/// Parse and validate a corpus file. Every cross-reference is checked;
/// unknown keys are rejected; diagnostics carry the JSON path or, for
/// syntax errors, line:column.
SpecDocument parse_spec(const std::string& json_text, const std::string& source_name = "corpus");

}  // namespace reqtax
