#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace reqtax {

/// Lexical database: terms, synonym groups and a directed acyclic hypernym
/// graph (child term -> more general parent term). Immutable after load and
/// safe for concurrent reads.
///
/// Synonym groups are normalized at load: the lexicographically smallest
/// member becomes the canonical term, the others become aliases. Hypernym
/// edges are stored over canonical terms.
class Lexicon {
public:
  Lexicon() = default;

  /// Parse the standalone lexicon file format:
  ///   { "terms": [...], "synonyms": [[...]], "hypernyms": [[child, parent]] }
  /// Unknown keys rejected. Throws Error on any invariant violation
  /// (cycle, undeclared edge endpoint, duplicate term, overlapping groups).
  static Lexicon parse(const std::string& json_text, const std::string& source_name = "lexicon");

  /// Same, from an already-parsed JSON object (the corpus embeds one).
  static Lexicon from_json(const nlohmann::json& j, const std::string& where);

  bool empty() const { return declared_.empty(); }

  /// Any declared name, canonical or alias.
  bool knows(const std::string& name) const;

  /// Map a name through its synonym group to the canonical term.
  /// Identity for names not in any group. Throws Error on unknown names.
  const std::string& resolve(const std::string& name) const;
  std::optional<std::string> try_resolve(const std::string& name) const;

  /// All terms reachable over hypernym edges, excluding the term itself.
  std::set<std::string> hypernym_closure(const std::string& term) const;

  /// Inverse reachability: all terms whose closure contains `term`.
  std::set<std::string> hyponyms(const std::string& term) const;

  /// True iff "object" is among the inherited hypernyms, or the term is
  /// "object" itself. Requires the lexicon to declare "object".
  bool is_object(const std::string& term) const;

  /// Breadth-first hypernym frontier: levels[0] = {canonical term},
  /// levels[k] = parents at distance k, each level sorted, first visit wins.
  std::vector<std::vector<std::string>> hypernym_levels(const std::string& term) const;

  /// Canonical terms (aliases excluded), sorted.
  const std::set<std::string>& terms() const { return canonical_; }

private:
  void validate_and_index(const std::string& where);

  std::set<std::string> declared_;                       // every declared name
  std::set<std::string> canonical_;                      // after synonym normalization
  std::map<std::string, std::string> alias_to_canonical_;
  std::map<std::string, std::vector<std::string>> parents_;   // canonical -> sorted parents
  std::map<std::string, std::vector<std::string>> children_;  // canonical -> sorted children
};

}  // namespace reqtax
