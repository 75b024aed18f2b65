#include "reqtax/leaves.hpp"

#include <algorithm>

#include "reqtax/util.hpp"

namespace reqtax {

namespace {

/// Canonical token for matching node names against lexicon terms:
/// slugified, then mapped through synonym groups when the lexicon knows it.
std::string name_token(const Lexicon& lexicon, const std::string& name) {
  std::string slug = slugify(name);
  if (auto canonical = lexicon.try_resolve(slug)) return *canonical;
  return slug;
}

/// Deepest node whose match names contain `name`: the legal node itself when
/// unsplit, else the most refined safety descendant listing the member.
std::string deepest_holder(const Taxonomy& tree, const std::string& start,
                           const std::string& name) {
  std::string cur = start;
  for (;;) {
    bool descended = false;
    for (const auto& child_id : tree.at(cur).children) {
      const TaxonomyNode& child = tree.at(child_id);
      if (child.origin != Origin::safety) continue;
      if (std::binary_search(child.members.begin(), child.members.end(), name)) {
        cur = child_id;
        descended = true;
        break;
      }
    }
    if (!descended) return cur;
  }
}

const SafetyAnnotation* annotation_for(const SpecDocument& corpus,
                                       const LeafCandidate& candidate) {
  if (candidate.safety) return &*candidate.safety;
  return corpus.find_annotation(candidate.name);
}

/// Walk from `base` into safety children along the annotation axes.
std::optional<std::string> descend_safety(const Taxonomy& tree, const SpecDocument& corpus,
                                          const LeafCandidate& candidate, std::string base,
                                          UnannotatedPolicy policy, std::string& reason) {
  const SafetyAnnotation* ann = annotation_for(corpus, candidate);
  SafetyAnnotation fallback{candidate.name, CollisionSeverity::injury_expected, true};
  for (;;) {
    bool has_harmful = false, has_erratic = false;
    for (const auto& child_id : tree.at(base).children) {
      const TaxonomyNode& child = tree.at(child_id);
      if (child.origin != Origin::safety) continue;
      if (child_id.ends_with("/harmful") || child_id.ends_with("/other")) has_harmful = true;
      if (child_id.ends_with("/erratic") || child_id.ends_with("/nominal")) has_erratic = true;
    }
    if (!has_harmful && !has_erratic) return base;
    if (!ann) {
      if (policy == UnannotatedPolicy::error) {
        reason = "no safety annotation under error policy";
        return std::nullopt;
      }
      ann = &fallback;
    }
    std::string suffix;
    if (has_harmful) {
      suffix = ann->severity == CollisionSeverity::injury_expected ? "/harmful" : "/other";
    } else {
      suffix = ann->erratic ? "/erratic" : "/nominal";
    }
    base += suffix;
  }
}

}  // namespace

PlacementDecision place_leaf(const Taxonomy& tree, const SpecDocument& corpus,
                             const LeafCandidate& candidate, UnannotatedPolicy policy) {
  PlacementDecision decision;
  std::string base;

  if (candidate.explicit_requirements) {
    const std::string target = candidate.explicit_requirements->serialize();
    for (const auto& [id, node] : tree.nodes) {
      if (is_legal_layer(node.origin) && node.requirements.serialize() == target) {
        base = id;
        break;
      }
    }
    if (base.empty()) {
      decision.reason = "no requirement set match";
      return decision;
    }
  } else {
    const std::string& term = *candidate.term;
    auto canonical = corpus.lexicon.try_resolve(slugify(term));
    if (!canonical) {
      decision.reason = "unknown term \"" + term + "\"";
      return decision;
    }

    // Nodes indexed by the canonical token of every matchable name.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> token_index;
    for (const auto& [id, node] : tree.nodes) {
      if (is_perception(node.origin)) continue;
      for (const auto& name : match_names(node)) {
        token_index[name_token(corpus.lexicon, name)].push_back({id, name});
      }
    }

    for (const auto& level : corpus.lexicon.hypernym_levels(*canonical)) {
      // Resolve every hit on this level to the deepest node holding the
      // matched name; distinct targets at one distance are ambiguous.
      std::set<std::string> targets;
      for (const auto& term_at_level : level) {
        auto it = token_index.find(term_at_level);
        if (it == token_index.end()) continue;
        for (const auto& [node_id, matched_name] : it->second) {
          targets.insert(deepest_holder(tree, node_id, matched_name));
        }
      }
      if (targets.empty()) continue;
      if (targets.size() > 1) {
        decision.reason =
            "ambiguous match at equal hypernym distance: " +
            join(std::vector<std::string>(targets.begin(), targets.end()), " vs ");
        return decision;
      }
      base = *targets.begin();
      break;
    }
    if (base.empty()) {
      decision.reason = "no requirement set match";
      return decision;
    }
  }

  auto parent = descend_safety(tree, corpus, candidate, base, policy, decision.reason);
  if (!parent) return decision;
  decision.parent_id = *parent;
  return decision;
}

PlacementReport add_leaves(Taxonomy& tree, const SpecDocument& corpus, UnannotatedPolicy policy) {
  std::vector<const LeafCandidate*> order;
  for (const auto& lc : corpus.leaf_candidates) order.push_back(&lc);
  std::stable_sort(order.begin(), order.end(),
                   [](const LeafCandidate* a, const LeafCandidate* b) {
                     if (a->from_legal_text() != b->from_legal_text())
                       return a->from_legal_text();
                     if (a->name != b->name) return a->name < b->name;
                     return a->source < b->source;
                   });

  PlacementReport report;
  for (const LeafCandidate* lc : order) {
    PlacementDecision d = place_leaf(tree, corpus, *lc, policy);
    if (!d.parent_id) {
      report.unplaced.push_back({lc->name, d.reason});
      continue;
    }
    const std::string& parent = *d.parent_id;
    std::string leaf_id = parent + "/" + slugify(lc->name);

    if (tree.has(leaf_id)) {
      TaxonomyNode& existing = tree.nodes.at(leaf_id);
      if (!is_perception(existing.origin)) {
        report.unplaced.push_back({lc->name, "node id collision at \"" + leaf_id + "\""});
        continue;
      }
      auto& prov = existing.provenance;
      if (!std::binary_search(prov.begin(), prov.end(), lc->source))
        prov.insert(std::upper_bound(prov.begin(), prov.end(), lc->source), lc->source);
      auto& names = existing.display_names;
      if (!std::binary_search(names.begin(), names.end(), lc->name))
        names.insert(std::upper_bound(names.begin(), names.end(), lc->name), lc->name);
      if (lc->from_legal_text()) existing.origin = Origin::perception_legal_text;
      report.placed.push_back({lc->name, parent, leaf_id});
      continue;
    }

    TaxonomyNode leaf;
    leaf.id = leaf_id;
    leaf.display_names = {lc->name};
    leaf.requirements = tree.at(parent).requirements;
    leaf.origin = lc->from_legal_text() ? Origin::perception_legal_text
                                        : Origin::perception_dataset;
    leaf.provenance = {lc->source};
    tree.nodes.emplace(leaf_id, std::move(leaf));
    auto& children = tree.nodes.at(parent).children;
    children.insert(std::upper_bound(children.begin(), children.end(), leaf_id), leaf_id);
    report.placed.push_back({lc->name, parent, leaf_id});
  }
  return report;
}

}  // namespace reqtax
