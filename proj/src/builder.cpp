#include "reqtax/builder.hpp"

#include <algorithm>
#include <cassert>

#include "reqtax/util.hpp"

namespace reqtax {

std::vector<CategorySpec> expand_inheritance(const std::vector<CategorySpec>& categories,
                                             const Lexicon& lexicon) {
  std::vector<CategorySpec> out = categories;
  for (auto& cat : out) {
    if (!cat.term) continue;
    auto closure = lexicon.hypernym_closure(*cat.term);
    for (const auto& other : categories) {
      if (!other.term || other.name == cat.name) continue;
      if (closure.count(lexicon.resolve(*other.term)))
        cat.requirements = cat.requirements.unite(other.requirements);
    }
  }
  return out;
}

std::vector<MergedCategory> merge_identical(const std::vector<CategorySpec>& categories) {
  std::map<std::string, MergedCategory> by_set;
  for (const auto& cat : categories) {
    MergedCategory& m = by_set[cat.requirements.serialize()];
    if (m.names.empty()) {
      m.requirements = cat.requirements;
      m.deferred = cat.deferred;
    } else {
      m.deferred = m.deferred && cat.deferred;
    }
    m.names.push_back(cat.name);
    m.velocity_critical = m.velocity_critical || cat.velocity_critical;
  }
  std::vector<MergedCategory> out;
  out.reserve(by_set.size());
  for (auto& [key, m] : by_set) {
    std::sort(m.names.begin(), m.names.end());
    m.names.erase(std::unique(m.names.begin(), m.names.end()), m.names.end());
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> parent_candidates(const Taxonomy& tree, const RequirementSet& new_set) {
  std::vector<const TaxonomyNode*> subsets;
  for (const auto& [id, node] : tree.nodes) {
    if (!is_legal_layer(node.origin)) continue;
    if (node.requirements == new_set)
      throw Error("requirement set already present at node " + id);
    if (node.requirements.proper_subset_of(new_set)) subsets.push_back(&node);
  }
  std::vector<std::string> out;
  for (const TaxonomyNode* a : subsets) {
    bool maximal = true;
    for (const TaxonomyNode* b : subsets) {
      if (a != b && a->requirements.proper_subset_of(b->requirements)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(a->id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string select_parent(const SpecDocument& corpus, const std::vector<std::string>& candidates,
                          const RequirementSet& new_set, const Taxonomy& tree) {
  assert(!candidates.empty());
  const std::string* best = nullptr;
  Penalty best_penalty;
  for (const auto& id : candidates) {
    RequirementSet complement = new_set.difference(tree.at(id).requirements);
    assert(!complement.empty());
    Penalty p = corpus.max_penalty(complement);
    if (!best || compare_penalty(p, best_penalty) > 0) {
      best = &id;
      best_penalty = p;
    }
  }
  return *best;
}

namespace {

/// Pre-assigned node ids: slug of the joined names, collisions disambiguated
/// by "_2", "_3", ... in canonical set order so ids never depend on the
/// insertion order actually used.
std::vector<std::string> assign_node_ids(const std::vector<MergedCategory>& categories,
                                         const std::string& root_id) {
  std::vector<std::size_t> order(categories.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return categories[a].requirements.serialize() < categories[b].requirements.serialize();
  });

  std::vector<std::string> ids(categories.size());
  std::set<std::string> taken{root_id};
  for (std::size_t idx : order) {
    if (categories[idx].requirements.empty()) continue;  // merges into the root
    std::string base = slugify(join(categories[idx].names, " "));
    if (base.empty()) base = "node";
    std::string id = base;
    for (int suffix = 2; taken.count(id); ++suffix) {
      id = base + "_" + std::to_string(suffix);
    }
    taken.insert(id);
    ids[idx] = id;
  }
  return ids;
}

void attach_child(Taxonomy& tree, const std::string& parent_id, const std::string& child_id) {
  auto& children = tree.nodes.at(parent_id).children;
  children.insert(std::upper_bound(children.begin(), children.end(), child_id), child_id);
}

}  // namespace

Taxonomy build_legal_tree(const SpecDocument& corpus, const std::vector<MergedCategory>& categories,
                          TierOrder tier_order) {
  Taxonomy tree;
  tree.root = "no_regulation";
  TaxonomyNode root;
  root.id = tree.root;
  root.display_names = {"no regulation"};
  root.origin = Origin::legal;
  tree.nodes.emplace(tree.root, std::move(root));

  std::vector<std::string> ids = assign_node_ids(categories, tree.root);

  std::vector<std::size_t> order(categories.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (categories[a].requirements.size() != categories[b].requirements.size())
      return categories[a].requirements.size() < categories[b].requirements.size();
    if (tier_order == TierOrder::as_given) return false;
    return categories[a].requirements.serialize() < categories[b].requirements.serialize();
  });

  for (std::size_t idx : order) {
    const MergedCategory& cat = categories[idx];
    if (cat.requirements.empty()) {
      // The "no regulation" set: these categories are the root itself.
      auto& names = tree.nodes.at(tree.root).display_names;
      names.insert(names.end(), cat.names.begin(), cat.names.end());
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
      tree.nodes.at(tree.root).velocity_critical |= cat.velocity_critical;
      continue;
    }
    auto candidates = parent_candidates(tree, cat.requirements);
    std::string parent = select_parent(corpus, candidates, cat.requirements, tree);

    TaxonomyNode node;
    node.id = ids[idx];
    node.display_names = cat.names;
    node.requirements = cat.requirements;
    node.origin = cat.deferred ? Origin::deferred : Origin::legal;
    node.velocity_critical = cat.velocity_critical;
    tree.nodes.emplace(node.id, std::move(node));
    attach_child(tree, parent, ids[idx]);
  }
  return tree;
}

Taxonomy build_legal_taxonomy(const SpecDocument& corpus) {
  auto expanded = expand_inheritance(corpus.categories, corpus.lexicon);
  auto merged = merge_identical(expanded);
  return build_legal_tree(corpus, merged);
}

}  // namespace reqtax
