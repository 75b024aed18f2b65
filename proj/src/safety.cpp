#include "reqtax/safety.hpp"

#include <algorithm>
#include <deque>

#include "reqtax/util.hpp"

namespace reqtax {

namespace {

struct MemberAxes {
  CollisionSeverity severity;
  bool erratic;
};

void sorted_insert(std::vector<std::string>& v, const std::string& s) {
  v.insert(std::upper_bound(v.begin(), v.end(), s), s);
}

void sorted_erase(std::vector<std::string>& v, const std::string& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it != v.end() && *it == s) v.erase(it);
}

TaxonomyNode make_safety_node(const TaxonomyNode& legal, const std::string& id,
                              std::vector<std::string> members) {
  TaxonomyNode n;
  n.id = id;
  n.display_names = {id};
  n.requirements = legal.requirements;
  n.origin = Origin::safety;
  n.members = std::move(members);
  return n;
}

/// Split `members` on the erratic axis under `parent_id`; no split when they
/// agree.
void split_erratic(Taxonomy& tree, const TaxonomyNode& legal, const std::string& parent_id,
                   const std::vector<std::string>& members,
                   const std::map<std::string, MemberAxes>& axes) {
  bool any_erratic = false, any_nominal = false;
  for (const auto& m : members) {
    (axes.at(m).erratic ? any_erratic : any_nominal) = true;
  }
  if (!any_erratic || !any_nominal) return;

  std::vector<std::string> erratic, nominal;
  for (const auto& m : members) (axes.at(m).erratic ? erratic : nominal).push_back(m);
  for (auto& [suffix, group] :
       std::initializer_list<std::pair<const char*, std::vector<std::string>*>>{
           {"/erratic", &erratic}, {"/nominal", &nominal}}) {
    std::string id = parent_id + suffix;
    tree.nodes.emplace(id, make_safety_node(legal, id, std::move(*group)));
    sorted_insert(tree.nodes.at(parent_id).children, id);
  }
}

}  // namespace

void augment_safety(Taxonomy& tree, const SpecDocument& corpus, UnannotatedPolicy policy) {
  std::set<std::string> category_names;
  for (const auto& cat : corpus.categories) category_names.insert(cat.name);

  std::vector<std::string> legal_ids;
  for (const auto& [id, node] : tree.nodes) {
    if (node.origin == Origin::legal) legal_ids.push_back(id);
  }

  for (const auto& legal_id : legal_ids) {
    // Tear down any previous safety skeleton under this node, remembering
    // where perception leaves were attached.
    std::vector<std::string> old_safety;
    std::map<std::string, std::string> leaf_home;  // perception id -> parent id
    std::deque<std::string> queue{legal_id};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      for (const auto& child : tree.nodes.at(cur).children) {
        const TaxonomyNode& cn = tree.nodes.at(child);
        if (cn.origin == Origin::safety) {
          old_safety.push_back(child);
          queue.push_back(child);
        } else if (is_perception(cn.origin) && cur != legal_id) {
          leaf_home[child] = cur;
        }
      }
    }
    TaxonomyNode& legal = tree.nodes.at(legal_id);
    for (const auto& id : old_safety) {
      sorted_erase(legal.children, id);
      tree.nodes.erase(id);
    }

    // Members are the category names merged into this node.
    std::vector<std::string> members;
    for (const auto& name : legal.display_names) {
      if (category_names.count(name)) members.push_back(name);
    }

    std::map<std::string, MemberAxes> axes;
    for (const auto& m : members) {
      if (const SafetyAnnotation* a = corpus.find_annotation(m)) {
        axes[m] = {a->severity, a->erratic};
      } else if (policy == UnannotatedPolicy::error) {
        throw Error("no safety annotation for category \"" + m + "\" (node \"" + legal_id +
                    "\") and policy is error");
      } else {
        axes[m] = {CollisionSeverity::injury_expected, true};
      }
    }

    bool any_injury = false, any_property = false;
    for (const auto& m : members) {
      (axes.at(m).severity == CollisionSeverity::injury_expected ? any_injury : any_property) =
          true;
    }

    if (any_injury && any_property) {
      std::vector<std::string> harmful, other;
      for (const auto& m : members) {
        (axes.at(m).severity == CollisionSeverity::injury_expected ? harmful : other)
            .push_back(m);
      }
      for (auto& [suffix, group] :
           std::initializer_list<std::pair<const char*, std::vector<std::string>*>>{
               {"/harmful", &harmful}, {"/other", &other}}) {
        std::string id = legal_id + suffix;
        std::vector<std::string> group_members = *group;
        tree.nodes.emplace(id, make_safety_node(tree.nodes.at(legal_id), id,
                                                std::move(group_members)));
        sorted_insert(tree.nodes.at(legal_id).children, id);
        split_erratic(tree, tree.nodes.at(legal_id), id, *group, axes);
      }
    } else {
      split_erratic(tree, tree.nodes.at(legal_id), legal_id, members, axes);
    }

    // Re-attach perception leaves: same annotations rebuild the same ids.
    for (const auto& [leaf_id, home] : leaf_home) {
      std::string target = tree.has(home) ? home : legal_id;
      sorted_insert(tree.nodes.at(target).children, leaf_id);
    }
  }
}

}  // namespace reqtax
