#include "reqtax/taxonomy.hpp"

#include <algorithm>
#include <deque>

#include "json_util.hpp"
#include "reqtax/util.hpp"

namespace reqtax {

std::string to_string(Origin o) {
  switch (o) {
    case Origin::legal: return "legal";
    case Origin::safety: return "safety";
    case Origin::perception_legal_text: return "perception_legal_text";
    case Origin::perception_dataset: return "perception_dataset";
    case Origin::deferred: return "deferred";
  }
  return "legal";
}

std::optional<Origin> origin_from_string(const std::string& s) {
  for (Origin o : {Origin::legal, Origin::safety, Origin::perception_legal_text,
                   Origin::perception_dataset, Origin::deferred}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

const TaxonomyNode& Taxonomy::at(const std::string& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw Error("unknown node id \"" + id + "\"");
  return it->second;
}

std::map<std::string, std::string> parent_map(const Taxonomy& t) {
  std::map<std::string, std::string> out;
  for (const auto& [id, node] : t.nodes) {
    for (const auto& child : node.children) out[child] = id;
  }
  return out;
}

std::map<std::string, int> depth_map(const Taxonomy& t) {
  std::map<std::string, int> out;
  std::deque<std::string> queue{t.root};
  out[t.root] = 0;
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    for (const auto& child : t.at(id).children) {
      if (!out.count(child)) {
        out[child] = out[id] + 1;
        queue.push_back(child);
      }
    }
  }
  return out;
}

int level_depth(const Taxonomy& t) {
  int max_depth = 0;
  for (const auto& [id, d] : depth_map(t)) max_depth = std::max(max_depth, d);
  return max_depth + 1;
}

const std::vector<std::string>& match_names(const TaxonomyNode& n) {
  return n.origin == Origin::safety ? n.members : n.display_names;
}

std::vector<std::string> validate_taxonomy(const Taxonomy& t) {
  std::vector<std::string> v;
  auto fail = [&](const std::string& msg) { v.push_back(msg); };

  if (!t.nodes.count(t.root)) {
    fail("root \"" + t.root + "\" is not a node");
    return v;
  }
  const TaxonomyNode& root = t.nodes.at(t.root);
  if (!root.requirements.empty()) fail("root must carry an empty requirement set");
  if (root.origin != Origin::legal) fail("root origin must be legal");

  std::map<std::string, std::string> parents;
  for (const auto& [id, node] : t.nodes) {
    if (node.id != id) fail("node \"" + id + "\" stores mismatched id \"" + node.id + "\"");
    if (node.display_names.empty()) fail("node \"" + id + "\": no display names");
    if (!std::is_sorted(node.display_names.begin(), node.display_names.end()))
      fail("node \"" + id + "\": display names not sorted");
    if (!std::is_sorted(node.children.begin(), node.children.end()) ||
        std::adjacent_find(node.children.begin(), node.children.end()) != node.children.end())
      fail("node \"" + id + "\": children not sorted or not unique");
    for (const auto& child : node.children) {
      if (!t.nodes.count(child)) {
        fail("node \"" + id + "\": unknown child \"" + child + "\"");
        continue;
      }
      if (child == t.root) fail("root listed as a child of \"" + id + "\"");
      auto [it, fresh] = parents.emplace(child, id);
      if (!fresh)
        fail("node \"" + child + "\" has two parents: \"" + it->second + "\", \"" + id + "\"");
    }
  }
  for (const auto& [id, node] : t.nodes) {
    if (id != t.root && !parents.count(id)) fail("node \"" + id + "\" unreachable (no parent)");
  }
  if (!v.empty()) return v;  // shape is broken; deeper checks would cascade

  // Reachability doubles as the cycle check: parented-but-unreachable nodes
  // would form a cycle, caught above by the two-parents/no-parent checks
  // plus this walk.
  std::set<std::string> reachable;
  std::deque<std::string> queue{t.root};
  reachable.insert(t.root);
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    for (const auto& child : t.nodes.at(id).children) {
      if (reachable.insert(child).second) queue.push_back(child);
    }
  }
  for (const auto& [id, node] : t.nodes) {
    if (!reachable.count(id)) fail("node \"" + id + "\" not reachable from root");
  }
  if (!v.empty()) return v;

  // Legal layer: unique sets, proper-subset chains, no skipped level.
  std::map<std::string, std::string> set_to_node;
  std::vector<const TaxonomyNode*> legal_nodes;
  for (const auto& [id, node] : t.nodes) {
    if (!is_legal_layer(node.origin)) continue;
    legal_nodes.push_back(&node);
    auto [it, fresh] = set_to_node.emplace(node.requirements.serialize(), id);
    if (!fresh)
      fail("duplicate requirement set at nodes \"" + it->second + "\" and \"" + id + "\"");
  }
  for (const TaxonomyNode* node : legal_nodes) {
    if (node->id == t.root) continue;
    const std::string& pid = parents.at(node->id);
    const TaxonomyNode& parent = t.nodes.at(pid);
    if (!is_legal_layer(parent.origin)) {
      fail("legal node \"" + node->id + "\" under non-legal parent \"" + pid + "\"");
      continue;
    }
    if (!parent.requirements.proper_subset_of(node->requirements))
      fail("node \"" + node->id + "\": parent set is not a proper subset");
    for (const TaxonomyNode* other : legal_nodes) {
      if (parent.requirements.proper_subset_of(other->requirements) &&
          other->requirements.proper_subset_of(node->requirements))
        fail("node \"" + other->id + "\" is skipped between \"" + pid + "\" and \"" + node->id +
             "\"");
    }
  }

  for (const auto& [id, node] : t.nodes) {
    if (id == t.root) continue;
    const TaxonomyNode& parent = t.nodes.at(parents.at(id));
    switch (node.origin) {
      case Origin::legal:
      case Origin::deferred:
        if (!node.members.empty()) fail("legal node \"" + id + "\" carries members");
        if (!node.provenance.empty()) fail("legal node \"" + id + "\" carries provenance");
        if (node.origin == Origin::deferred) {
          for (const auto& name : node.display_names) {
            if (name != "traffic signs/markings" && name != "traffic installations")
              fail("deferred node \"" + id + "\" has non-placeholder name \"" + name + "\"");
          }
        }
        break;
      case Origin::safety:
        if (!(node.requirements == parent.requirements))
          fail("safety node \"" + id + "\" does not carry its parent's requirement set");
        if (node.members.empty()) fail("safety node \"" + id + "\": empty member partition");
        if (!std::is_sorted(node.members.begin(), node.members.end()))
          fail("safety node \"" + id + "\": members not sorted");
        if (!node.provenance.empty()) fail("safety node \"" + id + "\" carries provenance");
        if (is_perception(parent.origin))
          fail("safety node \"" + id + "\" under perception parent");
        break;
      case Origin::perception_legal_text:
      case Origin::perception_dataset:
        if (!node.children.empty()) fail("perception node \"" + id + "\" has children");
        if (!(node.requirements == parent.requirements))
          fail("perception node \"" + id + "\" does not carry its parent's requirement set");
        if (node.provenance.empty()) fail("perception node \"" + id + "\": no provenance");
        if (!std::is_sorted(node.provenance.begin(), node.provenance.end()))
          fail("perception node \"" + id + "\": provenance not sorted");
        if (!node.members.empty()) fail("perception node \"" + id + "\" carries members");
        break;
    }
  }

  return v;
}

void require_valid(const Taxonomy& t, const std::string& where) {
  auto v = validate_taxonomy(t);
  if (!v.empty()) throw Error(where, "invalid taxonomy: " + join(v, "; "));
}

std::string export_json(const Taxonomy& t) {
  nlohmann::json j;
  j["root"] = t.root;
  j["nodes"] = nlohmann::json::object();
  for (const auto& [id, node] : t.nodes) {
    nlohmann::json n;
    n["names"] = node.display_names;
    n["requirements"] = node.requirements.ids();
    n["origin"] = to_string(node.origin);
    n["children"] = node.children;
    if (!node.members.empty()) n["members"] = node.members;
    if (!node.provenance.empty()) n["provenance"] = node.provenance;
    if (node.velocity_critical) n["velocity_critical"] = true;
    j["nodes"][id] = std::move(n);
  }
  return j.dump(2) + "\n";
}

Taxonomy import_json(const std::string& json_text, const std::string& source_name) {
  auto j = jsonu::parse_text(json_text, source_name);
  const std::string& w = source_name;
  jsonu::object_at(j, w);
  jsonu::check_keys(j, w, {"root", "nodes"}, {"root", "nodes"});

  Taxonomy t;
  t.root = jsonu::string_at(j.at("root"), w + "/root");
  const auto& nodes = jsonu::object_at(j.at("nodes"), w + "/nodes");
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    std::string path = w + "/nodes/" + it.key();
    const auto& n = jsonu::object_at(it.value(), path);
    jsonu::check_keys(n, path,
                      {"names", "requirements", "origin", "children", "members", "provenance",
                       "velocity_critical"},
                      {"names", "requirements", "origin", "children"});
    TaxonomyNode node;
    node.id = it.key();
    node.display_names = jsonu::string_array_at(n.at("names"), path + "/names");
    node.requirements =
        RequirementSet(jsonu::string_array_at(n.at("requirements"), path + "/requirements"));
    std::string origin = jsonu::string_at(n.at("origin"), path + "/origin");
    auto o = origin_from_string(origin);
    if (!o) throw Error(path + "/origin", "unknown origin \"" + origin + "\"");
    node.origin = *o;
    node.children = jsonu::string_array_at(n.at("children"), path + "/children");
    if (n.contains("members"))
      node.members = jsonu::string_array_at(n.at("members"), path + "/members");
    if (n.contains("provenance"))
      node.provenance = jsonu::string_array_at(n.at("provenance"), path + "/provenance");
    if (n.contains("velocity_critical"))
      node.velocity_critical = jsonu::bool_at(n.at("velocity_critical"),
                                              path + "/velocity_critical");
    t.nodes.emplace(it.key(), std::move(node));
  }
  require_valid(t, source_name);
  return t;
}

}  // namespace reqtax
