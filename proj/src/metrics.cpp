#include "reqtax/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "json_util.hpp"
#include "reqtax/util.hpp"

namespace reqtax {

std::string to_string(Selection s) {
  switch (s) {
    case Selection::leaves: return "leaves";
    case Selection::legal: return "legal";
    case Selection::all: return "all";
  }
  return "leaves";
}

Selection selection_from_string(const std::string& s) {
  if (s == "leaves") return Selection::leaves;
  if (s == "legal") return Selection::legal;
  if (s == "all") return Selection::all;
  throw Error("unknown selection \"" + s + "\" (expected leaves, legal or all)");
}

std::vector<std::string> select_nodes(const Taxonomy& tree, Selection selection) {
  std::vector<std::string> out;
  for (const auto& [id, node] : tree.nodes) {
    bool take = selection == Selection::all ||
                (selection == Selection::leaves && node.children.empty()) ||
                (selection == Selection::legal && is_legal_layer(node.origin));
    if (take) out.push_back(id);
  }
  return out;  // map order: already sorted
}

std::string lca(const Taxonomy& tree, const std::string& a, const std::string& b) {
  tree.at(a);
  tree.at(b);
  auto parents = parent_map(tree);
  auto depths = depth_map(tree);
  std::string x = a, y = b;
  while (depths.at(x) > depths.at(y)) x = parents.at(x);
  while (depths.at(y) > depths.at(x)) y = parents.at(y);
  while (x != y) {
    x = parents.at(x);
    y = parents.at(y);
  }
  return x;
}

int tree_distance(const Taxonomy& tree, const std::string& a, const std::string& b) {
  auto depths = depth_map(tree);
  return depths.at(a) + depths.at(b) - 2 * depths.at(lca(tree, a, b));
}

namespace {

/// Distance between two nodes given parent/depth indexes, by climbing to the
/// common ancestor.
int climb_distance(const std::map<std::string, std::string>& parents,
                   const std::map<std::string, int>& depths, std::string x, std::string y) {
  int steps = 0;
  while (depths.at(x) > depths.at(y)) {
    x = parents.at(x);
    ++steps;
  }
  while (depths.at(y) > depths.at(x)) {
    y = parents.at(y);
    ++steps;
  }
  while (x != y) {
    x = parents.at(x);
    y = parents.at(y);
    steps += 2;
  }
  return steps;
}

int weighted_climb(const std::map<std::string, std::string>& parents,
                   const std::map<std::string, int>& depths,
                   const std::map<std::string, int>& edge_weight, std::string x, std::string y) {
  int total = 0;
  while (depths.at(x) > depths.at(y)) {
    total += edge_weight.at(x);
    x = parents.at(x);
  }
  while (depths.at(y) > depths.at(x)) {
    total += edge_weight.at(y);
    y = parents.at(y);
  }
  while (x != y) {
    total += edge_weight.at(x) + edge_weight.at(y);
    x = parents.at(x);
    y = parents.at(y);
  }
  return total;
}

}  // namespace

DistanceMatrix distance_matrix(const Taxonomy& tree, Selection selection) {
  DistanceMatrix m;
  m.labels = select_nodes(tree, selection);
  if (m.labels.empty()) throw Error("empty node selection \"" + to_string(selection) + "\"");
  const auto parents = parent_map(tree);

  // Interned root-to-node paths: a cell is two path lengths minus twice the
  // common prefix, so rows are independent and cheap.
  std::map<std::string, int> interned;
  int next_id = 0;
  for (const auto& [id, node] : tree.nodes) interned[id] = next_id++;
  std::vector<std::vector<int>> paths(m.labels.size());
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    std::vector<int> path;
    std::string cur = m.labels[i];
    path.push_back(interned.at(cur));
    while (parents.count(cur)) {
      cur = parents.at(cur);
      path.push_back(interned.at(cur));
    }
    std::reverse(path.begin(), path.end());
    paths[i] = std::move(path);
  }

  const int n = static_cast<int>(m.labels.size());
  m.cells.assign(n, std::vector<int>(n, 0));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const auto& pa = paths[i];
    for (int j = 0; j < n; ++j) {
      const auto& pb = paths[j];
      std::size_t common = 0;
      while (common < pa.size() && common < pb.size() && pa[common] == pb[common]) ++common;
      m.cells[i][j] = static_cast<int>(pa.size() + pb.size()) - 2 * static_cast<int>(common);
    }
  }
  return m;
}

DistanceMatrix distance_matrix_serial(const Taxonomy& tree, Selection selection) {
  DistanceMatrix m;
  m.labels = select_nodes(tree, selection);
  if (m.labels.empty()) throw Error("empty node selection \"" + to_string(selection) + "\"");
  const auto parents = parent_map(tree);
  const auto depths = depth_map(tree);
  const std::size_t n = m.labels.size();
  m.cells.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.cells[i][j] = climb_distance(parents, depths, m.labels[i], m.labels[j]);
    }
  }
  return m;
}

DistanceMatrix weighted_distance_matrix(const Taxonomy& tree, const SpecDocument& corpus,
                                        Selection selection) {
  DistanceMatrix m;
  m.labels = select_nodes(tree, selection);
  if (m.labels.empty()) throw Error("empty node selection \"" + to_string(selection) + "\"");
  const auto parents = parent_map(tree);
  const auto depths = depth_map(tree);

  std::map<std::string, int> edge_weight;  // node -> weight of its parent edge
  for (const auto& [id, node] : tree.nodes) {
    if (id == tree.root) continue;
    RequirementSet added = node.requirements.difference(tree.at(parents.at(id)).requirements);
    edge_weight[id] =
        added.empty() ? 0 : static_cast<int>(corpus.max_penalty(added).offense_class);
  }

  const int n = static_cast<int>(m.labels.size());
  m.cells.assign(n, std::vector<int>(n, 0));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j)
        m.cells[i][j] = weighted_climb(parents, depths, edge_weight, m.labels[i], m.labels[j]);
    }
  }
  return m;
}

SeverityTable severity_table(const Taxonomy& tree, const SpecDocument& corpus,
                             Selection selection) {
  SeverityTable t;
  t.labels = select_nodes(tree, selection);
  if (t.labels.empty()) throw Error("empty node selection \"" + to_string(selection) + "\"");
  const std::size_t n = t.labels.size();
  t.cells.assign(n, std::vector<std::string>(n));
  for (std::size_t truth = 0; truth < n; ++truth) {
    for (std::size_t pred = 0; pred < n; ++pred) {
      RequirementSet missed = tree.at(t.labels[truth])
                                  .requirements.difference(tree.at(t.labels[pred]).requirements);
      t.cells[truth][pred] =
          missed.empty() ? "none" : to_string(corpus.max_penalty(missed).offense_class);
    }
  }
  return t;
}

std::vector<ConservativeCandidate> conservative_candidates(const Taxonomy& tree) {
  std::vector<ConservativeCandidate> out;
  for (const auto& [id, node] : tree.nodes) {
    if (!is_legal_layer(node.origin)) continue;
    std::vector<std::string> legal_children;
    for (const auto& child : node.children) {
      if (is_legal_layer(tree.at(child).origin)) legal_children.push_back(child);
    }
    if (legal_children.size() != 1) continue;
    ConservativeCandidate c;
    c.node_id = id;
    c.child_id = legal_children.front();
    c.verdict = node.velocity_critical ? "excluded: velocity" : "candidate";
    out.push_back(std::move(c));
  }
  return out;  // map order: sorted by node_id
}

std::vector<ExternalClass> parse_external(const std::string& json_text,
                                          const std::string& source_name) {
  auto j = jsonu::parse_text(json_text, source_name);
  const std::string& w = source_name;
  jsonu::object_at(j, w);
  jsonu::check_keys(j, w, {"classes"}, {"classes"});
  const auto& classes = jsonu::array_at(j.at("classes"), w + "/classes");

  std::vector<ExternalClass> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string path = w + "/classes[" + std::to_string(i) + "]";
    jsonu::object_at(classes[i], path);
    jsonu::check_keys(classes[i], path, {"name", "synonyms"}, {"name"});
    ExternalClass c;
    c.name = jsonu::string_at(classes[i].at("name"), path + "/name");
    jsonu::expect(!c.name.empty(), path + "/name", "empty class name");
    if (!seen.insert(c.name).second)
      throw Error(path + "/name", "duplicate external class \"" + c.name + "\"");
    if (classes[i].contains("synonyms"))
      c.synonyms = jsonu::string_array_at(classes[i].at("synonyms"), path + "/synonyms");
    out.push_back(std::move(c));
  }
  return out;
}

ComparisonReport compare_external(const Taxonomy& tree, const std::vector<ExternalClass>& external,
                                  const Lexicon& lexicon) {
  auto canonical_token = [&](const std::string& name) {
    std::string slug = slugify(name);
    if (auto c = lexicon.try_resolve(slug)) return *c;
    return slug;
  };

  // Node names exposed for matching, keyed by literal slug and by canonical
  // token. Perception leaves preferred as match targets, then smallest id.
  // Ancestor lookups go through a category-only index: a hypernym of an
  // external class names a grouping, not an individual leaf.
  std::map<std::string, std::string> by_slug, by_token, by_token_cat;
  auto offer = [&](std::map<std::string, std::string>& index, const std::string& key,
                   const std::string& id, bool leaf) {
    auto it = index.find(key);
    if (it == index.end()) {
      index[key] = id;
      return;
    }
    bool incumbent_leaf = is_perception(tree.at(it->second).origin);
    if ((leaf && !incumbent_leaf) || (leaf == incumbent_leaf && id < it->second)) it->second = id;
  };
  for (const auto& [id, node] : tree.nodes) {
    bool leaf = is_perception(node.origin);
    for (const auto& name : node.display_names) {
      offer(by_slug, slugify(name), id, leaf);
      offer(by_token, canonical_token(name), id, leaf);
      if (!leaf) offer(by_token_cat, canonical_token(name), id, false);
    }
    if (node.origin == Origin::safety) {
      for (const auto& name : node.members) {
        offer(by_token, canonical_token(name), id, leaf);
        offer(by_token_cat, canonical_token(name), id, false);
      }
    }
  }

  std::vector<const ExternalClass*> order;
  for (const auto& c : external) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const ExternalClass* a, const ExternalClass* b) { return a->name < b->name; });

  ComparisonReport report;
  std::set<std::string> covered;  // node ids hit by exact/synonym matches
  for (const ExternalClass* c : order) {
    auto exact = by_slug.find(slugify(c->name));
    if (exact != by_slug.end()) {
      report.exact.emplace_back(c->name, exact->second);
      covered.insert(exact->second);
      continue;
    }

    std::vector<std::string> aliases{c->name};
    aliases.insert(aliases.end(), c->synonyms.begin(), c->synonyms.end());
    std::string synonym_hit;
    for (const auto& alias : aliases) {
      auto it = by_token.find(canonical_token(alias));
      if (it != by_token.end() && (synonym_hit.empty() || it->second < synonym_hit))
        synonym_hit = it->second;
    }
    if (!synonym_hit.empty()) {
      report.synonym.emplace_back(c->name, synonym_hit);
      covered.insert(synonym_hit);
      continue;
    }

    std::string ancestor_hit;
    if (auto canonical = lexicon.try_resolve(slugify(c->name))) {
      auto levels = lexicon.hypernym_levels(*canonical);
      for (std::size_t lvl = 1; lvl < levels.size() && ancestor_hit.empty(); ++lvl) {
        for (const auto& term : levels[lvl]) {
          auto it = by_token_cat.find(term);
          if (it != by_token_cat.end() && (ancestor_hit.empty() || it->second < ancestor_hit))
            ancestor_hit = it->second;
        }
      }
    }
    if (!ancestor_hit.empty()) {
      report.ancestor.emplace_back(c->name, ancestor_hit);
      continue;
    }

    report.unmatched.push_back(c->name);
  }

  for (const auto& [id, node] : tree.nodes) {
    if (is_perception(node.origin) && !covered.count(id))
      report.uncovered_internal.push_back(id);
  }
  return report;
}

std::string matrix_to_csv(const DistanceMatrix& m) {
  std::ostringstream out;
  for (const auto& label : m.labels) out << ';' << label;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (int v : m.cells[i]) out << ';' << v;
    out << '\n';
  }
  return out.str();
}

std::string table_to_csv(const SeverityTable& t) {
  std::ostringstream out;
  for (const auto& label : t.labels) out << ';' << label;
  out << '\n';
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    out << t.labels[i];
    for (const auto& v : t.cells[i]) out << ';' << v;
    out << '\n';
  }
  return out.str();
}

std::string comparison_to_json(const ComparisonReport& r) {
  nlohmann::json j;
  auto pairs = [](const std::vector<std::pair<std::string, std::string>>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [external, node] : v) {
      arr.push_back({{"external", external}, {"node", node}});
    }
    return arr;
  };
  j["exact"] = pairs(r.exact);
  j["synonym"] = pairs(r.synonym);
  j["ancestor"] = pairs(r.ancestor);
  j["unmatched"] = r.unmatched;
  j["uncovered_internal"] = r.uncovered_internal;
  return j.dump(2) + "\n";
}

}  // namespace reqtax
