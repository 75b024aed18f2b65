#include "reqtax/lexicon.hpp"

#include <algorithm>
#include <deque>

#include "json_util.hpp"
#include "reqtax/util.hpp"

namespace reqtax {

Lexicon Lexicon::parse(const std::string& json_text, const std::string& source_name) {
  return from_json(jsonu::parse_text(json_text, source_name), source_name);
}

Lexicon Lexicon::from_json(const nlohmann::json& j, const std::string& where) {
  jsonu::object_at(j, where);
  jsonu::check_keys(j, where, {"terms", "synonyms", "hypernyms"}, {"terms"});

  Lexicon lex;
  const auto& terms = jsonu::array_at(j.at("terms"), where + "/terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string path = where + "/terms[" + std::to_string(i) + "]";
    std::string t = jsonu::string_at(terms[i], path);
    jsonu::expect(!t.empty(), path, "empty term");
    if (!lex.declared_.insert(t).second) throw Error(path, "duplicate term \"" + t + "\"");
  }

  std::vector<std::vector<std::string>> groups;
  if (j.contains("synonyms")) {
    const auto& syn = jsonu::array_at(j.at("synonyms"), where + "/synonyms");
    for (std::size_t i = 0; i < syn.size(); ++i) {
      std::string path = where + "/synonyms[" + std::to_string(i) + "]";
      auto group = jsonu::string_array_at(syn[i], path);
      jsonu::expect(!group.empty(), path, "empty synonym group");
      for (const auto& name : group) {
        if (!lex.declared_.count(name))
          throw Error(path, "undeclared term \"" + name + "\" in synonym group");
      }
      groups.push_back(std::move(group));
    }
  }

  // Normalize: smallest member of each group becomes canonical. Groups must
  // be pairwise disjoint.
  std::set<std::string> grouped;
  for (auto group : groups) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    const std::string& canonical = group.front();
    for (const auto& name : group) {
      if (!grouped.insert(name).second)
        throw Error(where + "/synonyms", "overlapping synonym groups (\"" + name + "\")");
      if (name != canonical) lex.alias_to_canonical_[name] = canonical;
    }
  }

  for (const auto& t : lex.declared_) {
    if (!lex.alias_to_canonical_.count(t)) lex.canonical_.insert(t);
  }

  if (j.contains("hypernyms")) {
    const auto& hyp = jsonu::array_at(j.at("hypernyms"), where + "/hypernyms");
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      std::string path = where + "/hypernyms[" + std::to_string(i) + "]";
      const auto& edge = jsonu::array_at(hyp[i], path);
      jsonu::expect(edge.size() == 2, path, "hypernym edge must be [child, parent]");
      std::string child = jsonu::string_at(edge[0], path + "[0]");
      std::string parent = jsonu::string_at(edge[1], path + "[1]");
      for (const auto* name : {&child, &parent}) {
        if (!lex.declared_.count(*name))
          throw Error(path, "undeclared term \"" + *name + "\" in hypernym edge");
      }
      child = lex.resolve(child);
      parent = lex.resolve(parent);
      lex.parents_[child].push_back(parent);
      lex.children_[parent].push_back(child);
    }
  }

  for (auto* adj : {&lex.parents_, &lex.children_}) {
    for (auto& [term, list] : *adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  lex.validate_and_index(where);
  return lex;
}

void Lexicon::validate_and_index(const std::string& where) {
  // Kahn's algorithm over child -> parent edges; leftovers form cycles.
  std::map<std::string, int> outdeg;
  for (const auto& t : canonical_) outdeg[t] = 0;
  for (const auto& [child, parents] : parents_) outdeg[child] = static_cast<int>(parents.size());

  std::deque<std::string> ready;
  for (const auto& [t, d] : outdeg) {
    if (d == 0) ready.push_back(t);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    std::string t = ready.front();
    ready.pop_front();
    ++processed;
    auto it = children_.find(t);
    if (it == children_.end()) continue;
    for (const auto& child : it->second) {
      if (--outdeg[child] == 0) ready.push_back(child);
    }
  }
  if (processed == canonical_.size()) return;

  // Extract one concrete cycle for the diagnostic.
  std::set<std::string> remaining;
  for (const auto& [t, d] : outdeg) {
    if (d > 0) remaining.insert(t);
  }
  std::string start = *remaining.begin();
  std::vector<std::string> path;
  std::map<std::string, std::size_t> seen_at;
  std::string cur = start;
  while (!seen_at.count(cur)) {
    seen_at[cur] = path.size();
    path.push_back(cur);
    const auto& ps = parents_.at(cur);
    cur = *std::find_if(ps.begin(), ps.end(),
                        [&](const std::string& p) { return remaining.count(p) != 0; });
  }
  std::vector<std::string> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen_at[cur]),
                                 path.end());
  cycle.push_back(cur);
  throw Error(where + "/hypernyms", "cycle: " + join(cycle, " -> "));
}

bool Lexicon::knows(const std::string& name) const { return declared_.count(name) != 0; }

const std::string& Lexicon::resolve(const std::string& name) const {
  auto it = alias_to_canonical_.find(name);
  if (it != alias_to_canonical_.end()) return it->second;
  auto ct = canonical_.find(name);
  if (ct == canonical_.end()) throw Error("unknown term \"" + name + "\"");
  return *ct;
}

std::optional<std::string> Lexicon::try_resolve(const std::string& name) const {
  if (!knows(name)) return std::nullopt;
  return resolve(name);
}

std::set<std::string> Lexicon::hypernym_closure(const std::string& term) const {
  std::string t = resolve(term);
  std::set<std::string> out;
  std::deque<std::string> queue{t};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    auto it = parents_.find(cur);
    if (it == parents_.end()) continue;
    for (const auto& p : it->second) {
      if (out.insert(p).second) queue.push_back(p);
    }
  }
  out.erase(t);
  return out;
}

std::set<std::string> Lexicon::hyponyms(const std::string& term) const {
  std::string t = resolve(term);
  std::set<std::string> out;
  std::deque<std::string> queue{t};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    auto it = children_.find(cur);
    if (it == children_.end()) continue;
    for (const auto& c : it->second) {
      if (out.insert(c).second) queue.push_back(c);
    }
  }
  out.erase(t);
  return out;
}

bool Lexicon::is_object(const std::string& term) const {
  if (!knows("object"))
    throw Error("lexicon does not declare the distinguished term \"object\"");
  std::string t = resolve(term);
  if (t == resolve("object")) return true;
  return hypernym_closure(t).count(resolve("object")) != 0;
}

std::vector<std::vector<std::string>> Lexicon::hypernym_levels(const std::string& term) const {
  std::string t = resolve(term);
  std::vector<std::vector<std::string>> levels{{t}};
  std::set<std::string> visited{t};
  while (true) {
    std::set<std::string> next;
    for (const auto& cur : levels.back()) {
      auto it = parents_.find(cur);
      if (it == parents_.end()) continue;
      for (const auto& p : it->second) {
        if (!visited.count(p)) next.insert(p);
      }
    }
    if (next.empty()) break;
    visited.insert(next.begin(), next.end());
    levels.emplace_back(next.begin(), next.end());
  }
  return levels;
}

}  // namespace reqtax
