#include "reqtax/corpus.hpp"

#include <cmath>

#include "json_util.hpp"
#include "reqtax/util.hpp"

namespace reqtax {

std::string to_string(OffenseClass c) {
  switch (c) {
    case OffenseClass::none: return "none";
    case OffenseClass::warning: return "warning";
    case OffenseClass::fine: return "fine";
    case OffenseClass::fine_hindrance: return "fine_hindrance";
    case OffenseClass::fine_endangerment: return "fine_endangerment";
    case OffenseClass::fine_property_damage: return "fine_property_damage";
    case OffenseClass::criminal_offense: return "criminal_offense";
  }
  return "none";
}

std::optional<OffenseClass> offense_class_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(OffenseClass::criminal_offense); ++i) {
    auto c = static_cast<OffenseClass>(i);
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::strong_ordering compare_penalty(const Penalty& a, const Penalty& b) {
  if (a.offense_class != b.offense_class)
    return static_cast<int>(a.offense_class) <=> static_cast<int>(b.offense_class);
  if (a.fine_eur != b.fine_eur) return a.fine_eur < b.fine_eur ? std::strong_ordering::less
                                                               : std::strong_ordering::greater;
  return a.points <=> b.points;
}

std::string to_string(CollisionSeverity s) {
  return s == CollisionSeverity::injury_expected ? "injury_expected" : "property_damage_only";
}

std::optional<CollisionSeverity> severity_from_string(const std::string& s) {
  if (s == "injury_expected") return CollisionSeverity::injury_expected;
  if (s == "property_damage_only") return CollisionSeverity::property_damage_only;
  return std::nullopt;
}

const Requirement* SpecDocument::find_requirement(const std::string& id) const {
  auto it = requirement_index_.find(id);
  return it == requirement_index_.end() ? nullptr : &requirements[it->second];
}

Penalty SpecDocument::max_penalty(const RequirementSet& ids) const {
  if (ids.empty()) throw Error("max_penalty over empty requirement set");
  const Requirement* best = nullptr;
  for (const auto& id : ids.ids()) {
    const Requirement* r = find_requirement(id);
    if (!r) throw Error("unknown requirement id \"" + id + "\"");
    if (!best || compare_penalty(best->penalty, r->penalty) < 0) best = r;
  }
  return best->penalty;
}

const SafetyAnnotation* SpecDocument::find_annotation(const std::string& name) const {
  auto it = annotation_index_.find(name);
  return it == annotation_index_.end() ? nullptr : &safety_annotations[it->second];
}

namespace {

bool valid_requirement_id(const std::string& id) {
  if (id.size() < 3 || id.compare(0, 2, "R_") != 0) return false;
  for (std::size_t i = 2; i < id.size(); ++i) {
    char c = id[i];
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

Penalty parse_penalty(const nlohmann::json& j, const std::string& where) {
  jsonu::object_at(j, where);
  jsonu::check_keys(j, where, {"class", "fine_eur", "points"}, {"class", "fine_eur", "points"});
  Penalty p;
  std::string cls = jsonu::string_at(j.at("class"), where + "/class");
  auto oc = offense_class_from_string(cls);
  if (!oc) throw Error(where + "/class", "malformed penalty: unknown class \"" + cls + "\"");
  p.offense_class = *oc;
  p.fine_eur = jsonu::number_at(j.at("fine_eur"), where + "/fine_eur");
  if (p.fine_eur < 0 || !std::isfinite(p.fine_eur))
    throw Error(where + "/fine_eur", "malformed penalty: fine must be a non-negative number");
  p.points = jsonu::int_at(j.at("points"), where + "/points");
  if (p.points < 0)
    throw Error(where + "/points", "malformed penalty: points must be non-negative");
  if (p.offense_class == OffenseClass::none && (p.fine_eur != 0 || p.points != 0))
    throw Error(where, "malformed penalty: class none requires zero fine and points");
  return p;
}

SafetyAnnotation parse_annotation(const nlohmann::json& j, const std::string& where,
                                  const std::optional<std::string>& fixed_category) {
  jsonu::object_at(j, where);
  SafetyAnnotation a;
  if (fixed_category) {
    jsonu::check_keys(j, where, {"severity", "erratic"}, {"severity", "erratic"});
    a.category = *fixed_category;
  } else {
    jsonu::check_keys(j, where, {"category", "severity", "erratic"},
                      {"category", "severity", "erratic"});
    a.category = jsonu::string_at(j.at("category"), where + "/category");
  }
  std::string sev = jsonu::string_at(j.at("severity"), where + "/severity");
  auto s = severity_from_string(sev);
  if (!s) throw Error(where + "/severity", "unknown severity \"" + sev + "\"");
  a.severity = *s;
  a.erratic = jsonu::bool_at(j.at("erratic"), where + "/erratic");
  return a;
}

RequirementSet parse_requirement_refs(const nlohmann::json& j, const std::string& where,
                                      const SpecDocument& doc, const std::string& owner) {
  auto ids = jsonu::string_array_at(j, where);
  for (const auto& id : ids) {
    if (!doc.find_requirement(id))
      throw Error(where, "dangling requirement reference " + id + " in " + owner);
  }
  return RequirementSet(std::move(ids));
}

}  // namespace

SpecDocument parse_spec(const std::string& json_text, const std::string& source_name) {
  auto j = jsonu::parse_text(json_text, source_name);
  const std::string& w = source_name;
  jsonu::object_at(j, w);
  jsonu::check_keys(j, w,
                    {"requirements", "categories", "safety_annotations", "leaf_candidates",
                     "lexicon"},
                    {"requirements", "categories", "lexicon"});

  SpecDocument doc;
  doc.lexicon = Lexicon::from_json(j.at("lexicon"), w + "/lexicon");

  const auto& reqs = jsonu::array_at(j.at("requirements"), w + "/requirements");
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    std::string path = w + "/requirements[" + std::to_string(i) + "]";
    jsonu::object_at(reqs[i], path);
    jsonu::check_keys(reqs[i], path, {"id", "description", "penalty"},
                      {"id", "description", "penalty"});
    Requirement r;
    r.id = jsonu::string_at(reqs[i].at("id"), path + "/id");
    if (!valid_requirement_id(r.id))
      throw Error(path + "/id", "requirement id \"" + r.id + "\" does not match R_[A-Z0-9_]+");
    r.description = jsonu::string_at(reqs[i].at("description"), path + "/description");
    r.penalty = parse_penalty(reqs[i].at("penalty"), path + "/penalty");
    if (doc.requirement_index_.count(r.id))
      throw Error(path + "/id", "duplicate requirement id " + r.id);
    doc.requirement_index_[r.id] = doc.requirements.size();
    doc.requirements.push_back(std::move(r));
  }

  std::set<std::string> category_names;
  const auto& cats = jsonu::array_at(j.at("categories"), w + "/categories");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    std::string path = w + "/categories[" + std::to_string(i) + "]";
    jsonu::object_at(cats[i], path);
    jsonu::check_keys(cats[i], path,
                      {"name", "term", "requirements", "velocity_critical", "deferred"},
                      {"name", "requirements"});
    CategorySpec c;
    c.name = jsonu::string_at(cats[i].at("name"), path + "/name");
    jsonu::expect(!c.name.empty(), path + "/name", "empty category name");
    if (!category_names.insert(c.name).second)
      throw Error(path + "/name", "duplicate category name \"" + c.name + "\"");
    if (cats[i].contains("term")) {
      c.term = jsonu::string_at(cats[i].at("term"), path + "/term");
      if (!doc.lexicon.knows(*c.term))
        throw Error(path + "/term",
                    "dangling term reference \"" + *c.term + "\" in category \"" + c.name + "\"");
    }
    c.requirements = parse_requirement_refs(cats[i].at("requirements"), path + "/requirements",
                                            doc, "category \"" + c.name + "\"");
    if (cats[i].contains("velocity_critical"))
      c.velocity_critical = jsonu::bool_at(cats[i].at("velocity_critical"),
                                           path + "/velocity_critical");
    if (cats[i].contains("deferred"))
      c.deferred = jsonu::bool_at(cats[i].at("deferred"), path + "/deferred");
    if (c.deferred && c.name != "traffic signs/markings" && c.name != "traffic installations")
      throw Error(path, "deferred flag is reserved for the placeholder categories "
                        "\"traffic signs/markings\" and \"traffic installations\"");
    doc.categories.push_back(std::move(c));
  }

  std::set<std::string> leaf_names;
  if (j.contains("leaf_candidates")) {
    const auto& leaves = jsonu::array_at(j.at("leaf_candidates"), w + "/leaf_candidates");
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      std::string path = w + "/leaf_candidates[" + std::to_string(i) + "]";
      jsonu::object_at(leaves[i], path);
      jsonu::check_keys(leaves[i], path, {"name", "source", "term", "requirements", "safety"},
                        {"name", "source"});
      LeafCandidate lc;
      lc.name = jsonu::string_at(leaves[i].at("name"), path + "/name");
      jsonu::expect(!lc.name.empty(), path + "/name", "empty leaf candidate name");
      lc.source = jsonu::string_at(leaves[i].at("source"), path + "/source");
      bool dataset_source = lc.source.size() > 8 && lc.source.compare(0, 8, "dataset:") == 0;
      if (lc.source != "legal_text" && !dataset_source)
        throw Error(path + "/source",
                    "source must be \"legal_text\" or \"dataset:<name>\", got \"" + lc.source +
                        "\"");
      if (leaves[i].contains("term"))
        lc.term = jsonu::string_at(leaves[i].at("term"), path + "/term");
      if (leaves[i].contains("requirements"))
        lc.explicit_requirements =
            parse_requirement_refs(leaves[i].at("requirements"), path + "/requirements", doc,
                                   "leaf candidate \"" + lc.name + "\"");
      if (!lc.term && !lc.explicit_requirements)
        throw Error(path, "leaf candidate \"" + lc.name +
                              "\" needs a term or explicit requirements");
      if (leaves[i].contains("safety"))
        lc.safety = parse_annotation(leaves[i].at("safety"), path + "/safety", lc.name);
      leaf_names.insert(lc.name);
      doc.leaf_candidates.push_back(std::move(lc));
    }
  }

  if (j.contains("safety_annotations")) {
    const auto& anns = jsonu::array_at(j.at("safety_annotations"), w + "/safety_annotations");
    for (std::size_t i = 0; i < anns.size(); ++i) {
      std::string path = w + "/safety_annotations[" + std::to_string(i) + "]";
      SafetyAnnotation a = parse_annotation(anns[i], path, std::nullopt);
      if (!category_names.count(a.category) && !leaf_names.count(a.category))
        throw Error(path + "/category",
                    "annotation references unknown category \"" + a.category + "\"");
      auto it = doc.annotation_index_.find(a.category);
      if (it != doc.annotation_index_.end()) {
        if (!(doc.safety_annotations[it->second] == a))
          throw Error(path, "contradictory duplicate annotations for category \"" + a.category +
                                "\"");
        continue;  // identical duplicate, keep the first
      }
      doc.annotation_index_[a.category] = doc.safety_annotations.size();
      doc.safety_annotations.push_back(std::move(a));
    }
  }

  return doc;
}

}  // namespace reqtax
