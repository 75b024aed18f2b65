#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace reqtax {

/// Finite set of requirement id tokens in canonical sorted order.
/// Equal sets serialize to identical bytes; ordering is lexicographic over
/// the sorted id sequence, which coincides with ordering of the serialized
/// form because ids ("R_..." tokens) contain no character below ','.
class RequirementSet {
public:
  RequirementSet() = default;
  explicit RequirementSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  RequirementSet(std::initializer_list<std::string> ids)
      : RequirementSet(std::vector<std::string>(ids)) {}

  const std::vector<std::string>& ids() const { return ids_; }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  bool contains(const std::string& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  bool subset_of(const RequirementSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  bool proper_subset_of(const RequirementSet& other) const {
    return ids_.size() < other.ids_.size() && subset_of(other);
  }

  /// this \ other
  RequirementSet difference(const RequirementSet& other) const {
    RequirementSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
  }

  RequirementSet unite(const RequirementSet& other) const {
    RequirementSet out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
  }

  void insert(const std::string& id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
  }

  /// Canonical byte form: ids joined with ','.
  std::string serialize() const {
    std::string out;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (i) out += ',';
      out += ids_[i];
    }
    return out;
  }

  auto operator<=>(const RequirementSet&) const = default;

private:
  std::vector<std::string> ids_;
};

}  // namespace reqtax
