#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reqtax/util.hpp"

namespace reqtax::jsonu {

using nlohmann::json;

/// Parse with syntax diagnostics as "<source>:<line>:<col>: <reason>".
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    if (offset > text.size()) offset = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string reason = e.what();
    // nlohmann prefixes "[json.exception.parse_error.101] parse error at line ...: "
    auto pos = reason.find("] ");
    if (pos != std::string::npos) reason = reason.substr(pos + 2);
    throw Error(source + ":" + std::to_string(line) + ":" + std::to_string(col), reason);
  }
}

inline std::string type_name(const json& j) {
  if (j.is_object()) return "object";
  if (j.is_array()) return "array";
  if (j.is_string()) return "string";
  if (j.is_boolean()) return "boolean";
  if (j.is_null()) return "null";
  if (j.is_number()) return "number";
  return j.type_name();
}

inline void expect(bool ok, const std::string& where, const std::string& msg) {
  if (!ok) throw Error(where, msg);
}

inline const json& object_at(const json& j, const std::string& where) {
  expect(j.is_object(), where, "expected object, got " + type_name(j));
  return j;
}

inline const json& array_at(const json& j, const std::string& where) {
  expect(j.is_array(), where, "expected array, got " + type_name(j));
  return j;
}

inline std::string string_at(const json& j, const std::string& where) {
  expect(j.is_string(), where, "expected string, got " + type_name(j));
  return j.get<std::string>();
}

inline bool bool_at(const json& j, const std::string& where) {
  expect(j.is_boolean(), where, "expected boolean, got " + type_name(j));
  return j.get<bool>();
}

inline double number_at(const json& j, const std::string& where) {
  expect(j.is_number(), where, "expected number, got " + type_name(j));
  return j.get<double>();
}

inline int int_at(const json& j, const std::string& where) {
  expect(j.is_number_integer(), where, "expected integer, got " + type_name(j));
  return j.get<int>();
}

/// Reject unknown keys, require mandatory ones.
inline void check_keys(const json& obj, const std::string& where,
                       const std::set<std::string>& allowed,
                       const std::set<std::string>& required) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw Error(where, "unknown key \"" + it.key() + "\"");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) throw Error(where, "missing key \"" + key + "\"");
  }
}

inline std::vector<std::string> string_array_at(const json& j, const std::string& where) {
  array_at(j, where);
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(string_at(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace reqtax::jsonu
