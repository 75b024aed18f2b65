#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace reqtax {

/// Error with a formatted diagnostic message ("<where>: <what>").
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  Error(const std::string& where, const std::string& msg)
      : std::runtime_error(where.empty() ? msg : where + ": " + msg) {}
};

/// Lowercase slug: [a-z0-9] kept, everything else collapsed to single '_',
/// trimmed at both ends. "Pedestrian crossing" -> "pedestrian_crossing".
std::string slugify(const std::string& name);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

/// FNV-1a 64-bit over the bytes, hex encoded. Used for artifact comparison.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace reqtax
