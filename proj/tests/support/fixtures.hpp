#pragma once

#include <string>

#include "reqtax/corpus.hpp"
#include "reqtax/util.hpp"

#ifndef REQTAX_FIXTURE_DIR
#error "REQTAX_FIXTURE_DIR must be defined by the build"
#endif

namespace reqtax::testfix {

inline std::string fixture_path(const std::string& name) {
  return std::string(REQTAX_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) {
  return read_file(fixture_path(name));
}

inline SpecDocument load_corpus(const std::string& name) {
  return parse_spec(fixture_text(name), name);
}

}  // namespace reqtax::testfix
