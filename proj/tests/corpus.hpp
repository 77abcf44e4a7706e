#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "aqftop/fincat.hpp"
#include "aqftop/staralg.hpp"
#include "aqftop/textio.hpp"

namespace aqftop::testing {

inline std::filesystem::path corpus_path(const std::string& name) {
  return std::filesystem::path(AQFTOP_CORPUS_DIR) / name;
}

inline OrthCategory load_category(const std::string& name) {
  return validate_category(read_category_file(corpus_path(name)));
}

inline FunctorToMon load_functor(const std::string& file, const OrthCategory& cat) {
  return resolve_functor(read_algebra_file(corpus_path(file)), cat);
}

inline Monoid load_monoid(const std::string& file, const std::string& name) {
  const AlgebraFile f = read_algebra_file(corpus_path(file));
  const Monoid* m = f.find_monoid(name);
  if (!m) throw ArgumentError("no monoid " + name + " in " + file);
  return *m;
}

inline const std::vector<std::string>& bundled_categories() {
  static const std::vector<std::string> names{
      "terminal_empty.cat", "terminal_full.cat", "arrow_empty.cat", "arrow_perp.cat",
      "vee.cat",            "z2_empty.cat",      "square.cat"};
  return names;
}

/// (category, algebra or functor file) pairs from instances.txt.
inline std::vector<std::pair<std::string, std::string>> bundled_instances() {
  std::ifstream in(corpus_path("instances.txt"));
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    out.emplace_back(line.substr(0, sp), line.substr(line.find_first_not_of(' ', sp)));
  }
  return out;
}

}  // namespace aqftop::testing
