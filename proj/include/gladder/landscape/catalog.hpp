#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gladder/landscape/potential.hpp"

namespace gladder {

struct CatalogEntry {
  std::string name;
  std::string expression;
  int dimension = 1;
  std::string description;
};

// Built-in potentials; data/catalog.json carries the same entries with their critical data.
inline const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"double_well", "sin(2*pi*x1)^2 + 0.2*(1 - cos(2*pi*x1))", 1,
       "asymmetric double well (delta = 0.2): deep well at 0, shallow well at 1/2, h = 1.21"},
      {"symmetric_double_well", "sin(2*pi*x1)^2", 1, "wells at 0 and 1/2 of depth 1"},
      {"cosine", "-cos(2*pi*x1)", 1, "single well at 0, maximum at 1/2"},
      {"three_well", "-cos(6*pi*x1) + 0.1*(1 + cos(6*pi*x1))*(1 + cos(2*pi*x1))", 1,
       "two deep wells near 1/3 and 2/3, a shallow well at 0, saddles at 1/6, 1/2, 5/6 (h = 1)"},
      {"product_2d", "sin(2*pi*x1)^2 + sin(2*pi*x2)^2", 2,
       "four wells, eight saddles at height 1, four maxima"},
  };
  return entries;
}

inline const CatalogEntry* find_catalog(const std::string& name) {
  for (auto& e : builtin_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

// A catalog name or an expression.
inline Potential load_potential(const std::string& spec, int d = 0) {
  if (auto* e = find_catalog(spec)) return parse_potential(e->expression, e->dimension);
  return parse_potential(spec, d);
}

inline std::vector<CatalogEntry> read_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open catalog " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ConfigError, "catalog " + path + ": " + ex.what());
  }
  std::vector<CatalogEntry> out;
  for (auto it = j["potentials"].begin(); it != j["potentials"].end(); ++it)
    out.push_back({it.key(), it.value().at("expression").template get<std::string>(),
                   it.value().value("dimension", 1), it.value().value("description", std::string())});
  return out;
}

}  // namespace gladder
