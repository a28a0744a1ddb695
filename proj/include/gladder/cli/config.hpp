#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gladder/common.hpp"

namespace gladder {

// A configuration problem, located by line (0 when unknown) and field ("" for syntax errors).
class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& what)
      : Error(ErrorCode::ConfigError, locate(line, field) + what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string locate(int line, const std::string& field) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    if (!field.empty()) s += "field '" + field + "': ";
    return s;
  }
  int line_;
  std::string field_;
};

struct Tolerances {
  double h1 = 0.10;     // (H1) tables, relative, at the largest n
  double level = 0.15;  // level-p recovery against II^(p)(omega)
  double z = 1e-3;      // |Z_n - 1| at the largest n
  double zeta = 0.15;   // saddle recovery against zeta(z)
  double minimum = 1e-3;  // saddle recovery at a minimum, absolute
  double dirac = 0.05;  // Dirac recovery against G(x)
  double ratio = 1e-2;  // measure ratios, at the largest n
  double h5 = 1e-2;     // beta_n / theta^(1)_n at the largest n

  bool operator==(const Tolerances&) const = default;
};

struct SimulateConfig {
  int n = 200;
  double horizon = 100;
  std::vector<double> start;  // empty: the first minimum

  bool operator==(const SimulateConfig&) const = default;
};

struct RunConfig {
  std::string potential = "double_well";  // catalog name or expression in x1..xd
  int dimension = 0;                      // 0: inferred
  std::vector<int> n_grid{200, 400, 800, 1600};
  std::optional<double> epsilon;          // well margin; default 0.2 (h - max F(m))
  std::vector<int> levels;                // empty: all levels 1..q
  // dirac is opt-in: its O(1/n) bias grows with the derivatives of F at the point
  std::vector<std::string> claims{"h1", "level", "zeta", "ratios", "h5"};
  std::map<int, std::vector<double>> omega;  // per level; default uniform
  std::vector<int> saddles;               // saddle ordinals (1-based) for zeta; empty: all
  std::vector<double> dirac_point;        // empty: (1/4, ..., 1/4)
  double eps_exponent = 0.4;              // saddle cutoff scale eps_n = n^-eps_exponent
  Tolerances tolerances;
  std::uint64_t seed = 1;
  SimulateConfig simulate;
  std::string output = "gamma-ladder-out";
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string>& known_claims() {
  static const std::vector<std::string> c{"h1", "level", "zeta", "dirac", "ratios", "h5"};
  return c;
}

namespace detail {

// 1-based line of the first occurrence of "key" in the source text, 0 if absent.
inline int line_of(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

inline int line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace detail

// Parses a JSON config (// and /* */ comments allowed). Unknown keys are errors, so typos do
// not silently fall back to defaults.
inline RunConfig parse_config(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto p = msg.find("parse error");
    throw ConfigError(detail::line_at(text, e.byte > 0 ? e.byte - 1 : 0), "",
                      p == std::string::npos ? msg : msg.substr(p));
  }
  if (!j.is_object()) throw ConfigError(1, "", "config must be a JSON object");
  RunConfig c;
  std::string key;
  auto fail = [&](const std::string& what) -> ConfigError { return ConfigError(detail::line_of(text, key), key, what); };
  try {
    static const std::vector<std::string> allowed{"schema_version", "potential", "dimension", "n_grid", "epsilon",
                                                  "levels", "claims", "omega", "saddles", "dirac_point",
                                                  "eps_exponent", "tolerances", "seed", "simulate", "output",
                                                  "threads"};
    for (auto it = j.begin(); it != j.end(); ++it) {
      key = it.key();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) throw fail("unknown key");
    }
    key = "schema_version";
    if (!j.contains(key)) throw ConfigError(1, key, "missing");
    if (j[key].get<int>() != 1) throw fail("unsupported schema version");
    if (j.contains(key = "potential")) c.potential = j[key].get<std::string>();
    if (c.potential.empty()) throw fail("must not be empty");
    if (j.contains(key = "dimension")) c.dimension = j[key].get<int>();
    if (c.dimension < 0 || c.dimension > 2) throw fail("must be 0 (infer), 1 or 2");
    if (j.contains(key = "n_grid")) c.n_grid = j[key].get<std::vector<int>>();
    if (c.n_grid.empty()) throw fail("must not be empty");
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
      if (c.n_grid[i] < 8) throw fail("lattice sizes must be at least 8");
      if (i && c.n_grid[i] <= c.n_grid[i - 1]) throw fail("must be strictly increasing");
    }
    if (j.contains(key = "epsilon") && !j[key].is_null()) {
      c.epsilon = j[key].get<double>();
      if (!(*c.epsilon > 0)) throw fail("must be positive");
    }
    if (j.contains(key = "levels")) c.levels = j[key].get<std::vector<int>>();
    for (int p : c.levels)
      if (p < 1) throw fail("levels are 1-based");
    if (j.contains(key = "claims")) c.claims = j[key].get<std::vector<std::string>>();
    for (auto& s : c.claims)
      if (std::find(known_claims().begin(), known_claims().end(), s) == known_claims().end())
        throw fail("unknown claim '" + s + "'");
    if (j.contains(key = "omega")) {
      for (auto it = j[key].begin(); it != j[key].end(); ++it) {
        int p = 0;
        try {
          p = std::stoi(it.key());
        } catch (...) {
          throw fail("keys are level numbers");
        }
        auto w = it.value().get<std::vector<double>>();
        for (double v : w)
          if (!(v > 0)) throw fail("weights must be positive");
        c.omega[p] = w;
      }
    }
    if (j.contains(key = "saddles")) c.saddles = j[key].get<std::vector<int>>();
    for (int s : c.saddles)
      if (s < 1) throw fail("saddle ordinals are 1-based");
    if (j.contains(key = "dirac_point")) c.dirac_point = j[key].get<std::vector<double>>();
    if (j.contains(key = "eps_exponent")) c.eps_exponent = j[key].get<double>();
    if (!(c.eps_exponent > 1.0 / 3 && c.eps_exponent < 0.5)) throw fail("must lie strictly between 1/3 and 1/2");
    if (j.contains(key = "tolerances")) {
      auto& t = j[key];
      for (auto it = t.begin(); it != t.end(); ++it) {
        key = it.key();
        double v = it.value().get<double>();
        if (!(v > 0)) throw fail("tolerances must be positive");
        auto& T = c.tolerances;
        if (key == "h1") T.h1 = v;
        else if (key == "level") T.level = v;
        else if (key == "z") T.z = v;
        else if (key == "zeta") T.zeta = v;
        else if (key == "minimum") T.minimum = v;
        else if (key == "dirac") T.dirac = v;
        else if (key == "ratio") T.ratio = v;
        else if (key == "h5") T.h5 = v;
        else throw fail("unknown tolerance");
      }
    }
    if (j.contains(key = "seed")) c.seed = j[key].get<std::uint64_t>();
    if (j.contains(key = "simulate")) {
      auto& s = j[key];
      for (auto it = s.begin(); it != s.end(); ++it) {
        key = it.key();
        if (key == "n") c.simulate.n = it.value().get<int>();
        else if (key == "horizon") c.simulate.horizon = it.value().get<double>();
        else if (key == "start") c.simulate.start = it.value().get<std::vector<double>>();
        else throw fail("unknown simulate option");
      }
      key = "simulate";
      if (c.simulate.n < 8) throw fail("n must be at least 8");
      if (!(c.simulate.horizon > 0)) throw fail("horizon must be positive");
    }
    if (j.contains(key = "output")) c.output = j[key].get<std::string>();
    if (j.contains(key = "threads")) c.threads = j[key].get<int>();
    if (c.threads < 1) throw fail("must be at least 1");
  } catch (const json::exception& e) {
    std::string msg = e.what();
    auto p = msg.find("] ");
    throw fail(p == std::string::npos ? msg : msg.substr(p + 2));
  }
  return c;
}

inline RunConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  using nlohmann::json;
  json j;
  j["schema_version"] = 1;
  j["potential"] = c.potential;
  j["dimension"] = c.dimension;
  j["n_grid"] = c.n_grid;
  j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  j["levels"] = c.levels;
  j["claims"] = c.claims;
  json om = json::object();
  for (auto& [p, w] : c.omega) om[std::to_string(p)] = w;
  j["omega"] = om;
  j["saddles"] = c.saddles;
  j["dirac_point"] = c.dirac_point;
  j["eps_exponent"] = c.eps_exponent;
  const auto& T = c.tolerances;
  j["tolerances"] = {{"h1", T.h1},       {"level", T.level}, {"z", T.z},         {"zeta", T.zeta},
                     {"minimum", T.minimum}, {"dirac", T.dirac}, {"ratio", T.ratio}, {"h5", T.h5}};
  j["seed"] = c.seed;
  j["simulate"] = {{"n", c.simulate.n}, {"horizon", c.simulate.horizon}, {"start", c.simulate.start}};
  j["output"] = c.output;
  j["threads"] = c.threads;
  return j;
}

inline std::string emit_config(const RunConfig& c) { return config_to_json(c).dump(2) + "\n"; }

}  // namespace gladder
