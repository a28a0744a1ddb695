#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gladder/hierarchy/report.hpp"
#include "gladder/landscape/catalog.hpp"
#include "gladder/landscape/gibbs.hpp"
#include "gladder/landscape/saddle.hpp"

namespace gladder {

struct LandscapeOptions {
  CriticalSearchOptions search;
  ValidationOptions validation;
  std::optional<double> eps;
};

// Everything derived from a potential. Wells, graph and ladder are present only when the
// validation report passes.
struct Landscape {
  Potential F;
  std::vector<CriticalPoint> critical;
  std::vector<SeedFailure> seed_failures;
  ValidationReport report;
  std::optional<WellStructure> wells;
  std::optional<SaddleGraph> graph;
  std::optional<Ladder> ladder;

  bool valid() const { return report.pass(); }
  void require_valid() const {
    if (!valid()) throw Error(ErrorCode::ValidationFailed, "landscape validation failed: " + report.failures());
  }
  const WellStructure& W() const {
    require_valid();
    return *wells;
  }
  const SaddleGraph& G() const {
    require_valid();
    return *graph;
  }
  const Ladder& L() const {
    require_valid();
    return *ladder;
  }
  int q() const { return W().q(); }
  // Critical-point index of a saddle by position among saddles (0-based).
  int saddle(int k = 0) const {
    for (std::size_t i = 0; i < critical.size(); ++i)
      if (critical[i].kind == CriticalKind::Saddle && k-- == 0) return static_cast<int>(i);
    throw Error(ErrorCode::InvalidInput, "no such saddle");
  }
};

inline Landscape analyze_landscape(const Potential& F, const LandscapeOptions& opt = {}) {
  Landscape L;
  L.F = F;
  auto search = opt.search;
  search.allow_degenerate = true;  // degeneracy is a report entry here
  L.critical = find_critical_points(F, search, &L.seed_failures);
  L.report = validate_assumptions(F, L.critical, opt.validation);
  if (!L.report.pass()) return L;
  L.wells = build_wells(F, L.critical, L.report, opt.eps);
  L.graph = saddle_graph(F, L.critical, *L.wells);
  L.ladder = landscape_ladder(*L.graph, *L.wells);
  return L;
}

inline nlohmann::json landscape_to_json(const Landscape& L) {
  using nlohmann::json;
  json j;
  j["schema_version"] = 1;
  j["potential"] = L.F.source();
  j["dimension"] = L.F.dim();
  json cps = json::array();
  for (auto& c : L.critical)
    cps.push_back({{"location", c.location},
                   {"value", c.value},
                   {"eigenvalues", c.eigenvalues},
                   {"index", c.index},
                   {"kind", to_string(c.kind)},
                   {"gamma", c.gamma},
                   {"degenerate", c.degenerate}});
  j["critical_points"] = cps;
  json checks = json::array();
  for (auto& c : L.report.checks) checks.push_back({{"condition", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["validation"] = {{"pass", L.report.pass()}, {"checks", checks}};
  json fails = json::array();
  for (auto& f : L.seed_failures) fails.push_back({{"seed", f.seed}, {"reason", f.reason}});
  j["newton_seed_failures"] = fails;
  if (L.valid()) {
    const auto& W = *L.wells;
    j["h"] = W.h;
    j["epsilon"] = W.eps;
    j["wells"] = json::array();
    for (int k = 0; k < W.size(); ++k)
      j["wells"].push_back({{"index", k + 1},
                            {"location", W.location[k]},
                            {"F", W.value[k]},
                            {"depth", W.depth_hat[k]},
                            {"gamma", W.gamma[k]}});
    j["depths"] = W.depths;
    j["q"] = W.q();
    json conduct = json::array();
    for (auto& e : L.graph->contributions)
      conduct.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"saddle", L.critical[e.saddle].location}, {"c", e.weight}});
    j["saddle_graph"] = {{"conductance", L.graph->c}, {"contributions", conduct}};
  }
  return j;
}

}  // namespace gladder
