#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gladder/landscape/critical.hpp"

namespace gladder {

struct ValidationReport {
  std::vector<ConditionCheck> checks;  // F1..F6 and the Euler-characteristic check
  double h = 0;                        // common saddle height (mean when F5 fails)
  int flood_resolution = 0;            // grid used for the sublevel-set checks

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string failures() const {
    std::string s;
    for (auto& c : checks)
      if (!c.pass) s += c.name + ": " + c.detail + "; ";
    return s;
  }
};

struct ValidationOptions {
  int flood_resolution = 0;  // 0: chosen from the critical data
  double height_tol = 1e-8;  // F5
  double higher_index_tol = 1e-6;
};

namespace detail {
inline std::string where(const CriticalPoint& c) {
  std::ostringstream s;
  s.precision(10);
  s << "(";
  for (std::size_t i = 0; i < c.location.size(); ++i) s << (i ? ", " : "") << c.location[i];
  s << ")";
  return s.str();
}
}  // namespace detail

// The sublevel-set conditions are decided on a grid at thresholds h -/+ eta, eta a quarter of
// the gap from h to the nearest other critical value: no critical value lies between, so the
// sets have the topology of {F < h} and {F <= h}. The grid is refined until the narrowest
// neck near a saddle (width about 2 sqrt(2 eta / |xi|)) spans several cells.
inline ValidationReport validate_assumptions(const Potential& F, const std::vector<CriticalPoint>& cps,
                                             ValidationOptions opt = {}) {
  ValidationReport rep;
  const int d = F.dim();
  std::vector<const CriticalPoint*> saddles, minima;
  for (auto& c : cps) {
    if (c.kind == CriticalKind::Saddle) saddles.push_back(&c);
    if (c.kind == CriticalKind::Minimum) minima.push_back(&c);
  }

  rep.checks.push_back({"F1 regularity", true, "analytic expression (trigonometric polynomial)"});

  ConditionCheck f2{"F2 finitely many critical points", true, std::to_string(cps.size()) + " critical points"};
  if (cps.empty() || cps.size() > 4096) f2.pass = false;
  rep.checks.push_back(f2);

  ConditionCheck f3{"F3 nondegenerate Hessians", true, ""};
  for (auto& c : cps)
    if (c.degenerate) {
      f3.pass = false;
      f3.detail += "degenerate at " + detail::where(c) + "; ";
    }
  if (f3.pass) f3.detail = "all eigenvalues exceed 1e-8 in magnitude";
  rep.checks.push_back(f3);

  ConditionCheck f5{"F5 saddles at a common height", true, ""};
  if (saddles.empty()) {
    f5.pass = false;
    f5.detail = "no index-1 saddle points";
  } else {
    double lo = saddles[0]->value, hi = lo, sum = 0;
    for (auto* s : saddles) {
      lo = std::min(lo, s->value);
      hi = std::max(hi, s->value);
      sum += s->value;
    }
    rep.h = sum / saddles.size();
    if (hi - lo > opt.height_tol) {
      f5.pass = false;
      std::ostringstream s;
      s.precision(12);
      s << "saddle heights differ:";
      for (auto* z : saddles) s << " F" << detail::where(*z) << " = " << z->value;
      f5.detail = s.str();
    } else {
      std::ostringstream s;
      s.precision(12);
      s << "h = " << rep.h << " over " << saddles.size() << " saddles";
      f5.detail = s.str();
    }
  }

  ConditionCheck f4{"F4 saddles have one negative eigenvalue", true, ""};
  for (auto& c : cps) {
    if (c.index >= 2 && c.index <= d - 1) {
      f4.pass = false;
      f4.detail += "index-" + std::to_string(c.index) + " saddle at " + detail::where(c) + "; ";
    }
    if (c.index >= 2 && !saddles.empty() && std::abs(c.value - rep.h) <= opt.higher_index_tol) {
      f4.pass = false;
      f4.detail += "index-" + std::to_string(c.index) + " point at the saddle height " + detail::where(c) + "; ";
    }
  }
  if (f4.pass) f4.detail = std::to_string(saddles.size()) + " index-1 saddles";
  rep.checks.push_back(f4);
  rep.checks.push_back(f5);

  ConditionCheck f6{"F6 sublevel-set structure", true, ""};
  if (!f5.pass || minima.empty() || !f3.pass) {
    f6.pass = false;
    f6.detail = "not evaluated (needs F3, F5 and at least one minimum)";
  } else {
    const double h = rep.h;
    double gap = std::numeric_limits<double>::infinity(), curv = 0;
    for (auto& c : cps) {
      if (std::abs(c.value - h) > opt.height_tol) gap = std::min(gap, std::abs(c.value - h));
      if (c.kind == CriticalKind::Saddle) curv = std::max(curv, std::abs(c.eigenvalues.back()) + c.gamma);
    }
    double eta = 0.25 * gap;
    int res = opt.flood_resolution;
    if (res <= 0) {
      double neck = 2 * std::sqrt(2 * eta / std::max(curv, 1e-12));
      res = static_cast<int>(std::ceil(8 / neck));
      res = std::max(res, d == 1 ? 2048 : 256);
      res = std::min(res, d == 1 ? 1 << 16 : 1024);
    }
    rep.flood_resolution = res;
    TorusGrid g(res, d);
    const int N = g.size();
    std::vector<double> val(N);
    for (int k = 0; k < N; ++k) val[k] = F(g.point(k));
    std::vector<char> below(N), upto(N);
    for (int k = 0; k < N; ++k) {
      below[k] = val[k] < h - eta;
      upto[k] = val[k] < h + eta;
    }
    std::vector<int> lab;
    int pieces = grid_components(g, upto, lab);
    if (pieces != 1) {
      f6.pass = false;
      f6.detail += "{F <= h} has " + std::to_string(pieces) + " components; ";
    }
    for (auto* m : minima)
      if (!(m->value < h)) {
        f6.pass = false;
        f6.detail += "minimum above h at " + detail::where(*m) + "; ";
      }
    int comps = grid_components(g, below, lab);
    std::vector<int> count(comps, 0);
    std::vector<std::string> who(comps);
    for (auto& c : cps) {
      if (!(c.value < h - eta)) continue;
      int k = g.nearest(c.location);
      if (lab[k] < 0) {
        f6.pass = false;
        f6.detail += "critical point " + detail::where(c) + " not resolved by the grid; ";
        continue;
      }
      ++count[lab[k]];
      who[lab[k]] += std::string(to_string(c.kind)) + " " + detail::where(c) + " ";
      if (c.kind != CriticalKind::Minimum) {
        f6.pass = false;
        f6.detail += std::string(to_string(c.kind)) + " below h at " + detail::where(c) + "; ";
      }
    }
    for (int k = 0; k < comps; ++k)
      if (count[k] != 1) {
        f6.pass = false;
        f6.detail += "component " + std::to_string(k) + " holds " + std::to_string(count[k]) +
                     " critical points " + who[k] + "; ";
      }
    if (f6.pass)
      f6.detail = std::to_string(comps) + " components of {F < h}, each with one minimum (grid " +
                  std::to_string(res) + ")";
  }
  rep.checks.push_back(f6);

  int chi = euler_sum(cps);
  rep.checks.push_back({"Euler characteristic", chi == 0, "sum of (-1)^index = " + std::to_string(chi)});
  return rep;
}

}  // namespace gladder
