#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "gladder/hierarchy/ladder.hpp"

namespace gladder {

struct ZeroLevelReport {
  std::vector<ConditionCheck> conditions;  // (a), (b), (c), (d)
  bool pass() const {
    for (auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {
inline std::vector<double> mixture(const std::vector<std::vector<double>>& meas, const std::vector<double>& a, int n) {
  std::vector<double> mu(n, 0.0);
  for (std::size_t m = 0; m < meas.size(); ++m)
    for (int i = 0; i < n; ++i) mu[i] += a[m] * meas[m][i];
  return mu;
}
inline std::vector<double> simplex_point(std::mt19937_64& g, int n) {
  std::exponential_distribution<double> E(1.0);
  std::vector<double> w(n);
  double s = 0;
  for (auto& v : w) s += (v = E(g));
  for (auto& v : w) v /= s;
  return w;
}
}  // namespace detail

// Checks the four conditions of a Gamma-expansion on the ladder's finite functionals:
//  (a) speeds separate: depths strictly increase (theta^(p)/theta^(p+1) = e^{n(d_p-d_{p+1})});
//  (b) each I^(p) is nonnegative, vanishes on stationary measures and is positive elsewhere
//      (the n -> infinity convergence itself is evidenced by the verification tables);
//  (c) I^(p+1) is finite exactly on the zero set of I^(p);
//  (d) the last zero set is a singleton.
inline ZeroLevelReport zero_level_set_report(const Ladder& L, int samples = 20, std::uint64_t seed = 1) {
  ZeroLevelReport rep;
  std::mt19937_64 g(seed);
  const int n1 = L.base_size;

  ConditionCheck a{"(a) separated time scales", true, ""};
  for (int p = 1; p <= L.q(); ++p) {
    auto d = L.level(p).depth;
    if (!d) {
      a.detail += "d_" + std::to_string(p) + " unknown; ";
      continue;
    }
    if (p == 1 && !(*d > 0)) a.pass = false;
    if (p > 1 && L.level(p - 1).depth && !(*L.level(p - 1).depth < *d)) a.pass = false;
    a.detail += "d_" + std::to_string(p) + "=" + std::to_string(*d) + "; ";
  }
  rep.conditions.push_back(a);

  ConditionCheck b{"(b) finite functionals vanish exactly on stationary measures", true, ""};
  ConditionCheck c{"(c) next level finite exactly on the zero set", true, ""};
  for (int p = 1; p <= L.q(); ++p) {
    const auto& lv = L.level(p);
    const int np = lv.reduced.size();
    const int closed = static_cast<int>(lv.stationary.size());
    for (int s = 0; s < samples; ++s) {
      // stationary: a convex combination of the restricted stationary measures
      auto alpha = detail::simplex_point(g, closed);
      std::vector<double> omega(np, 0.0);
      for (int m = 0; m < closed; ++m)
        for (int k = 0; k < np; ++k) omega[k] += alpha[m] * lv.stationary[m][k];
      double zero = dv_finite(lv.reduced, omega).value;
      if (!(std::abs(zero) <= 1e-10)) {
        b.pass = false;
        b.detail += "I^(" + std::to_string(p) + ") = " + std::to_string(zero) + " on a stationary measure; ";
      }
      auto mu = detail::mixture(lv.limit, omega, n1);
      double up = lift_functional(L, p + 1, mu);
      if (!std::isfinite(up)) {
        c.pass = false;
        c.detail += "level " + std::to_string(p + 1) + " infinite on a zero of level " + std::to_string(p) + "; ";
      }
      // generic: full support on S_p, not stationary unless the chain is trivial
      auto w = detail::simplex_point(g, np);
      double pos = dv_finite(lv.reduced, w).value;
      bool stationary_w = np == 1;
      if (!stationary_w && !(pos > 1e-12)) {
        b.pass = false;
        b.detail += "I^(" + std::to_string(p) + ") not positive off the stationary set; ";
      }
      if (!(pos >= -1e-12)) b.pass = false;
      double up2 = lift_functional(L, p + 1, detail::mixture(lv.limit, w, n1));
      if (!stationary_w && std::isfinite(up2)) {
        c.pass = false;
        c.detail += "level " + std::to_string(p + 1) + " finite off the zero set of level " + std::to_string(p) + "; ";
      }
    }
  }
  rep.conditions.push_back(b);
  rep.conditions.push_back(c);

  ConditionCheck d{"(d) top zero set is a singleton", true, ""};
  std::size_t top = L.levels.back().classes.closed.size();
  d.pass = top == 1;
  d.detail = std::to_string(top) + " closed class(es) at level " + std::to_string(L.q());
  rep.conditions.push_back(d);
  return rep;
}

inline nlohmann::json ladder_to_json(const Ladder& L) {
  using nlohmann::json;
  auto one_based = [](const std::vector<int>& v) {
    std::vector<int> o(v);
    for (int& x : o) ++x;
    return o;
  };
  json j;
  j["schema_version"] = 1;
  j["q"] = L.q();
  j["S1_size"] = L.base_size;
  json levels = json::array();
  for (auto& lv : L.levels) {
    json l;
    l["p"] = lv.p;
    if (lv.depth) l["depth"] = *lv.depth;
    json vs = json::array();
    for (auto& v : lv.valleys) vs.push_back(one_based(v));
    l["valleys"] = vs;
    l["rates"] = lv.reduced.rates;
    json cl = json::array();
    for (auto& c : lv.classes.closed) cl.push_back(one_based(c));
    l["closed_classes"] = cl;
    l["transient"] = one_based(lv.classes.transient);
    json ms = json::array();
    for (auto& m : lv.stationary) ms.push_back(m.weights);
    l["restricted_stationary"] = ms;
    l["limit_measures"] = lv.limit;
    levels.push_back(l);
  }
  j["levels"] = levels;
  j["top_valley"] = one_based(L.top_valley);
  j["top_limit_measure"] = L.top_limit;
  j["identity_defect"] = identity_defect(L);
  return j;
}

inline nlohmann::json report_to_json(const ZeroLevelReport& r) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& c : r.conditions) j.push_back({{"condition", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

}  // namespace gladder
