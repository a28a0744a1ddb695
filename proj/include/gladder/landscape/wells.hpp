#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gladder/landscape/validate.hpp"
#include "gladder/potential/trace.hpp"

namespace gladder {

struct WellStructure {
  std::vector<int> minima;             // S_1 -> index into the critical point list
  std::vector<std::vector<double>> location;
  std::vector<double> value;           // F(m_k)
  std::vector<double> gamma;           // gamma(m_k) = 1/sqrt(det Hess F(m_k))
  double h = 0;
  double eps = 0;
  std::vector<double> depth_hat;       // h - F(m_k)
  std::vector<double> depths;          // d_1 < ... < d_q
  std::vector<int> level;              // k -> p (1-based) with depth_hat_k = d_p
  std::vector<std::vector<int>> J;     // J_p as sorted S_1 indices, p = 1..q

  int size() const { return static_cast<int>(minima.size()); }
  int q() const { return static_cast<int>(depths.size()); }
  const std::vector<int>& valley_indices(int p) const { return J.at(p - 1); }
};

inline double default_epsilon(const ValidationReport& rep, const std::vector<CriticalPoint>& cps) {
  double top = -std::numeric_limits<double>::infinity();
  for (auto& c : cps)
    if (c.kind == CriticalKind::Minimum) top = std::max(top, c.value);
  return 0.2 * (rep.h - top);
}

inline WellStructure build_wells(const Potential& F, const std::vector<CriticalPoint>& cps,
                                 const ValidationReport& rep, std::optional<double> eps = std::nullopt,
                                 double tie_tol = 1e-8) {
  (void)F;
  if (!rep.pass()) throw Error(ErrorCode::ValidationFailed, "landscape validation failed: " + rep.failures());
  WellStructure W;
  W.h = rep.h;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (cps[i].kind == CriticalKind::Minimum) {
      W.minima.push_back(static_cast<int>(i));
      W.location.push_back(cps[i].location);
      W.value.push_back(cps[i].value);
      W.gamma.push_back(cps[i].gamma);
      top = std::max(top, cps[i].value);
    }
  W.eps = eps ? *eps : default_epsilon(rep, cps);
  if (!(W.eps > 0) || !(top + W.eps < W.h))
    throw Error(ErrorCode::EpsilonTooLarge, "epsilon must satisfy 0 < eps < h - max F(m) = " +
                                                std::to_string(W.h - top));
  for (double v : W.value) W.depth_hat.push_back(W.h - v);
  std::vector<double> sorted(W.depth_hat);
  std::sort(sorted.begin(), sorted.end());
  for (double v : sorted) {
    if (!W.depths.empty() && v - W.depths.back() <= tie_tol) {
      if (v != W.depths.back()) warn("depths " + std::to_string(W.depths.back()) + " and " + std::to_string(v) +
                                     " merged into one time scale");
      continue;
    }
    W.depths.push_back(v);
  }
  W.level.assign(W.size(), 0);
  for (int k = 0; k < W.size(); ++k)
    for (int p = 0; p < W.q(); ++p)
      if (std::abs(W.depth_hat[k] - W.depths[p]) <= tie_tol) W.level[k] = p + 1;
  W.J.resize(W.q());
  for (int p = 0; p < W.q(); ++p)
    for (int k = 0; k < W.size(); ++k)
      if (W.level[k] >= p + 1) W.J[p].push_back(k);
  return W;
}

// W(m_k) intersected with the lattice of mesh 1/n: the lattice component of
// {F < F(m_k) + eps} containing the lattice point nearest m_k. One list per k in S_1.
inline std::vector<std::vector<int>> well_sets(const Potential& F, const WellStructure& W, int n) {
  TorusGrid g(n, F.dim());
  const int N = g.size();
  std::vector<double> val(N);
  for (int x = 0; x < N; ++x) val[x] = F(g.point(x));
  std::vector<std::vector<int>> sets;
  std::vector<char> used(N, 0);
  for (int k = 0; k < W.size(); ++k) {
    std::vector<char> inside(N);
    double thr = W.value[k] + W.eps;
    for (int x = 0; x < N; ++x) inside[x] = val[x] < thr;
    int seed = g.nearest(W.location[k]);
    auto s = grid_flood(g, inside, seed);
    if (s.empty())
      throw Error(ErrorCode::InvalidInput, "lattice with n = " + std::to_string(n) + " misses well " +
                                               std::to_string(k + 1));
    for (int x : s) {
      if (used[x]) throw Error(ErrorCode::OverlappingSets, "wells overlap on the lattice n = " + std::to_string(n));
      used[x] = 1;
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

// The level-p valleys V^{p,j}, j in S_p, as a partition of part of the lattice.
inline Partition valley_partition(const WellStructure& W, const std::vector<std::vector<int>>& sets, int p) {
  Partition P;
  for (int k : W.valley_indices(p)) P.blocks.push_back(sets[k]);
  return P;
}

}  // namespace gladder
