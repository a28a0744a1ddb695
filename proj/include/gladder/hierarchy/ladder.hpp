#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gladder/hierarchy/functional.hpp"
#include "gladder/hierarchy/reduced.hpp"

namespace gladder {

struct LadderLevel {
  int p = 1;
  std::optional<double> depth;               // d_p when known
  std::vector<std::vector<int>> valleys;     // S_{p,j} as subsets of S_1
  ReducedChain reduced;
  ClassDecomposition classes;
  std::vector<Measure> stationary;           // M^(p)_m over S_p, one per closed class
  std::vector<std::vector<double>> limit;    // pi^(p)_j over S_1, by the recursion
  std::vector<std::vector<double>> product;  // m_{p,j} over S_1, by the product formula
};

struct Ladder {
  int base_size = 0;                      // |S_1|
  std::vector<LadderLevel> levels;        // p = 1..q
  std::vector<int> top_valley;            // S_{q+1,1}
  std::vector<double> top_limit;          // pi^(q+1)_1 by the recursion
  std::vector<double> top_product;        // m_{q+1,1} by the product formula

  int q() const { return static_cast<int>(levels.size()); }
  const LadderLevel& level(int p) const { return levels.at(p - 1); }
};

namespace detail {

inline std::vector<std::vector<double>> recursion_step(const LadderLevel& L, int n1) {
  std::vector<std::vector<double>> next;
  for (std::size_t m = 0; m < L.classes.closed.size(); ++m) {
    std::vector<double> w(n1, 0.0);
    for (int k : L.classes.closed[m])
      for (int i = 0; i < n1; ++i) w[i] += L.stationary[m][k] * L.limit[k][i];
    next.push_back(std::move(w));
  }
  return next;
}

// m_{p,j}(i) as a product of restricted stationary weights along the ancestry of i, found by
// valley membership level by level (no use of the recursion's intermediate measures).
inline std::vector<double> product_measure(const Ladder& L, int p, const std::vector<int>& valley) {
  std::vector<double> w(L.base_size, 0.0);
  for (int i : valley) {
    double prod = 1;
    int here = i;  // ancestor of i at level k
    for (int k = 1; k < p; ++k) {
      const LadderLevel& lv = L.level(k);
      int cls = -1;
      for (std::size_t m = 0; m < lv.classes.closed.size(); ++m)
        for (int x : lv.classes.closed[m])
          if (x == here) cls = static_cast<int>(m);
      if (cls < 0) {
        prod = 0;
        break;
      }
      prod *= lv.stationary[cls][here];
      here = cls;
    }
    w[i] = prod;
  }
  return w;
}

}  // namespace detail

// Levels from the S_1 size and the reduced chains r_1..r_q. Depths are optional labels.
inline Ladder build_ladder(int base_size, const std::vector<ReducedChain>& chains,
                           const std::vector<double>& depths = {}) {
  if (chains.empty()) throw Error(ErrorCode::InvalidInput, "ladder needs at least one reduced chain");
  if (chains[0].size() != base_size) throw Error(ErrorCode::H2Violation, "level-1 chain size differs from |S_1|");
  Ladder L;
  L.base_size = base_size;
  std::vector<std::vector<int>> valleys(base_size);
  for (int i = 0; i < base_size; ++i) valleys[i] = {i};
  std::vector<std::vector<double>> limit(base_size, std::vector<double>(base_size, 0.0));
  for (int i = 0; i < base_size; ++i) limit[i][i] = 1;

  for (std::size_t p = 0; p < chains.size(); ++p) {
    LadderLevel lv;
    lv.p = static_cast<int>(p) + 1;
    if (p < depths.size()) lv.depth = depths[p];
    lv.reduced = chains[p];
    lv.reduced.validate();
    if (lv.reduced.size() != static_cast<int>(valleys.size()))
      throw Error(ErrorCode::H2Violation, "level " + std::to_string(p + 1) + " chain has " +
                                              std::to_string(lv.reduced.size()) + " states, expected " +
                                              std::to_string(valleys.size()));
    lv.classes = decompose_classes(lv.reduced);
    for (auto& cls : lv.classes.closed) lv.stationary.push_back(restricted_stationary(lv.reduced, cls));
    lv.valleys = valleys;
    lv.limit = limit;
    const int closed = static_cast<int>(lv.classes.closed.size());
    if (p + 1 < chains.size()) {
      if (closed != chains[p + 1].size())
        throw Error(ErrorCode::H2Violation, "level " + std::to_string(p + 1) + " has " + std::to_string(closed) +
                                                " closed classes but level " + std::to_string(p + 2) + " has " +
                                                std::to_string(chains[p + 1].size()) + " states");
      if (closed >= lv.reduced.size())
        throw Error(ErrorCode::H2Violation, "number of valleys does not decrease at level " + std::to_string(p + 1));
    } else if (closed != 1) {
      throw Error(ErrorCode::H3Violation, "top level has " + std::to_string(closed) + " closed classes");
    }
    std::vector<std::vector<int>> next;
    for (auto& cls : lv.classes.closed) {
      std::vector<int> u;
      for (int j : cls) u.insert(u.end(), valleys[j].begin(), valleys[j].end());
      std::sort(u.begin(), u.end());
      next.push_back(u);
    }
    limit = detail::recursion_step(lv, base_size);
    valleys = next;
    L.levels.push_back(std::move(lv));
  }
  L.top_valley = valleys[0];
  L.top_limit = limit[0];
  for (auto& lv : L.levels)
    for (auto& v : lv.valleys) lv.product.push_back(detail::product_measure(L, lv.p, v));
  L.top_product = detail::product_measure(L, L.q() + 1, L.top_valley);
  return L;
}

// Largest |recursion - product| over every weight of every level.
inline double identity_defect(const Ladder& L) {
  double worst = 0;
  for (auto& lv : L.levels)
    for (std::size_t j = 0; j < lv.limit.size(); ++j)
      for (int i = 0; i < L.base_size; ++i) worst = std::max(worst, std::abs(lv.limit[j][i] - lv.product[j][i]));
  for (int i = 0; i < L.base_size; ++i) worst = std::max(worst, std::abs(L.top_limit[i] - L.top_product[i]));
  return worst;
}

// Level-p functional on Dirac mixtures over S_1: I^(p)(omega) when mu = sum omega_j pi^(p)_j,
// +infinity otherwise. p = q+1 is the trivial top functional (0 on its single limit measure).
inline double lift_functional(const Ladder& L, int p, const std::vector<double>& mu, double tol = 1e-9) {
  if (static_cast<int>(mu.size()) != L.base_size) throw Error(ErrorCode::InvalidInput, "mu has the wrong size");
  const double inf = std::numeric_limits<double>::infinity();
  if (p < 1 || p > L.q() + 1) throw Error(ErrorCode::InvalidInput, "level out of range");
  std::vector<std::vector<int>> valleys = p <= L.q() ? L.level(p).valleys : std::vector<std::vector<int>>{L.top_valley};
  std::vector<std::vector<double>> meas = p <= L.q() ? L.level(p).limit : std::vector<std::vector<double>>{L.top_limit};
  std::vector<char> covered(L.base_size, 0);
  std::vector<double> omega(valleys.size(), 0.0);
  for (std::size_t j = 0; j < valleys.size(); ++j) {
    for (int i : valleys[j]) {
      covered[i] = 1;
      omega[j] += mu[i];
    }
    for (int i : valleys[j])
      if (std::abs(mu[i] - omega[j] * meas[j][i]) > tol) return inf;
  }
  for (int i = 0; i < L.base_size; ++i)
    if (!covered[i] && std::abs(mu[i]) > tol) return inf;
  if (p == L.q() + 1) return 0.0;
  double s = 0;
  for (double& v : omega) s += (v = std::max(v, 0.0));
  for (double& v : omega) v /= s;
  return dv_finite(L.level(p).reduced, omega).value;
}

}  // namespace gladder
