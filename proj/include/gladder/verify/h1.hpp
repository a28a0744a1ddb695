#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gladder/landscape/landscape.hpp"
#include "gladder/potential/trace.hpp"
#include "gladder/verify/table.hpp"

namespace gladder {

// theta^(p)_n = n e^{n d_p}, in long double (e^{0.81 * 1600} is far beyond double).
inline long double time_scale(const Landscape& L, int p, int n) {
  const auto& W = L.W();
  if (p < 1 || p > W.q()) throw Error(ErrorCode::InvalidInput, "level out of range");
  return static_cast<long double>(n) * std::exp(static_cast<long double>(n) * static_cast<long double>(W.depths[p - 1]));
}

inline void check_grid(const std::vector<int>& ns) {
  if (ns.empty()) throw Error(ErrorCode::InvalidInput, "empty n-grid");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw Error(ErrorCode::InvalidInput, "n-grid must be strictly increasing");
}

// Mean jump rates of the trace on the level-p valleys, r_n(i,j) = F(i,j)/pi(V^{p,i}), i,j in S_p.
inline std::vector<std::vector<long double>> valley_rates(const Landscape& L, int p, int n,
                                                          const BasicChain<long double>& chain) {
  auto sets = well_sets(L.F, L.W(), n);
  auto flux = block_flux(chain, valley_partition(L.W(), sets, p));
  const int m = static_cast<int>(flux.mass.size());
  std::vector<std::vector<long double>> r(m, std::vector<long double>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) r[i][j] = flux.rate(i, j);
  return r;
}

// One table per ordered pair (i,j) of S_p: theta^(p)_n times the mean trace rate against r_p(i,j).
// Claims are named h1_p<p>_<i>_<j> with 1-based indices into S_p.
inline std::vector<ConvergenceTable> check_h1_rates(const Landscape& L, int p, const std::vector<int>& ns,
                                                    double tol = 0.10, int threads = 1) {
  check_grid(ns);
  if (p < 1 || p > L.q()) throw Error(ErrorCode::InvalidInput, "level out of range");
  const auto& r = L.L().level(p).reduced;
  const int m = r.size();
  auto scaled = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
    int n = ns[k];
    auto chain = gibbs_chain<long double>(L.F, n);
    auto rates = valley_rates(L, p, n, chain);
    long double th = time_scale(L, p, n);
    for (auto& row : rates)
      for (auto& v : row) v *= th;
    return rates;
  });
  std::vector<ConvergenceTable> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      ConvergenceTable t;
      t.claim = "h1_p" + std::to_string(p) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      t.tolerance = tol;
      t.decreasing = true;
      for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], scaled[k][i][j], r.rate(i, j));
      if (t.rows.size() >= 3) extrapolate(t);
      t.evaluate();
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace gladder
