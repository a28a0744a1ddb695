#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gladder/hierarchy/ladder.hpp"
#include "gladder/landscape/wells.hpp"
#include "gladder/potential/capacity.hpp"

namespace gladder {

struct SaddleEdge {
  int i = 0, j = 0;  // S_1 indices, i < j
  int saddle = 0;    // index into the critical point list
  double weight = 0; // gamma(z) / (2 pi sqrt(-det Hess F(z)))
};

struct SaddleGraph {
  int n = 0;
  std::vector<std::vector<double>> c;  // symmetric conductances
  std::vector<SaddleEdge> contributions;

  WeightedGraph weighted() const {
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (c[i][j] > 0) g.edges.emplace_back(i, j, c[i][j]);
    return g;
  }
  bool connected() const {
    Digraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && c[i][j] > 0) g[i].push_back(j);
    return strongly_connected(g);
  }
};

namespace detail {

// Gradient descent with Armijo backtracking; the step length is capped by the distance
// already travelled from the start so the path cannot hop over the neck it started in.
inline std::vector<double> descend(const Potential& F, std::vector<double> x, const std::vector<double>& origin) {
  const int d = F.dim();
  double t_prev = 1e-3;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd g = F.gradient(x);
    double gn = g.norm();
    if (gn < 1e-9) break;
    double cap = std::min(0.02, std::max(1e-6, torus_distance(x, origin)));
    double t = std::min(cap / gn, 4 * t_prev);
    double f = F(x);
    std::vector<double> y(d);
    for (;;) {
      for (int i = 0; i < d; ++i) y[i] = x[i] - t * g(i);
      if (F(y) <= f - 1e-4 * t * gn * gn || t < 1e-16) break;
      t *= 0.5;
    }
    if (t < 1e-16) break;
    t_prev = t;
    x = y;
  }
  return x;
}

}  // namespace detail

inline SaddleGraph saddle_graph(const Potential& F, const std::vector<CriticalPoint>& cps, const WellStructure& W,
                                double displacement = 1e-4) {
  SaddleGraph G;
  G.n = W.size();
  G.c.assign(G.n, std::vector<double>(G.n, 0.0));
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::size_t s = 0; s < cps.size(); ++s) {
    const auto& z = cps[s];
    if (z.kind != CriticalKind::Saddle) continue;
    int land[2];
    for (int side = 0; side < 2; ++side) {
      std::vector<double> x(z.location);
      double sign = side == 0 ? 1 : -1;
      for (int i = 0; i < F.dim(); ++i) x[i] += sign * displacement * z.eigenvectors(i, 0);
      auto end = detail::descend(F, x, z.location);
      land[side] = -1;
      for (int k = 0; k < W.size(); ++k)
        if (torus_distance(end, W.location[k]) < 1e-4) land[side] = k;
      if (land[side] < 0)
        throw Error(ErrorCode::DescentAmbiguous, "descent from the saddle at " + detail::where(z) +
                                                     " does not reach a local minimum");
    }
    if (land[0] == land[1]) continue;  // the saddle bounds a single component on both sides
    int i = std::min(land[0], land[1]), j = std::max(land[0], land[1]);
    double w = z.gamma / (two_pi * std::sqrt(-z.det()));
    G.c[i][j] += w;
    G.c[j][i] += w;
    G.contributions.push_back({i, j, static_cast<int>(s), w});
  }
  if (G.n > 1 && !G.connected())
    throw Error(ErrorCode::ValidationFailed, "saddle graph is not connected");
  return G;
}

// Conductances c_p on S_p from graph capacities (polarisation of Cap_G over J_p), and the
// level-p rates c_p(i,j)/gamma(m_{p,i}) from wells at depth exactly d_p, zero rows otherwise.
inline std::vector<std::vector<double>> level_conductances(const SaddleGraph& G, const WellStructure& W, int p) {
  const auto& J = W.valley_indices(p);
  const int m = static_cast<int>(J.size());
  auto wg = G.weighted();
  auto cap = [&](std::vector<int> set) {
    std::vector<int> rest;
    for (int k : J)
      if (std::find(set.begin(), set.end(), k) == set.end()) rest.push_back(k);
    if (rest.empty()) return 0.0;
    return capacity(wg, set, rest);
  };
  std::vector<double> single(m);
  for (int i = 0; i < m; ++i) single[i] = cap({J[i]});
  std::vector<std::vector<double>> c(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double v = 0.5 * (single[i] + single[j] - cap({J[i], J[j]}));
      // cancellation residue is not a conductance
      if (std::abs(v) <= 1e-12 * (single[i] + single[j])) v = 0;
      c[i][j] = c[j][i] = v;
    }
  return c;
}

inline ReducedChain reduced_rates(const SaddleGraph& G, const WellStructure& W, int p) {
  if (p < 1 || p > W.q()) throw Error(ErrorCode::InvalidInput, "level out of range");
  auto c = level_conductances(G, W, p);
  const auto& J = W.valley_indices(p);
  const int m = static_cast<int>(J.size());
  std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    if (W.level[J[i]] != p) continue;  // m_{p,i} in M_{p+1}: absorbing
    for (int j = 0; j < m; ++j)
      if (j != i) r[i][j] = std::max(0.0, c[i][j]) / W.gamma[J[i]];
  }
  return ReducedChain(std::move(r));
}

// The ladder of reduced chains r_1..r_q with depths d_1..d_q.
inline Ladder landscape_ladder(const SaddleGraph& G, const WellStructure& W) {
  std::vector<ReducedChain> chains;
  for (int p = 1; p <= W.q(); ++p) chains.push_back(reduced_rates(G, W, p));
  return build_ladder(W.size(), chains, W.depths);
}

}  // namespace gladder
