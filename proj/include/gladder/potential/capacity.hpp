#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "gladder/potential/trace.hpp"

namespace gladder {

// Symmetric conductance network.
struct WeightedGraph {
  int n = 0;
  std::vector<std::tuple<int, int, double>> edges;  // unordered, c > 0

  Adjacency<double> adjacency() const {
    Adjacency<double> a(n);
    for (auto [x, y, c] : edges) {
      if (x == y || c <= 0) continue;
      a[x].push_back({y, c});
      a[y].push_back({x, c});
    }
    // merge parallel edges
    for (auto& row : a) {
      std::sort(row.begin(), row.end());
      std::vector<std::pair<int, double>> merged;
      for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
        else merged.push_back(e);
      }
      row = std::move(merged);
    }
    return a;
  }
};

namespace detail {

// sum_{x in A} w(x) sum_{y in B} R^{A u B}(x,y): the capacity written through the trace on
// A u B, which needs no differences of potentials. (A,B) is put in a canonical order first
// so the result is symmetric bit for bit.
template <class Real>
Real capacity_by_elimination(const Adjacency<Real>& rates, const std::vector<Real>& weight,
                             std::vector<int> A, std::vector<int> B) {
  const int n = static_cast<int>(rates.size());
  detail::check_disjoint(n, A, B);
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  if (B < A) std::swap(A, B);
  std::vector<char> keep(n, 0), inB(n, 0);
  for (int x : A) keep[x] = 1;
  for (int x : B) keep[x] = inB[x] = 1;
  Eliminator<Real> el(rates);
  el.eliminate(keep);
  Accumulator<Real> acc;
  for (int x : A)
    for (auto [y, r] : el.out(x))
      if (inB[y]) acc.add(weight[x] * r);
  return acc.value();
}

}  // namespace detail

template <class Real>
Real capacity(const BasicChain<Real>& c, const std::vector<int>& A, const std::vector<int>& B) {
  return detail::capacity_by_elimination(c.adjacency(), c.stationary().weights, A, B);
}

inline double capacity(const WeightedGraph& g, const std::vector<int>& A, const std::vector<int>& B) {
  return detail::capacity_by_elimination(g.adjacency(), std::vector<double>(g.n, 1.0), A, B);
}

// (1/2) sum c(x,y)(g(y)-g(x))^2 with c = pi R: the Dirichlet energy of an arbitrary function.
template <class Real>
Real dirichlet_energy(const BasicChain<Real>& c, const std::vector<Real>& g) {
  Accumulator<Real> acc;
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) {
      Real d = g[y] - g[x];
      acc.add(c.pi(x) * r * d * d);
    }
  return acc.value() / 2;
}

template <class Real>
struct BridgeResult {
  std::vector<std::vector<Real>> direct;  // mean_jump_rate(i,j)
  std::vector<std::vector<Real>> bridge;  // from capacities
  Real max_rel_dev = 0;
  bool agree = true;
};

// pi(W_i) r(i,j) = (cap(W_i, rest_i) + cap(W_j, rest_j) - cap(W_i u W_j, rest_ij)) / 2,
// rest_* the other blocks (cap against an empty set is 0).
template <class Real>
BridgeResult<Real> capacity_rate_bridge(const BasicChain<Real>& c, const Partition& P,
                                        Real tol = static_cast<Real>(1e-8)) {
  if (!c.reversible()) throw Error(ErrorCode::NotReversible, "capacity bridge needs a reversible chain");
  const int m = static_cast<int>(P.blocks.size());
  P.membership(c.size());
  auto flux = block_flux(c, P);
  auto others = [&](std::vector<int> skip) {
    std::vector<int> u;
    for (int k = 0; k < m; ++k)
      if (std::find(skip.begin(), skip.end(), k) == skip.end())
        u.insert(u.end(), P.blocks[k].begin(), P.blocks[k].end());
    return u;
  };
  auto cap = [&](std::vector<int> set, const std::vector<int>& skip) -> Real {
    auto rest = others(skip);
    if (rest.empty()) return 0;
    return capacity(c, set, rest);
  };
  std::vector<Real> single(m);
  for (int i = 0; i < m; ++i) single[i] = cap(P.blocks[i], {i});
  BridgeResult<Real> res;
  res.direct.assign(m, std::vector<Real>(m, 0));
  res.bridge.assign(m, std::vector<Real>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      std::vector<int> both(P.blocks[i]);
      both.insert(both.end(), P.blocks[j].begin(), P.blocks[j].end());
      Real pair = cap(both, {i, j});
      Real b = (single[i] + single[j] - pair) / 2 / flux.mass[i];
      Real d = flux.rate(i, j);
      res.direct[i][j] = d;
      res.bridge[i][j] = b;
      // a vanishing direct rate is compared against the size of the capacity terms
      Real scale = d > 0 ? std::max(d, std::abs(b)) : (single[i] + single[j]) / flux.mass[i];
      if (scale > 0) res.max_rel_dev = std::max(res.max_rel_dev, std::abs(d - b) / scale);
    }
  res.agree = res.max_rel_dev <= tol;
  return res;
}

}  // namespace gladder
