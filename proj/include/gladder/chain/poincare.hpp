#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gladder/chain/elimination.hpp"
#include "gladder/chain/functionals.hpp"

namespace gladder {

namespace detail {

// Positive-rate graph induced on A, in local indices.
template <class Real>
Digraph induced_graph(const BasicChain<Real>& c, const std::vector<int>& A, std::vector<int>& local) {
  local.assign(c.size(), -1);
  for (std::size_t k = 0; k < A.size(); ++k) local[A[k]] = static_cast<int>(k);
  Digraph g(A.size());
  for (std::size_t k = 0; k < A.size(); ++k)
    for (auto [y, r] : c.out(A[k]))
      if (local[y] >= 0) g[k].push_back(local[y]);
  return g;
}

}  // namespace detail

// Path bound 2 diam(A) max_{edges} 1/c(x,y), c = pi_A(x) R(x,y).
template <class Real>
Real poincare_path_bound(const BasicChain<Real>& c, const std::vector<int>& A) {
  if (A.empty()) throw Error(ErrorCode::EmptySubset, "poincare_path_bound on an empty subset");
  std::vector<int> local;
  Digraph g = detail::induced_graph(c, A, local);
  std::vector<char> mask(A.size(), 1);
  int diam = 0;
  for (std::size_t s = 0; s < A.size(); ++s) {
    auto dist = bfs_distances(g, static_cast<int>(s), mask);
    for (int d : dist) {
      if (d < 0) throw Error(ErrorCode::DisconnectedSubset, "subset is not connected");
      diam = std::max(diam, d);
    }
  }
  Real mass = subset_mass(c, A);
  Real worst = 0;
  for (int x : A)
    for (auto [y, r] : c.out(x))
      if (local[y] >= 0) worst = std::max(worst, mass / (c.pi(x) * r));
  return 2 * static_cast<Real>(diam) * worst;
}

template <class Real>
struct H5Constant {
  Real full = 0;        // max over all x in A
  Real restricted = 0;  // max over x in A with a positive rate leaving A
  int argmax = -1;
};

// Smallest beta with max_x sum_y pi_A(y)(h(y)-h(x))^2 <= beta D(A,h): for each x the top
// eigenvalue of K_x^{-1} Pi_A, K_x the Laplacian with weights pi_A R grounded at x. Power
// iteration on the (entrywise positive) Green operator, solves by state elimination.
template <class Real>
H5Constant<Real> exact_h5_constant(const BasicChain<Real>& c, const std::vector<int>& A,
                                   int max_states = 2000) {
  if (A.empty()) throw Error(ErrorCode::EmptySubset, "exact_h5_constant on an empty subset");
  if (static_cast<int>(A.size()) > max_states)
    throw Error(ErrorCode::TooLarge, std::to_string(A.size()) + " states exceed the cap");
  const int m = static_cast<int>(A.size());
  H5Constant<Real> res;
  if (m == 1) return res;
  std::vector<int> local;
  detail::induced_graph(c, A, local);
  Real mass = subset_mass(c, A);
  std::vector<Real> piA(m);
  for (int k = 0; k < m; ++k) piA[k] = c.pi(A[k]) / mass;
  Adjacency<Real> cond(m);
  for (int k = 0; k < m; ++k)
    for (auto [y, r] : c.out(A[k]))
      if (local[y] >= 0) cond[k].push_back({local[y], piA[k] * r});

  for (int x = 0; x < m; ++x) {
    Eliminator<Real> el(cond);
    std::vector<char> keep(m, 0);
    keep[x] = 1;
    el.eliminate(keep);
    std::vector<Real> v(m, 1), w(m), s(m);
    v[x] = 0;
    Real lambda = 0;
    for (int it = 0; it < 2000; ++it) {
      for (int k = 0; k < m; ++k) s[k] = piA[k] * v[k];
      s[x] = 0;
      el.forward_source(s);
      std::fill(w.begin(), w.end(), Real(0));
      el.back_substitute(w, s);
      Accumulator<Real> num, den;
      for (int k = 0; k < m; ++k) {
        num.add(piA[k] * v[k] * w[k]);
        den.add(piA[k] * v[k] * v[k]);
      }
      Real next = num.value() / den.value();
      Real top = *std::max_element(w.begin(), w.end());
      for (int k = 0; k < m; ++k) v[k] = w[k] / top;
      bool done = it > 2 && std::abs(next - lambda) <= static_cast<Real>(1e-13) * next;
      lambda = next;
      if (done) break;
    }
    bool boundary = false;
    for (auto [y, r] : c.out(A[x]))
      if (local[y] < 0) boundary = true;
    if (lambda > res.full) {
      res.full = lambda;
      res.argmax = A[x];
    }
    if (boundary) res.restricted = std::max(res.restricted, lambda);
  }
  return res;
}

}  // namespace gladder
