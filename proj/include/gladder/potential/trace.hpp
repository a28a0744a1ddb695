#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gladder/chain/elimination.hpp"
#include "gladder/chain/functionals.hpp"

namespace gladder {

struct Partition {
  std::vector<std::vector<int>> blocks;  // W^(1..m); everything else is the remainder Delta

  // Block index per state, -1 for the remainder. Throws on overlap, empty blocks, bad states.
  std::vector<int> membership(int n) const {
    std::vector<int> of(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw Error(ErrorCode::EmptySubset, "empty partition block");
      for (int x : blocks[b]) {
        if (x < 0 || x >= n) throw Error(ErrorCode::InvalidInput, "block state out of range");
        if (of[x] >= 0) throw Error(ErrorCode::OverlappingSets, "partition blocks overlap");
        of[x] = static_cast<int>(b);
      }
    }
    return of;
  }
  std::vector<int> remainder(int n) const {
    auto of = membership(n);
    std::vector<int> r;
    for (int x = 0; x < n; ++x)
      if (of[x] < 0) r.push_back(x);
    return r;
  }
  std::vector<int> united() const {
    std::vector<int> u;
    for (auto& b : blocks) u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    return u;
  }
};

namespace detail {

template <class Real>
Eliminator<Real> eliminate_outside(const BasicChain<Real>& c, const std::vector<char>& keep) {
  Eliminator<Real> el(c.adjacency());
  el.eliminate(keep);
  return el;
}

}  // namespace detail

// Trace of the chain on W (Schur complement of the generator), states in the order of W.
template <class Real>
BasicChain<Real> trace_chain(const BasicChain<Real>& c, const std::vector<int>& W) {
  if (W.empty()) throw Error(ErrorCode::EmptyTraceSet, "trace on an empty set");
  std::vector<int> local(c.size(), -1);
  for (std::size_t k = 0; k < W.size(); ++k) {
    if (W[k] < 0 || W[k] >= c.size()) throw Error(ErrorCode::InvalidInput, "trace set state out of range");
    if (local[W[k]] >= 0) throw Error(ErrorCode::InvalidInput, "duplicate state in trace set");
    local[W[k]] = static_cast<int>(k);
  }
  std::vector<char> keep(c.size(), 0);
  for (int x : W) keep[x] = 1;
  auto el = detail::eliminate_outside(c, keep);
  Adjacency<Real> out(W.size());
  std::vector<std::string> labels;
  std::vector<Real> w;
  for (std::size_t k = 0; k < W.size(); ++k) {
    labels.push_back(c.label(W[k]));
    w.push_back(c.pi(W[k]));
    for (auto [y, r] : el.out(W[k])) out[k].push_back({local[y], r});
  }
  auto pi = normalized(std::move(w));
  bool rev = c.reversible();
  if (rev) {
    for (std::size_t x = 0; x < W.size() && rev; ++x)
      for (auto [y, r] : out[x]) {
        Real back = detail::lookup(out[y], static_cast<int>(x));
        Real a = pi[x] * r, b = pi[y] * back;
        if (std::abs(a - b) > static_cast<Real>(1e-9) * std::max(a, b)) {
          warn("trace chain failed the detailed-balance certificate");
          rev = false;
          break;
        }
      }
  }
  return BasicChain<Real>::assemble(std::move(labels), std::move(out), std::move(pi), rev);
}

// Flux matrix F(i,j) = sum_{x in W_i} pi(x) R^W(x, W_j) of the trace on the union of blocks,
// together with block masses. mean rate r(i,j) = F(i,j)/pi(W_i).
template <class Real>
struct BlockFlux {
  std::vector<std::vector<Real>> flux;
  std::vector<Real> mass;
  Real rate(int i, int j) const { return flux[i][j] / mass[i]; }
};

template <class Real>
BlockFlux<Real> block_flux(const BasicChain<Real>& c, const Partition& P) {
  auto of = P.membership(c.size());
  const int m = static_cast<int>(P.blocks.size());
  std::vector<char> keep(c.size(), 0);
  for (int x = 0; x < c.size(); ++x) keep[x] = of[x] >= 0;
  auto el = detail::eliminate_outside(c, keep);
  std::vector<std::vector<Accumulator<Real>>> acc(m, std::vector<Accumulator<Real>>(m));
  BlockFlux<Real> f;
  f.mass.assign(m, 0);
  for (int i = 0; i < m; ++i) f.mass[i] = subset_mass(c, P.blocks[i]);
  for (int x = 0; x < c.size(); ++x) {
    if (of[x] < 0) continue;
    for (auto [y, r] : el.out(x))
      if (of[y] != of[x]) acc[of[x]][of[y]].add(c.pi(x) * r);
  }
  f.flux.assign(m, std::vector<Real>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f.flux[i][j] = acc[i][j].value();
  return f;
}

template <class Real>
Real mean_jump_rate(const BasicChain<Real>& c, const Partition& P, int i, int j) {
  const int m = static_cast<int>(P.blocks.size());
  if (i < 0 || j < 0 || i >= m || j >= m || i == j)
    throw Error(ErrorCode::InvalidInput, "mean_jump_rate needs distinct valid block indices");
  return block_flux(c, P).rate(i, j);
}

template <class Real>
struct HarmonicSolution {
  std::vector<Real> values;
  std::vector<int> boundary;
  Real residual = 0;  // max interior |Lu| relative to the local rate scale
};

template <class Real>
Real harmonic_residual(const BasicChain<Real>& c, const std::vector<char>& on_boundary,
                       const std::vector<Real>& u) {
  Real worst = 0;
  for (int x = 0; x < c.size(); ++x) {
    if (on_boundary[x]) continue;
    Accumulator<Real> acc;
    Real scale = c.holding(x) * std::abs(u[x]);
    for (auto [y, r] : c.out(x)) {
      acc.add(r * (u[y] - u[x]));
      scale = std::max(scale, r * std::abs(u[y]));
    }
    if (scale > 0) worst = std::max(worst, std::abs(acc.value()) / scale);
  }
  return worst;
}

// u = h on W, Lu = 0 off W. h is indexed by state; only its values on W are read.
template <class Real>
HarmonicSolution<Real> harmonic_extension(const BasicChain<Real>& c, const std::vector<int>& W,
                                          const std::vector<Real>& h) {
  if (W.empty()) throw Error(ErrorCode::SingularSystem, "harmonic extension needs a nonempty boundary");
  if (static_cast<int>(h.size()) != c.size()) throw Error(ErrorCode::InvalidInput, "h must be indexed by state");
  std::vector<char> keep(c.size(), 0);
  for (int x : W) keep[x] = 1;
  Eliminator<Real> el(c.adjacency());
  try {
    el.eliminate(keep);
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularSystem, e.what());
  }
  // Split into positive and negative parts so each back substitution is subtraction-free.
  std::vector<Real> pos(c.size(), 0), neg(c.size(), 0);
  for (int x : W) (h[x] >= 0 ? pos[x] : neg[x]) = std::abs(h[x]);
  el.back_substitute(pos);
  el.back_substitute(neg);
  HarmonicSolution<Real> s;
  s.values.resize(c.size());
  for (int x = 0; x < c.size(); ++x) s.values[x] = pos[x] - neg[x];
  for (int x : W) s.values[x] = h[x];
  s.boundary = W;
  std::sort(s.boundary.begin(), s.boundary.end());
  s.residual = harmonic_residual(c, keep, s.values);
  return s;
}

namespace detail {
inline void check_disjoint(int n, const std::vector<int>& A, const std::vector<int>& B) {
  if (A.empty() || B.empty()) throw Error(ErrorCode::EmptySubset, "sets must be nonempty");
  std::vector<char> in(n, 0);
  for (int x : A) {
    if (x < 0 || x >= n) throw Error(ErrorCode::InvalidInput, "state out of range");
    in[x] = 1;
  }
  for (int x : B) {
    if (x < 0 || x >= n) throw Error(ErrorCode::InvalidInput, "state out of range");
    if (in[x]) throw Error(ErrorCode::OverlappingSets, "A and B intersect");
  }
}
}  // namespace detail

// h_{A,B}: 1 on A, 0 on B, harmonic elsewhere.
template <class Real>
HarmonicSolution<Real> equilibrium_potential(const BasicChain<Real>& c, const std::vector<int>& A,
                                             const std::vector<int>& B) {
  detail::check_disjoint(c.size(), A, B);
  std::vector<int> W(A);
  W.insert(W.end(), B.begin(), B.end());
  std::vector<Real> h(c.size(), 0);
  for (int x : A) h[x] = 1;
  return harmonic_extension(c, W, h);
}

// Hitting functions h_j(x) = P_x[first visit to the union of blocks is in block j], one per
// block, from a single elimination.
template <class Real>
std::vector<std::vector<Real>> hitting_functions(const BasicChain<Real>& c, const Partition& P) {
  auto of = P.membership(c.size());
  std::vector<char> keep(c.size(), 0);
  for (int x = 0; x < c.size(); ++x) keep[x] = of[x] >= 0;
  auto el = detail::eliminate_outside(c, keep);
  std::vector<std::vector<Real>> hs(P.blocks.size(), std::vector<Real>(c.size(), 0));
  for (std::size_t j = 0; j < P.blocks.size(); ++j) {
    for (int x : P.blocks[j]) hs[j][x] = 1;
    el.back_substitute(hs[j]);
  }
  return hs;
}

}  // namespace gladder
