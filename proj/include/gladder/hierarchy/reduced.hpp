#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gladder/chain/chain.hpp"
#include "gladder/chain/graph.hpp"

namespace gladder {

// Limit dynamics among wells: a small dense rate matrix, zero rows allowed.
struct ReducedChain {
  std::vector<std::vector<double>> rates;

  ReducedChain() = default;
  explicit ReducedChain(std::vector<std::vector<double>> r) : rates(std::move(r)) { validate(); }

  int size() const { return static_cast<int>(rates.size()); }
  double rate(int i, int j) const { return rates[i][j]; }
  double out_rate(int i) const {
    double s = 0;
    for (int j = 0; j < size(); ++j)
      if (j != i) s += rates[i][j];
    return s;
  }

  void validate() const {
    const int n = size();
    if (n == 0) throw Error(ErrorCode::InvalidInput, "reduced chain has no states");
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rates[i].size()) != n) throw Error(ErrorCode::InvalidInput, "rate matrix is not square");
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!(rates[i][j] >= 0)) throw Error(ErrorCode::NegativeRate, "reduced rate is negative or NaN");
        any = any || rates[i][j] > 0;
      }
    }
    // A single state has nothing to jump to; otherwise some rate must be positive.
    if (n >= 2 && !any) throw Error(ErrorCode::InvalidInput, "reduced chain has no positive rate");
  }

  Digraph digraph() const {
    Digraph g(size());
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (i != j && rates[i][j] > 0) g[i].push_back(j);
    return g;
  }
};

struct ClassDecomposition {
  std::vector<std::vector<int>> closed;       // closed irreducible classes, ordered by least element
  std::vector<int> transient;                 // S minus the closed classes
  std::vector<std::vector<int>> equivalence;  // all communication classes
  std::vector<std::vector<int>> non_singleton;
  std::vector<int> singletons;
  std::vector<int> class_of;  // state -> index into equivalence

  // The partition identities: S = union of classes = singletons u non-singletons, every closed
  // class is a communication class, transient = S minus closed.
  bool consistent(int n) const {
    std::vector<int> seen(n, 0);
    for (auto& q : equivalence)
      for (int x : q) ++seen[x];
    for (int v : seen)
      if (v != 1) return false;
    std::vector<int> again(n, 0);
    for (int x : singletons) ++again[x];
    for (auto& q : non_singleton)
      for (int x : q) ++again[x];
    if (again != seen) return false;
    std::vector<int> closed_or_transient(n, 0);
    for (auto& r : closed) {
      if (std::find(equivalence.begin(), equivalence.end(), r) == equivalence.end()) return false;
      for (int x : r) ++closed_or_transient[x];
    }
    for (int x : transient) ++closed_or_transient[x];
    return closed_or_transient == seen;
  }
};

inline ClassDecomposition decompose_classes(const ReducedChain& r) {
  const int n = r.size();
  Digraph g = r.digraph();
  std::vector<int> comp;
  int k = strongly_connected_components(g, comp);
  std::vector<std::vector<int>> members(k);
  for (int x = 0; x < n; ++x) members[comp[x]].push_back(x);
  std::vector<char> leaks(k, 0);
  for (int x = 0; x < n; ++x)
    for (int y : g[x])
      if (comp[y] != comp[x]) leaks[comp[x]] = 1;
  ClassDecomposition d;
  std::vector<int> order(k);
  for (int c = 0; c < k; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return members[a][0] < members[b][0]; });
  std::vector<int> rank(k);
  for (int i = 0; i < k; ++i) rank[order[i]] = i;
  d.class_of.resize(n);
  for (int c : order) {
    auto& m = members[c];
    d.equivalence.push_back(m);
    if (m.size() == 1) d.singletons.push_back(m[0]);
    else d.non_singleton.push_back(m);
    if (!leaks[c]) d.closed.push_back(m);
    else d.transient.insert(d.transient.end(), m.begin(), m.end());
  }
  for (int x = 0; x < n; ++x) d.class_of[x] = rank[comp[x]];
  std::sort(d.transient.begin(), d.transient.end());
  std::sort(d.singletons.begin(), d.singletons.end());
  return d;
}

namespace detail {
inline Chain restricted_chain(const ReducedChain& r, const std::vector<int>& cls) {
  std::vector<RateEntry<double>> e;
  for (std::size_t a = 0; a < cls.size(); ++a)
    for (std::size_t b = 0; b < cls.size(); ++b)
      if (a != b && r.rates[cls[a]][cls[b]] > 0)
        e.push_back({static_cast<int>(a), static_cast<int>(b), r.rates[cls[a]][cls[b]]});
  return build_chain<double>(static_cast<int>(cls.size()), e);
}
}  // namespace detail

// Stationary measure of the chain restricted to a closed class, as weights over all of S.
inline Measure restricted_stationary(const ReducedChain& r, const std::vector<int>& cls) {
  if (cls.empty()) throw Error(ErrorCode::NotClosedClass, "empty class");
  std::vector<char> in(r.size(), 0);
  for (int x : cls) {
    if (x < 0 || x >= r.size()) throw Error(ErrorCode::InvalidInput, "class element out of range");
    in[x] = 1;
  }
  for (int x : cls)
    for (int y = 0; y < r.size(); ++y)
      if (y != x && !in[y] && r.rates[x][y] > 0)
        throw Error(ErrorCode::NotClosedClass, "class has an outgoing rate");
  std::vector<double> w(r.size(), 0.0);
  if (cls.size() == 1) {
    w[cls[0]] = 1;
    return Measure(std::move(w));
  }
  Chain c;
  try {
    c = detail::restricted_chain(r, cls);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotClosedClass, std::string("class is not irreducible: ") + e.what());
  }
  for (std::size_t a = 0; a < cls.size(); ++a) w[cls[a]] = c.pi(static_cast<int>(a));
  return Measure(std::move(w));
}

}  // namespace gladder
