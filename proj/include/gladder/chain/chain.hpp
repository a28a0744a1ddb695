#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "gladder/chain/elimination.hpp"
#include "gladder/chain/graph.hpp"
#include "gladder/chain/measure.hpp"
#include "gladder/common.hpp"

namespace gladder {

template <class Real>
struct RateEntry {
  int from, to;
  Real rate;
};

template <class Real>
class BasicChain {
 public:
  using real_type = Real;

  int size() const { return static_cast<int>(out_.size()); }
  const std::vector<std::string>& states() const { return labels_; }
  const std::string& label(int x) const { return labels_[x]; }

  // Positive rates out of x, sorted by target.
  const std::vector<std::pair<int, Real>>& out(int x) const { return out_[x]; }
  const Adjacency<Real>& adjacency() const { return out_; }
  Real rate(int x, int y) const {
    auto& row = out_[x];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(y, Real(0)),
                               [](auto& a, auto& b) { return a.first < b.first; });
    return (it != row.end() && it->first == y) ? it->second : Real(0);
  }
  Real holding(int x) const { return holding_[x]; }
  Real jump_prob(int x, int y) const { return holding_[x] > 0 ? rate(x, y) / holding_[x] : Real(0); }
  const BasicMeasure<Real>& stationary() const { return pi_; }
  Real pi(int x) const { return pi_.weights[x]; }
  bool reversible() const { return reversible_; }

  Digraph digraph() const {
    Digraph g(out_.size());
    for (int x = 0; x < size(); ++x)
      for (auto [y, r] : out_[x]) g[x].push_back(y);
    return g;
  }

  // Assemble without validation; used by constructors below that already certified their input.
  static BasicChain assemble(std::vector<std::string> labels, Adjacency<Real> out,
                             BasicMeasure<Real> pi, bool reversible) {
    BasicChain c;
    c.labels_ = std::move(labels);
    c.out_ = std::move(out);
    for (auto& row : c.out_) std::sort(row.begin(), row.end());
    c.holding_.resize(c.out_.size());
    for (std::size_t x = 0; x < c.out_.size(); ++x) {
      Accumulator<Real> acc;
      for (auto [y, r] : c.out_[x]) acc.add(r);
      c.holding_[x] = acc.value();
    }
    c.pi_ = std::move(pi);
    c.reversible_ = reversible;
    return c;
  }

 private:
  std::vector<std::string> labels_;
  Adjacency<Real> out_;
  std::vector<Real> holding_;
  BasicMeasure<Real> pi_;
  bool reversible_ = false;
};

using Chain = BasicChain<double>;

namespace detail {

template <class Real>
Adjacency<Real> collect_rates(int n, const std::vector<RateEntry<Real>>& rates) {
  Adjacency<Real> out(n);
  for (auto& e : rates) {
    if (e.from < 0 || e.to < 0 || e.from >= n || e.to >= n)
      throw Error(ErrorCode::InvalidInput, "rate refers to an unknown state");
    if (std::isnan(static_cast<double>(e.rate)) || std::isinf(static_cast<double>(e.rate)))
      throw Error(ErrorCode::InvalidInput, "non-finite rate");
    if (e.rate < 0)
      throw Error(ErrorCode::NegativeRate,
                  "rate(" + std::to_string(e.from) + "," + std::to_string(e.to) + ") < 0");
    if (e.from == e.to) throw Error(ErrorCode::InvalidInput, "self-loop rate");
    if (e.rate > 0) out[e.from].push_back({e.to, e.rate});
  }
  for (auto& row : out) {
    std::sort(row.begin(), row.end());
    for (std::size_t k = 1; k < row.size(); ++k)
      if (row[k].first == row[k - 1].first)
        throw Error(ErrorCode::InvalidInput, "duplicate rate entry");
  }
  return out;
}

template <class Real>
Real lookup(const std::vector<std::pair<int, Real>>& row, int y) {
  for (auto& e : row)
    if (e.first == y) return e.second;
  return Real(0);
}

// Detailed-balance log-weights along a BFS tree of the two-way positive graph; false if some
// edge lacks its reverse or the tree does not span.
template <class Real>
bool detailed_balance_logpi(const Adjacency<Real>& out, std::vector<Real>& logpi) {
  const int n = static_cast<int>(out.size());
  logpi.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (auto [y, r] : out[x]) {
      Real back = lookup(out[y], x);
      if (!(back > 0)) return false;
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        logpi[y] = logpi[x] + std::log(r) - std::log(back);
        q.push(y);
      }
    }
  }
  return count == n;
}

template <class Real>
bool certify_detailed_balance(const Adjacency<Real>& out, const std::vector<Real>& logpi,
                              Real tol = static_cast<Real>(1e-10)) {
  for (std::size_t x = 0; x < out.size(); ++x)
    for (auto [y, r] : out[x]) {
      Real back = lookup(out[y], static_cast<int>(x));
      if (!(back > 0)) return false;
      Real d = (logpi[x] + std::log(r)) - (logpi[y] + std::log(back));
      if (std::abs(d) > tol) return false;
    }
  return true;
}

template <class Real>
BasicMeasure<Real> gth_stationary(const Adjacency<Real>& out) {
  const int n = static_cast<int>(out.size());
  Eliminator<Real> el(out);
  std::vector<char> keep(n, 0);
  keep[n - 1] = 1;
  el.eliminate(keep);
  std::vector<Real> w(n, 0);
  w[n - 1] = 1;
  el.back_substitute_stationary(w);
  return normalized(std::move(w));
}

}  // namespace detail

template <class Real>
BasicChain<Real> build_chain(std::vector<std::string> states,
                             const std::vector<RateEntry<Real>>& rates) {
  const int n = static_cast<int>(states.size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty state set");
  Adjacency<Real> out = detail::collect_rates(n, rates);
  Digraph g(n);
  for (int x = 0; x < n; ++x)
    for (auto [y, r] : out[x]) g[x].push_back(y);
  if (!strongly_connected(g))
    throw Error(ErrorCode::NotIrreducible, "positive-rate digraph is not strongly connected");
  std::vector<Real> logpi;
  bool rev = n == 1 ||
             (detail::detailed_balance_logpi(out, logpi) && detail::certify_detailed_balance(out, logpi));
  BasicMeasure<Real> pi;
  if (n == 1) pi = BasicMeasure<Real>(std::vector<Real>{1});
  else if (rev) pi = from_log_weights(logpi);
  else pi = detail::gth_stationary(out);
  return BasicChain<Real>::assemble(std::move(states), std::move(out), std::move(pi), rev);
}

// States labelled "0".."n-1".
template <class Real>
BasicChain<Real> build_chain(int n, const std::vector<RateEntry<Real>>& rates) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return build_chain<Real>(std::move(labels), rates);
}

// A chain known to be reversible with the given unnormalised log stationary weights. The
// detailed-balance relation is still certified.
template <class Real>
BasicChain<Real> build_reversible_chain(std::vector<std::string> states, Adjacency<Real> out,
                                        const std::vector<Real>& logpi) {
  for (auto& row : out) std::sort(row.begin(), row.end());
  if (!detail::certify_detailed_balance(out, logpi))
    throw Error(ErrorCode::NotReversible, "detailed balance fails for the supplied weights");
  Digraph g(out.size());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (auto [y, r] : out[x]) g[x].push_back(y);
  if (!strongly_connected(g))
    throw Error(ErrorCode::NotIrreducible, "positive-rate digraph is not strongly connected");
  auto pi = from_log_weights(logpi);
  return BasicChain<Real>::assemble(std::move(states), std::move(out), std::move(pi), true);
}

// max_y |sum_x pi(x) R(x,y) - pi(y) lambda(y)| / max(pi(y) lambda(y)).
template <class Real>
Real stationarity_residual(const BasicChain<Real>& c) {
  std::vector<Accumulator<Real>> in(c.size());
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) in[y].add(c.pi(x) * r);
  Real worst = 0;
  for (int y = 0; y < c.size(); ++y) {
    Real flow = c.pi(y) * c.holding(y);
    Real s = std::max(flow, in[y].value());
    if (s > 0) worst = std::max(worst, std::abs(in[y].value() - flow) / s);
  }
  return worst;
}

template <class Real>
BasicMeasure<Real> conditioned(const BasicMeasure<Real>& m, const std::vector<int>& subset) {
  std::vector<Real> w(m.size(), 0);
  for (int x : subset) w[x] = m[x];
  return normalized(std::move(w));
}

}  // namespace gladder
