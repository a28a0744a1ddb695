#pragma once

// Subtraction-free state elimination (Grassmann-Taksar-Heyman style) on a rate graph.
// Eliminating z folds every two-step path x -> z -> y into a direct rate a*b/p where p is
// the total current out-rate of z; self-loops are discarded, which leaves the trace process
// unchanged. All arithmetic is on nonnegative numbers, so results keep relative accuracy
// across the huge dynamic ranges of low-temperature Gibbs chains.

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "gladder/common.hpp"

namespace gladder {

template <class Real>
using Adjacency = std::vector<std::vector<std::pair<int, Real>>>;

template <class Real>
class Eliminator {
 public:
  struct Record {
    int node;
    Real pivot;
    std::vector<std::pair<int, Real>> out;  // targets still present when eliminated
    std::vector<std::pair<int, Real>> in;
  };

  explicit Eliminator(const Adjacency<Real>& rates) : out_(rates), in_(rates.size()) {
    for (int x = 0; x < static_cast<int>(rates.size()); ++x)
      for (auto [y, r] : rates[x])
        if (r > 0 && y != x) in_[y].push_back({x, r});
    for (auto& row : out_)
      row.erase(std::remove_if(row.begin(), row.end(), [](auto& e) { return !(e.second > 0); }),
                row.end());
  }

  int size() const { return static_cast<int>(out_.size()); }

  // Eliminate every state with keep[x] == 0, minimum-Markowitz-degree order, ties by index.
  void eliminate(const std::vector<char>& keep) {
    const int n = size();
    alive_.assign(n, 1);
    using Item = std::pair<std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int z = 0; z < n; ++z)
      if (!keep[z]) pq.push({degree(z), z});
    while (!pq.empty()) {
      auto [d, z] = pq.top();
      pq.pop();
      if (!alive_[z]) continue;
      std::size_t now = degree(z);
      if (now != d) {
        pq.push({now, z});
        continue;
      }
      std::vector<int> touched = eliminate_one(z);
      for (int t : touched)
        if (alive_[t] && !keep[t]) pq.push({degree(t), t});
    }
  }

  const std::vector<Record>& records() const { return records_; }
  // Current rates out of a surviving state.
  const std::vector<std::pair<int, Real>>& out(int x) const { return out_[x]; }
  bool alive(int x) const { return alive_.empty() || alive_[x]; }

  // Extend values given on surviving states to eliminated ones by u(z) = sum b u(y) / p.
  // Values must be nonnegative for the subtraction-free guarantee.
  void back_substitute(std::vector<Real>& u) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
      Accumulator<Real> acc;
      for (auto [y, b] : it->out) acc.add(b * u[y]);
      u[it->node] = acc.value() / it->pivot;
    }
  }

  // Poisson data: the equation at z is p u(z) - sum_y R(z,y) u(y) = s(z). The forward sweep
  // folds the source of each eliminated state into its predecessors, in elimination order.
  void forward_source(std::vector<Real>& s) const {
    for (auto& rec : records_)
      for (auto [x, a] : rec.in) s[x] += a * s[rec.node] / rec.pivot;
  }

  // Back substitution for the Poisson problem after forward_source.
  void back_substitute(std::vector<Real>& u, const std::vector<Real>& s) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
      Accumulator<Real> acc;
      acc.add(s[it->node]);
      for (auto [y, b] : it->out) acc.add(b * u[y]);
      u[it->node] = acc.value() / it->pivot;
    }
  }

  // Stationary weights: given weights on survivors, pi(z) = sum pi(x) a / p over in-edges.
  void back_substitute_stationary(std::vector<Real>& w) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
      Accumulator<Real> acc;
      for (auto [x, a] : it->in) acc.add(w[x] * a);
      w[it->node] = acc.value() / it->pivot;
    }
  }

 private:
  std::size_t degree(int z) const { return out_[z].size() * in_[z].size(); }

  static void add_to(std::vector<std::pair<int, Real>>& row, int t, Real v) {
    for (auto& e : row)
      if (e.first == t) {
        e.second += v;
        return;
      }
    row.push_back({t, v});
  }
  static void remove_from(std::vector<std::pair<int, Real>>& row, int t) {
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k].first == t) {
        row[k] = row.back();
        row.pop_back();
        return;
      }
  }

  std::vector<int> eliminate_one(int z) {
    Accumulator<Real> acc;
    for (auto [y, b] : out_[z]) acc.add(b);
    Real p = acc.value();
    if (!(p > 0))
      throw Error(ErrorCode::SingularInteriorBlock,
                  "eliminated state " + std::to_string(z) + " has no outgoing rate");
    Record rec{z, p, out_[z], in_[z]};
    std::sort(rec.out.begin(), rec.out.end());
    std::sort(rec.in.begin(), rec.in.end());
    for (auto [x, a] : rec.in) remove_from(out_[x], z);
    for (auto [y, b] : rec.out) remove_from(in_[y], z);
    std::vector<int> touched;
    for (auto [x, a] : rec.in) {
      touched.push_back(x);
      for (auto [y, b] : rec.out) {
        if (y == x) continue;
        Real v = a * b / p;
        if (!(v > 0)) continue;
        add_to(out_[x], y, v);
        add_to(in_[y], x, v);
      }
    }
    for (auto [y, b] : rec.out) touched.push_back(y);
    out_[z].clear();
    in_[z].clear();
    alive_[z] = 0;
    records_.push_back(std::move(rec));
    return touched;
  }

  Adjacency<Real> out_, in_;
  std::vector<char> alive_;
  std::vector<Record> records_;
};

}  // namespace gladder
