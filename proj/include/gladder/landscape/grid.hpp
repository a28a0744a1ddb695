#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gladder/common.hpp"

namespace gladder {

// The discrete torus (Z/nZ)^d scaled by 1/n; index = k_1 + n k_2 + n^2 k_3 ...
struct TorusGrid {
  int n = 0;
  int d = 1;

  TorusGrid(int n_, int d_) : n(n_), d(d_) {}

  int size() const {
    int s = 1;
    for (int i = 0; i < d; ++i) s *= n;
    return s;
  }
  std::vector<int> coords(int idx) const {
    std::vector<int> k(d);
    for (int i = 0; i < d; ++i, idx /= n) k[i] = idx % n;
    return k;
  }
  int index(const std::vector<int>& k) const {
    int idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * n + ((k[i] % n) + n) % n;
    return idx;
  }
  template <class Real = double>
  std::vector<Real> point(int idx) const {
    std::vector<Real> x(d);
    for (int i = 0; i < d; ++i, idx /= n) x[i] = static_cast<Real>(idx % n) / static_cast<Real>(n);
    return x;
  }
  // Neighbour of idx one step along axis i in direction s (+1 or -1).
  int step(int idx, int i, int s) const {
    int stride = 1;
    for (int a = 0; a < i; ++a) stride *= n;
    int k = (idx / stride) % n;
    int nk = (k + s + n) % n;
    return idx + (nk - k) * stride;
  }
  int nearest(const std::vector<double>& x) const {
    std::vector<int> k(d);
    for (int i = 0; i < d; ++i) k[i] = static_cast<int>(std::lround(x[i] * n));
    return index(k);
  }
};

// Connected components (axis adjacency) of {inside[x]}; labels -1 outside. Returns the count.
inline int grid_components(const TorusGrid& g, const std::vector<char>& inside, std::vector<int>& label) {
  const int N = g.size();
  label.assign(N, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < N; ++s) {
    if (!inside[s] || label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int i = 0; i < g.d; ++i)
        for (int dir : {-1, 1}) {
          int y = g.step(x, i, dir);
          if (inside[y] && label[y] < 0) {
            label[y] = count;
            stack.push_back(y);
          }
        }
    }
    ++count;
  }
  return count;
}

// The component of {inside} containing seed, as sorted indices (empty if seed is outside).
inline std::vector<int> grid_flood(const TorusGrid& g, const std::vector<char>& inside, int seed) {
  std::vector<int> out;
  if (!inside[seed]) return out;
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{seed};
  seen[seed] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int i = 0; i < g.d; ++i)
      for (int dir : {-1, 1}) {
        int y = g.step(x, i, dir);
        if (inside[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gladder
