#pragma once

#include <algorithm>
#include <queue>
#include <vector>

namespace gladder {

using Digraph = std::vector<std::vector<int>>;

// Tarjan's algorithm, iterative. comp[x] is the SCC id; ids are in reverse topological
// order of the condensation (sinks first).
inline int strongly_connected_components(const Digraph& g, std::vector<int>& comp) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on(n, 0);
  comp.assign(n, -1);
  int counter = 0, ncomp = 0;
  struct Frame { int v; std::size_t edge; };
  std::vector<Frame> call;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      int v = f.v;
      if (f.edge < g[v].size()) {
        int w = g[v][f.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return ncomp;
}

inline bool strongly_connected(const Digraph& g) {
  std::vector<int> comp;
  return g.empty() || strongly_connected_components(g, comp) == 1;
}

// BFS distances from s restricted to vertices with mask[v] != 0; -1 if unreachable.
inline std::vector<int> bfs_distances(const Digraph& g, int s, const std::vector<char>& mask) {
  std::vector<int> dist(g.size(), -1);
  std::queue<int> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g[v])
      if (mask[w] && dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

}  // namespace gladder
