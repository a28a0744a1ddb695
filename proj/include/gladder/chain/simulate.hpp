#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gladder/chain/chain.hpp"

namespace gladder {

struct TrajectorySample {
  std::vector<double> times;  // jump times, strictly increasing
  std::vector<int> states;    // states[0] is the initial state, states[k] entered at times[k-1]
  double horizon = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Uniform in (0,1) from the top 53 bits; hand-rolled so the stream is identical across
// standard library implementations.
inline double open_uniform(std::mt19937_64& g) {
  std::uint64_t bits = g() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

template <class Real>
TrajectorySample simulate_trajectory(const BasicChain<Real>& c, int x0, double horizon, std::uint64_t seed) {
  if (c.size() < 2) throw Error(ErrorCode::InvalidInput, "simulation needs at least two states");
  if (!(horizon > 0)) throw Error(ErrorCode::InvalidInput, "horizon must be positive");
  if (x0 < 0 || x0 >= c.size()) throw Error(ErrorCode::InvalidInput, "initial state out of range");
  std::mt19937_64 gen(seed);
  TrajectorySample s;
  s.horizon = horizon;
  s.seed = seed;
  s.states.push_back(x0);
  double t = 0;
  int x = x0;
  for (;;) {
    double lambda = static_cast<double>(c.holding(x));
    if (!(lambda > 0)) break;
    t += -std::log(detail::open_uniform(gen)) / lambda;
    if (t >= horizon) break;
    double target = detail::open_uniform(gen) * lambda, run = 0;
    int next = c.out(x).back().first;
    for (auto [y, r] : c.out(x)) {
      run += static_cast<double>(r);
      if (target < run) {
        next = y;
        break;
      }
    }
    s.times.push_back(t);
    s.states.push_back(next);
    x = next;
  }
  return s;
}

// Occupation-time fractions over [0, horizon].
inline Measure empirical_measure(const TrajectorySample& s, int n_states) {
  std::vector<double> w(n_states, 0.0);
  double prev = 0;
  for (std::size_t k = 0; k < s.states.size(); ++k) {
    double until = k < s.times.size() ? s.times[k] : s.horizon;
    w[s.states[k]] += until - prev;
    prev = until;
  }
  for (double& v : w) v /= s.horizon;
  return Measure(std::move(w));
}

}  // namespace gladder
