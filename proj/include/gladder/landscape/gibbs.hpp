#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gladder/chain/chain.hpp"
#include "gladder/landscape/critical.hpp"
#include "gladder/landscape/grid.hpp"

namespace gladder {

struct GridLimits {
  int max_n_1d = 1 << 22;
  int max_n_2d = 256;
};

inline void check_lattice(int d, int n, GridLimits lim = {}) {
  if (n < 8) throw Error(ErrorCode::InvalidInput, "lattice size n must be at least 8");
  if (d >= 3) throw Error(ErrorCode::GridTooLarge, "dimension " + std::to_string(d) + " is not supported");
  if ((d == 1 && n > lim.max_n_1d) || (d == 2 && n > lim.max_n_2d))
    throw Error(ErrorCode::GridTooLarge, "lattice n = " + std::to_string(n) + " exceeds the cap for d = " +
                                             std::to_string(d));
}

// Nearest-neighbour walk on the lattice with rates exp(-(n/2)(F(y) - F(x))), reversible for
// the Gibbs weights exp(-n F). Long double by default: at n = 1600 the weights span e^-2000.
template <class Real = long double>
BasicChain<Real> gibbs_chain(const Potential& F, int n, GridLimits lim = {}) {
  const int d = F.dim();
  check_lattice(d, n, lim);
  TorusGrid g(n, d);
  const int N = g.size();
  std::vector<Real> val(N), logpi(N);
  for (int x = 0; x < N; ++x) {
    val[x] = F(g.point<Real>(x));
    logpi[x] = -static_cast<Real>(n) * val[x];
  }
  Adjacency<Real> out(N);
  const Real half = static_cast<Real>(n) / 2;
  for (int x = 0; x < N; ++x)
    for (int i = 0; i < d; ++i)
      for (int s : {-1, 1}) {
        int y = g.step(x, i, s);
        out[x].emplace_back(y, std::exp(-half * (val[y] - val[x])));
      }
  std::vector<std::string> labels(N);
  for (int x = 0; x < N; ++x) {
    auto k = g.coords(x);
    std::string s;
    for (int i = 0; i < d; ++i) s += (i ? "," : "") + std::to_string(k[i]);
    labels[x] = s;
  }
  return build_reversible_chain<Real>(std::move(labels), std::move(out), logpi);
}

// G(x) = sum_i 2 (cosh(dF/dx_i (x) / 2) - 1).
inline double functional_G(const Potential& F, const std::vector<double>& x) {
  double s = 0;
  for (int i = 0; i < F.dim(); ++i) s += 2 * (std::cosh(0.5 * F.partial(i, x)) - 1);
  return s;
}

// J(mu) = sum_x mu(x) G(x) over the lattice of mesh 1/n.
template <class Real>
double functional_J(const Potential& F, int n, const std::vector<Real>& mu) {
  TorusGrid g(n, F.dim());
  if (static_cast<int>(mu.size()) != g.size()) throw Error(ErrorCode::InvalidInput, "measure size mismatch");
  Accumulator<double> acc;
  for (int x = 0; x < g.size(); ++x)
    if (mu[x] != 0) acc.add(static_cast<double>(mu[x]) * functional_G(F, g.point(x)));
  return acc.value();
}

struct Atom {
  std::vector<double> location;
  double mass = 0;
};

// J0(mu) = sum_z mu(z) sum_i max(-xi_i(z), 0) for mu supported on critical points, +inf otherwise.
inline double functional_J0(const std::vector<CriticalPoint>& cps, const std::vector<Atom>& mu, double tol = 1e-6) {
  Accumulator<double> acc;
  for (auto& a : mu) {
    if (a.mass == 0) continue;
    const CriticalPoint* hit = nullptr;
    for (auto& c : cps)
      if (torus_distance(c.location, a.location) <= tol) hit = &c;
    if (!hit) return std::numeric_limits<double>::infinity();
    double s = 0;
    for (double xi : hit->eigenvalues) s += std::max(-xi, 0.0);
    acc.add(a.mass * s);
  }
  return acc.value();
}

}  // namespace gladder
