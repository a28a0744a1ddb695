#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gladder/chain/functionals.hpp"
#include "gladder/hierarchy/functional.hpp"
#include "gladder/verify/h1.hpp"

namespace gladder {

// Edge form of the rate functional for a reversible chain and a measure given by unnormalised
// log-weights: sum over unordered edges of e^{a} (1 - e^{(b-a)/2})^2 with a = log mu(x) R(x,y),
// b = log mu(y) R(y,x). Stays accurate when mu spans more than the long double range.
template <class Real>
Real rate_functional_log(const BasicChain<Real>& c, const std::vector<Real>& logw) {
  if (!c.reversible()) throw Error(ErrorCode::NotReversible, "rate_functional_log needs a reversible chain");
  if (static_cast<int>(logw.size()) != c.size()) throw Error(ErrorCode::InvalidInput, "weight size mismatch");
  const Real lse = log_sum_exp(logw);
  Accumulator<Real> acc;
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) {
      if (y < x) continue;
      Real a = logw[x] + std::log(r) - lse, b = logw[y] + std::log(c.rate(y, x)) - lse;
      if (a < b) std::swap(a, b);
      if (!std::isfinite(a)) continue;  // both endpoints carry no mass
      Real e = std::isfinite(b) ? std::expm1((b - a) / 2) : Real(-1);
      acc.add(std::exp(a) * e * e);
    }
  return acc.value();
}

inline std::vector<long double> normalized_from_log(const std::vector<long double>& logw) {
  long double lse = log_sum_exp(logw);
  std::vector<long double> mu(logw.size());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = std::exp(logw[i] - lse);
  return mu;
}

// x - z through the nearest periodic image, componentwise in [-1/2, 1/2).
inline std::vector<long double> periodic_offset(const std::vector<long double>& x, const std::vector<double>& z) {
  std::vector<long double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double v = x[i] - static_cast<long double>(z[i]);
    d[i] = v - std::floor(v + 0.5L);
  }
  return d;
}

inline long double mass_beyond(const TorusGrid& g, const std::vector<long double>& mu, const std::vector<double>& z,
                               double radius) {
  Accumulator<long double> acc;
  for (int x = 0; x < g.size(); ++x) {
    auto d = periodic_offset(g.point<long double>(x), z);
    long double r2 = 0;
    for (auto v : d) r2 += v * v;
    if (r2 > static_cast<long double>(radius) * radius) acc.add(mu[x]);
  }
  return acc.value();
}

// ---------------------------------------------------------------------------------------------
// Level-p recovery: mu = sum_j omega_j pi(.|V^{p,j}), f = mu / pi^(p) constant on each valley,
// u the harmonic extension of sqrt f off the valleys, nu = u^2 pi / Z.

struct LevelRecovery {
  int n = 0, p = 1;
  std::vector<long double> nu;
  long double Z = 1, Z_minus_1 = 0;
  long double valley_mass = 1;  // pi_n(V^(p))
  long double theta = 1;
  long double full = 0;         // theta I_n(nu)
  long double trace = 0;        // theta I^(p)_n(mu), trace functional on the valleys
  long double target = 0;       // II^(p)(omega) from the reduced chain
  // |full Z / pi(V^(p)) - trace| / trace: the two sides of the harmonic-extension identity
  long double identity_defect() const {
    long double lhs = full * Z / valley_mass;
    return trace != 0 ? std::abs(lhs - trace) / trace : std::abs(lhs);
  }
};

inline LevelRecovery recovery_level_p(const Landscape& L, int n, int p, const std::vector<double>& omega) {
  const auto& W = L.W();
  if (p < 1 || p > W.q()) throw Error(ErrorCode::InvalidInput, "level out of range");
  const auto& J = W.valley_indices(p);
  const int m = static_cast<int>(J.size());
  if (static_cast<int>(omega.size()) != m)
    throw Error(ErrorCode::InvalidInput, "omega needs one weight per level-" + std::to_string(p) + " valley");
  double tot = 0;
  for (double w : omega) {
    if (!(w > 0)) throw Error(ErrorCode::InvalidInput, "omega must be positive on every valley");
    tot += w;
  }
  if (std::abs(tot - 1) > 1e-9) throw Error(ErrorCode::InvalidInput, "omega must sum to 1");

  auto chain = gibbs_chain<long double>(L.F, n);
  auto sets = well_sets(L.F, W, n);
  auto P = valley_partition(W, sets, p);
  auto flux = block_flux(chain, P);
  auto h = hitting_functions(chain, P);
  auto of = P.membership(chain.size());

  LevelRecovery R;
  R.n = n;
  R.p = p;
  R.theta = time_scale(L, p, n);
  R.valley_mass = compensated_sum<long double>(flux.mass.begin(), flux.mass.end());
  std::vector<long double> s(m);  // sqrt f on valley j
  for (int j = 0; j < m; ++j) s[j] = std::sqrt(static_cast<long double>(omega[j]) * R.valley_mass / flux.mass[j]);

  const int N = chain.size();
  std::vector<long double> u(N, 0);
  for (int x = 0; x < N; ++x) {
    if (of[x] >= 0) {
      u[x] = s[of[x]];
      continue;
    }
    Accumulator<long double> acc;
    for (int j = 0; j < m; ++j) acc.add(s[j] * h[j][x]);
    u[x] = acc.value();
  }
  // D(u) = sum over edges of pi R (u(y) - u(x))^2. Since u is harmonic off the valleys, summation
  // by parts leaves only edges leaving a valley: D(u) = sum_{j<k} (s_j - s_k)^2 Phi_jk with
  // Phi_jk = sum_{x in V_j, y not in V_j} pi(x) R(x,y) h_k(y), symmetrised. Every term is
  // nonnegative; differences of h near 1/2 (a shallow well between two deep ones) would be
  // rounding noise many orders above the true energy.
  std::vector<std::vector<Accumulator<long double>>> phi(m, std::vector<Accumulator<long double>>(m));
  Accumulator<long double> zoff;
  for (int x = 0; x < N; ++x) {
    if (of[x] < 0) {
      zoff.add(chain.pi(x) * (u[x] * u[x] - 1));
      continue;
    }
    const int j = of[x];
    for (auto [y, r] : chain.out(x)) {
      if (of[y] == j) continue;
      for (int k = 0; k < m; ++k)
        if (k != j && h[k][y] != 0) phi[j][k].add(chain.pi(x) * r * h[k][y]);
    }
  }
  Accumulator<long double> energy;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      long double ds = s[j] - s[k];
      energy.add(ds * ds * (phi[j][k].value() + phi[k][j].value()) / 2);
    }
  R.Z_minus_1 = zoff.value();
  R.Z = 1 + R.Z_minus_1;
  R.nu.resize(N);
  for (int x = 0; x < N; ++x) R.nu[x] = u[x] * u[x] * chain.pi(x) / R.Z;
  R.full = R.theta * energy.value() / R.Z;

  Accumulator<long double> tr;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      long double a = std::sqrt(omega[j] / flux.mass[j]) - std::sqrt(omega[k] / flux.mass[k]);
      tr.add(a * a * flux.flux[j][k]);
    }
  R.trace = R.theta * tr.value();
  R.target = dv_finite(L.L().level(p).reduced, omega).value;
  return R;
}

// ---------------------------------------------------------------------------------------------
// Saddle recovery: g = e^{(n/2) K} phi_n with K(x) = -(x-z)^T W (x-z), W = U max(-Lambda, 0) U^T
// from the Hessian at z, phi_n(x) = phi(eps_n (x - z)), eps_n = n^{-eps_exponent}, and
// mu_n = g^2 pi_n / A_n. Minima are accepted (W = 0).

struct SaddleRecovery {
  int n = 0;
  std::vector<long double> mu;
  long double value = 0;   // n I_n(mu_n)
  long double target = 0;  // zeta(z) = sum_i max(-xi_i, 0)
};

// log of phi(u) = exp(1 - 1/(1 - |2u|^2)) on |2u| < 1, -inf outside.
inline long double log_bump(const std::vector<long double>& u) {
  long double r2 = 0;
  for (auto v : u) r2 += 4 * v * v;
  if (r2 >= 1) return -std::numeric_limits<long double>::infinity();
  return 1 - 1 / (1 - r2);
}

inline double zeta(const CriticalPoint& z) {
  double s = 0;
  for (double xi : z.eigenvalues) s += std::max(-xi, 0.0);
  return s;
}

inline SaddleRecovery recovery_saddle(const Landscape& L, int n, int critical_index, double eps_exponent = 0.4) {
  if (critical_index < 0 || critical_index >= static_cast<int>(L.critical.size()))
    throw Error(ErrorCode::InvalidInput, "critical point index out of range");
  const CriticalPoint& z = L.critical[critical_index];
  if (z.degenerate || (z.kind != CriticalKind::Saddle && z.kind != CriticalKind::Minimum))
    throw Error(ErrorCode::NotASaddle, "recovery_saddle needs an index-1 saddle (or a minimum), got " +
                                           std::string(to_string(z.kind)));
  const int d = L.F.dim();
  check_lattice(d, n);
  Eigen::MatrixXd Wm = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double s = std::max(-z.eigenvalues[i], 0.0);
    Wm += s * z.eigenvectors.col(i) * z.eigenvectors.col(i).transpose();
  }
  const long double nn = n, eps = std::pow(nn, -static_cast<long double>(eps_exponent));
  auto chain = gibbs_chain<long double>(L.F, n);
  TorusGrid g(n, d);
  std::vector<long double> logw(g.size());
  for (int x = 0; x < g.size(); ++x) {
    auto pt = g.point<long double>(x);
    auto off = periodic_offset(pt, z.location);
    long double K = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) K -= off[i] * static_cast<long double>(Wm(i, j)) * off[j];
    std::vector<long double> u(off);
    for (auto& v : u) v *= eps;
    // log(g^2 pi) up to the normalisation
    logw[x] = nn * K + 2 * log_bump(u) - nn * L.F(pt);
  }
  SaddleRecovery R;
  R.n = n;
  R.value = nn * rate_functional_log(chain, logw);
  R.mu = normalized_from_log(logw);
  R.target = zeta(z);
  return R;
}

// ---------------------------------------------------------------------------------------------
// Dirac recovery: mu_n proportional to e^{-n V}, V(y) = psi(|y - x|^2 / 2) over the nearest
// periodic image, psi(t) = t up to 1 and a C^2 cap at 3/2 beyond. On the 1D and 2D tori
// |y - x|^2 / 2 <= 1/4, so the cap never engages there.

struct DiracRecovery {
  int n = 0;
  std::vector<long double> mu;
  long double value = 0;   // I_n(mu_n)
  long double target = 0;  // G(x)
};

inline long double capped_square(long double t) {
  if (t <= 1) return t;
  if (t >= 2) return 1.5L;
  long double s = t - 1;
  return t - s * s * s + s * s * s * s / 2;
}

inline DiracRecovery recovery_dirac(const Potential& F, int n, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != F.dim()) throw Error(ErrorCode::InvalidInput, "point has the wrong dimension");
  check_lattice(F.dim(), n);
  auto chain = gibbs_chain<long double>(F, n);
  TorusGrid g(n, F.dim());
  std::vector<long double> logw(g.size());
  for (int y = 0; y < g.size(); ++y) {
    auto off = periodic_offset(g.point<long double>(y), x);
    long double r2 = 0;
    for (auto v : off) r2 += v * v;
    logw[y] = -static_cast<long double>(n) * capped_square(r2 / 2);
  }
  DiracRecovery R;
  R.n = n;
  R.value = rate_functional_log(chain, logw);
  R.mu = normalized_from_log(logw);
  R.target = functional_G(F, x);
  return R;
}

}  // namespace gladder
