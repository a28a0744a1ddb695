#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "gladder/hierarchy/reduced.hpp"

namespace gladder {

struct DVResult {
  double value = 0;                      // the reported value of the functional
  std::optional<double> decomposition;   // class-decomposition formula, when applicable
  double numerical_sup = 0;              // best value of the direct maximisation
  bool converged = true;
  bool agree = true;                     // decomposition vs numerical within tolerance
};

namespace detail {

// Phi(v) = sum_j w_j sum_k r(j,k) (1 - exp(v_k - v_j)), concave in v.
struct DVObjective {
  const ReducedChain& r;
  const std::vector<double>& w;

  double value(const Eigen::VectorXd& v) const {
    Accumulator<double> acc;
    for (int j = 0; j < r.size(); ++j) {
      if (w[j] == 0) continue;
      for (int k = 0; k < r.size(); ++k)
        if (k != j && r.rates[j][k] > 0) acc.add(w[j] * r.rates[j][k] * -std::expm1(v(k) - v(j)));
    }
    return acc.value();
  }
  void derivatives(const Eigen::VectorXd& v, Eigen::VectorXd& g, Eigen::MatrixXd& negH) const {
    const int n = r.size();
    g.setZero(n);
    negH.setZero(n, n);
    for (int j = 0; j < n; ++j) {
      if (w[j] == 0) continue;
      for (int k = 0; k < n; ++k) {
        if (k == j || !(r.rates[j][k] > 0)) continue;
        double t = w[j] * r.rates[j][k] * std::exp(v(k) - v(j));
        g(j) += t;
        g(k) -= t;
        negH(j, j) += t;
        negH(k, k) += t;
        negH(j, k) -= t;
        negH(k, j) -= t;
      }
    }
  }
};

// Damped Newton ascent with the first coordinate pinned.
inline double newton_sup(const DVObjective& obj, Eigen::VectorXd v, bool& converged) {
  const int n = obj.r.size();
  converged = false;
  if (n == 1) {
    converged = true;
    return 0.0;
  }
  double f = obj.value(v);
  Eigen::VectorXd g;
  Eigen::MatrixXd negH;
  for (int it = 0; it < 2000; ++it) {
    obj.derivatives(v, g, negH);
    Eigen::VectorXd gf = g.tail(n - 1);
    Eigen::MatrixXd Hf = negH.bottomRightCorner(n - 1, n - 1);
    double reg = 1e-12 * (1.0 + Hf.diagonal().cwiseAbs().maxCoeff());
    Hf.diagonal().array() += reg;
    Eigen::VectorXd d = Hf.ldlt().solve(gf);
    double dec = gf.dot(d);
    if (!(dec >= 0) || !std::isfinite(dec)) {
      d = gf;
      dec = gf.squaredNorm();
    }
    if (dec < 1e-22 || gf.lpNorm<Eigen::Infinity>() < 1e-15) {
      converged = true;
      break;
    }
    // cap the step so exponentials stay finite
    double big = d.lpNorm<Eigen::Infinity>();
    double step = big > 20 ? 20 / big : 1.0;
    for (;;) {
      Eigen::VectorXd nv = v;
      nv.tail(n - 1) += step * d;
      double nf = obj.value(nv);
      if (nf >= f + 1e-4 * step * dec || step < 1e-12) {
        if (nf >= f) {
          v = nv;
          f = nf;
        }
        break;
      }
      step *= 0.5;
    }
    if (step < 1e-12) {
      converged = dec < 1e-16;
      break;
    }
  }
  return f;
}

}  // namespace detail

// Class-decomposition value: within each communication class the reversible edge form
// (sqrt(w_x r(x,y)) - sqrt(w_y r(y,x)))^2, plus every rate that leaves its class weighted
// by the mass of its origin. Empty when some non-singleton class is not reversible.
inline std::optional<double> dv_decomposition(const ReducedChain& r, const ClassDecomposition& d,
                                              const std::vector<double>& w) {
  for (auto& q : d.non_singleton)
    if (!detail::restricted_chain(r, q).reversible()) return std::nullopt;
  Accumulator<double> acc;
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y) {
      if (x == y || !(r.rates[x][y] > 0)) continue;
      if (d.class_of[x] != d.class_of[y]) {
        acc.add(w[x] * r.rates[x][y]);
      } else if (x < y) {
        double t = std::sqrt(w[x] * r.rates[x][y]) - std::sqrt(w[y] * r.rates[y][x]);
        acc.add(t * t);
      }
    }
  return acc.value();
}

// The finite-chain level-two functional sup_h -sum w (L h)/h.
inline DVResult dv_finite(const ReducedChain& r, const std::vector<double>& w, std::uint64_t seed = 0x5eed,
                          double agree_tol = 1e-6) {
  if (static_cast<int>(w.size()) != r.size()) throw Error(ErrorCode::InvalidInput, "omega has the wrong size");
  double tot = 0;
  for (double v : w) {
    if (!(v >= 0)) throw Error(ErrorCode::InvalidInput, "omega must be nonnegative");
    tot += v;
  }
  if (std::abs(tot - 1) > 1e-9) throw Error(ErrorCode::InvalidInput, "omega must sum to 1");
  DVResult res;
  auto d = decompose_classes(r);
  res.decomposition = dv_decomposition(r, d, w);

  const int n = r.size();
  detail::DVObjective obj{r, w};
  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd seedv = Eigen::VectorXd::Zero(n);
  // closed-form seed: log sqrt(w/pi_class) inside reversible classes, classes stacked so
  // that downstream classes sit far below
  for (auto& q : d.equivalence) {
    if (q.size() < 2) continue;
    auto c = detail::restricted_chain(r, q);
    for (std::size_t a = 0; a < q.size(); ++a)
      seedv(q[a]) = 0.5 * std::log(std::max(w[q[a]], 1e-300) / c.pi(static_cast<int>(a)));
  }
  for (int x = 0; x < n; ++x) seedv(x) -= 30.0 * d.class_of[x] / std::max(1, static_cast<int>(d.equivalence.size()));
  seedv.array() -= seedv(0);
  starts.push_back(seedv);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> N(0.0, 2.0);
  for (int s = 0; s < 8; ++s) {
    Eigen::VectorXd v(n);
    for (int x = 0; x < n; ++x) v(x) = x == 0 ? 0.0 : N(gen);
    starts.push_back(v);
  }
  double best = -std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (auto& v0 : starts) {
    bool conv = false;
    double f = detail::newton_sup(obj, v0, conv);
    any_converged = any_converged || conv;
    best = std::max(best, f);
  }
  res.numerical_sup = best;
  res.converged = any_converged;
  if (res.decomposition) {
    res.value = *res.decomposition;
    res.agree = std::abs(*res.decomposition - best) <= agree_tol * std::max(1.0, std::abs(best));
  } else {
    if (!any_converged)
      throw Error(ErrorCode::OptimizerNotConverged, "best lower bound " + std::to_string(best));
    res.value = best;
  }
  return res;
}

}  // namespace gladder
