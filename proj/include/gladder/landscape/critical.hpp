#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gladder/landscape/grid.hpp"
#include "gladder/landscape/potential.hpp"

namespace gladder {

enum class CriticalKind { Minimum, Saddle, HigherIndex };

inline const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::Minimum: return "minimum";
    case CriticalKind::Saddle: return "saddle";
    case CriticalKind::HigherIndex: return "higher-index";
  }
  return "?";
}

struct CriticalPoint {
  std::vector<double> location;
  double value = 0;
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // columns match eigenvalues
  int index = 0;                    // number of negative eigenvalues
  CriticalKind kind = CriticalKind::Minimum;
  double gamma = 0;                 // saddle: |negative eigenvalue|; minimum: 1/sqrt(det Hess)
  double gradient_norm = 0;
  bool degenerate = false;

  double det() const {
    double p = 1;
    for (double v : eigenvalues) p *= v;
    return p;
  }
};

struct SeedFailure {
  std::vector<double> seed;
  std::string reason;
};

struct CriticalSearchOptions {
  int resolution = 64;            // seeds per dimension
  bool allow_degenerate = false;  // keep degenerate points instead of throwing
  double dedup = 1e-6;
};

namespace detail {

inline double grad_norm(const Potential& F, const std::vector<double>& x) { return F.gradient(x).norm(); }

// Newton on grad F = 0 with the step solved through |eigenvalues| (so saddles attract too)
// and capped at a few seed spacings.
inline bool newton_critical(const Potential& F, std::vector<double>& x, double cap, std::string& why) {
  const int d = F.dim();
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd g = F.gradient(x);
    if (g.norm() <= 1e-13) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F.hessian(x));
    Eigen::VectorXd lam = es.eigenvalues();
    double top = lam.cwiseAbs().maxCoeff();
    if (!(top > 0)) {
      why = "Hessian vanishes";
      return g.norm() <= 1e-10;
    }
    Eigen::VectorXd c = es.eigenvectors().transpose() * g;
    for (int i = 0; i < d; ++i) c(i) /= std::max(std::abs(lam(i)), 1e-14 * top) * (lam(i) < 0 ? -1 : 1);
    Eigen::VectorXd step = es.eigenvectors() * c;
    double len = step.norm();
    if (!std::isfinite(len)) {
      why = "non-finite Newton step";
      return false;
    }
    if (len > cap) step *= cap / len;
    for (int i = 0; i < d; ++i) x[i] -= step(i);
    if (len < 1e-15) break;
  }
  double gn = grad_norm(F, x);
  if (gn <= 1e-10) return true;
  why = "no convergence, |grad F| = " + std::to_string(gn);
  return false;
}

inline void canonical_location(std::vector<double>& x) {
  for (double& v : x) {
    v = wrap01(v);
    if (v > 1 - 1e-12 || v < 1e-12) v = 0;
  }
}

}  // namespace detail

inline CriticalPoint classify_critical(const Potential& F, std::vector<double> x, bool allow_degenerate = false) {
  CriticalPoint cp;
  detail::canonical_location(x);
  cp.location = x;
  cp.value = F(x);
  cp.gradient_norm = detail::grad_norm(F, x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F.hessian(x));
  cp.eigenvectors = es.eigenvectors();
  for (int i = 0; i < F.dim(); ++i) {
    double l = es.eigenvalues()(i);
    cp.eigenvalues.push_back(l);
    if (l < 0) ++cp.index;
    if (std::abs(l) <= 1e-8) cp.degenerate = true;
  }
  if (cp.degenerate && !allow_degenerate) {
    std::string where;
    for (double v : x) where += std::to_string(v) + " ";
    throw Error(ErrorCode::DegenerateCritical, "Hessian eigenvalue below 1e-8 at " + where);
  }
  cp.kind = cp.index == 0 ? CriticalKind::Minimum : cp.index == 1 ? CriticalKind::Saddle : CriticalKind::HigherIndex;
  if (cp.kind == CriticalKind::Saddle) cp.gamma = -cp.eigenvalues[0];
  if (cp.kind == CriticalKind::Minimum && !cp.degenerate) cp.gamma = 1 / std::sqrt(cp.det());
  return cp;
}

// Seeds are grid points where |grad F| is locally minimal (full 3^d neighbourhood); each is
// refined by Newton and the results are deduplicated on the torus. Ordered by location.
inline std::vector<CriticalPoint> find_critical_points(const Potential& F, CriticalSearchOptions opt = {},
                                                       std::vector<SeedFailure>* failures = nullptr) {
  if (opt.resolution < 64) throw Error(ErrorCode::InvalidInput, "seed resolution must be at least 64");
  const int d = F.dim();
  TorusGrid grid(opt.resolution, d);
  const int N = grid.size();
  if (d > 3 || N > (1 << 24)) throw Error(ErrorCode::GridTooLarge, "seed grid too large");
  std::vector<double> gn(N);
  for (int k = 0; k < N; ++k) gn[k] = detail::grad_norm(F, grid.point(k));
  int nb = 1;
  for (int i = 0; i < d; ++i) nb *= 3;
  std::vector<std::vector<double>> found;
  std::vector<CriticalPoint> out;
  for (int k = 0; k < N; ++k) {
    bool local_min = true;
    auto base = grid.coords(k);
    for (int m = 0; m < nb && local_min; ++m) {
      auto c = base;
      int t = m;
      bool self = true;
      for (int i = 0; i < d; ++i, t /= 3) {
        c[i] += t % 3 - 1;
        self = self && t % 3 == 1;
      }
      if (self) continue;
      int j = grid.index(c);
      // ties broken by index so flat regions yield one seed per plateau cell
      if (gn[j] < gn[k] || (gn[j] == gn[k] && j < k)) local_min = false;
    }
    if (!local_min) continue;
    auto x = grid.point(k);
    std::string why;
    if (!detail::newton_critical(F, x, 2.0 / opt.resolution, why)) {
      if (failures) failures->push_back({grid.point(k), why});
      continue;
    }
    detail::canonical_location(x);
    bool dup = false;
    for (auto& y : found)
      if (torus_distance(x, y) <= opt.dedup) dup = true;
    if (dup) continue;
    found.push_back(x);
    out.push_back(classify_critical(F, x, opt.allow_degenerate));
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    for (std::size_t i = 0; i < a.location.size(); ++i)
      if (a.location[i] != b.location[i]) return a.location[i] < b.location[i];
    return false;
  });
  return out;
}

// Sum of (-1)^index; zero on any torus.
inline int euler_sum(const std::vector<CriticalPoint>& cps) {
  int s = 0;
  for (auto& c : cps) s += c.index % 2 == 0 ? 1 : -1;
  return s;
}

}  // namespace gladder
