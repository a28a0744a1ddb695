#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gladder/landscape/expr.hpp"

namespace gladder {

// Smooth 1-periodic potential on the d-torus with symbolic gradient and Hessian.
class Potential {
 public:
  Potential() = default;
  Potential(Expr f, int d, std::string source) : f_(std::move(f)), d_(d), source_(std::move(source)) {
    grad_.resize(d_);
    hess_.assign(d_, std::vector<Expr>(d_));
    for (int i = 0; i < d_; ++i) grad_[i] = expr::derivative(f_, i);
    for (int i = 0; i < d_; ++i)
      for (int j = i; j < d_; ++j) hess_[i][j] = hess_[j][i] = expr::derivative(grad_[i], j);
  }

  int dim() const { return d_; }
  const std::string& source() const { return source_; }
  const Expr& expression() const { return f_; }

  template <class Real = double>
  Real operator()(const std::vector<Real>& x) const {
    return expr::eval(*f_, x.data());
  }
  template <class Real = double>
  Real partial(int i, const std::vector<Real>& x) const {
    return expr::eval(*grad_[i], x.data());
  }
  Eigen::VectorXd gradient(const std::vector<double>& x) const {
    Eigen::VectorXd g(d_);
    for (int i = 0; i < d_; ++i) g(i) = partial(i, x);
    return g;
  }
  Eigen::MatrixXd hessian(const std::vector<double>& x) const {
    Eigen::MatrixXd H(d_, d_);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) H(i, j) = expr::eval(*hess_[i][j], x.data());
    return H;
  }

 private:
  Expr f_;
  int d_ = 0;
  std::string source_;
  std::vector<Expr> grad_;
  std::vector<std::vector<Expr>> hess_;
};

// Largest |F(x + e_i) - F(x)| over seeded random points and all coordinate shifts.
inline double periodicity_defect(const Potential& F, int samples = 64, std::uint64_t seed = 17) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  std::vector<double> x(F.dim());
  for (int s = 0; s < samples; ++s) {
    for (auto& v : x) v = U(g);
    double f = F(x);
    for (int i = 0; i < F.dim(); ++i) {
      auto y = x;
      y[i] += 1;
      double fy = F(y);
      worst = std::max(worst, std::abs(fy - f) / std::max(1.0, std::abs(f)));
      y[i] = x[i] - 3;
      worst = std::max(worst, std::abs(F(y) - f) / std::max(1.0, std::abs(f)));
    }
  }
  return worst;
}

// d = 0 infers the dimension from the highest variable used (at least 1).
inline Potential parse_potential(const std::string& text, int d = 0) {
  Expr e = parse_expression(text);
  int used = expr::max_variable(e) + 1;
  if (d == 0) d = std::max(1, used);
  if (used > d)
    throw ParseError(ErrorCode::UnknownSymbol, text.find("x" + std::to_string(used)), "x1..x" + std::to_string(d),
                     "variable x" + std::to_string(used) + " exceeds dimension " + std::to_string(d));
  Potential F(e, d, text);
  double defect = periodicity_defect(F);
  if (!(defect <= 1e-10))
    throw Error(ErrorCode::NotPeriodic, "potential is not 1-periodic (defect " + std::to_string(defect) + ")");
  return F;
}

// Torus helpers.
inline double wrap01(double v) {
  v -= std::floor(v);
  return v >= 1 ? 0 : v;
}
inline double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    d -= std::floor(d);
    d = std::min(d, 1 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace gladder
