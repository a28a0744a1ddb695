#pragma once

#include <cmath>
#include <vector>

#include "gladder/common.hpp"

namespace gladder {

template <class Real>
struct BasicMeasure {
  std::vector<Real> weights;

  BasicMeasure() = default;
  explicit BasicMeasure(std::vector<Real> w) : weights(std::move(w)) {}

  std::size_t size() const { return weights.size(); }
  Real operator[](std::size_t i) const { return weights[i]; }
  Real& operator[](std::size_t i) { return weights[i]; }

  Real total() const { return compensated_sum<Real>(weights.begin(), weights.end()); }

  bool valid(Real tol = static_cast<Real>(1e-12)) const {
    for (Real v : weights)
      if (!(v >= 0) || !std::isfinite(static_cast<double>(v))) return false;
    return std::abs(total() - 1) <= tol;
  }
};

using Measure = BasicMeasure<double>;

// Divides by the total; entries that end up below the flush threshold become exact zeros.
template <class Real>
BasicMeasure<Real> normalized(std::vector<Real> w) {
  for (Real v : w)
    if (!(v >= 0)) throw Error(ErrorCode::InvalidInput, "negative or NaN weight");
  Real z = compensated_sum<Real>(w.begin(), w.end());
  if (!(z > 0)) throw Error(ErrorCode::InvalidInput, "measure has zero total mass");
  std::size_t flushed = 0;
  for (Real& v : w) {
    v /= z;
    if (v > 0 && v < flush_threshold<Real>()) {
      v = 0;
      ++flushed;
    }
  }
  if (flushed) warn(std::to_string(flushed) + " probabilities flushed to zero");
  return BasicMeasure<Real>(std::move(w));
}

// From unnormalised log-weights, without leaving the log domain until the shift.
template <class Real>
BasicMeasure<Real> from_log_weights(const std::vector<Real>& logw) {
  Real lse = log_sum_exp(logw);
  std::vector<Real> w(logw.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(logw[i] - lse);
  return normalized(std::move(w));
}

}  // namespace gladder
