#pragma once

#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gladder {

enum class ErrorCode {
  InvalidInput,
  NotIrreducible,
  NegativeRate,
  EmptySubset,
  NotReversible,
  NonPositiveTestFunction,
  DisconnectedSubset,
  TooLarge,
  EmptyTraceSet,
  SingularInteriorBlock,
  SingularSystem,
  OverlappingSets,
  NotClosedClass,
  H2Violation,
  H3Violation,
  OptimizerNotConverged,
  SyntaxError,
  NotPeriodic,
  UnknownSymbol,
  DegenerateCritical,
  NewtonDiverged,
  EpsilonTooLarge,
  DescentAmbiguous,
  GridTooLarge,
  ValidationFailed,
  NotASaddle,
  InsufficientRows,
  ConfigError,
  IoError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::NonPositiveTestFunction: return "NonPositiveTestFunction";
    case ErrorCode::DisconnectedSubset: return "DisconnectedSubset";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyTraceSet: return "EmptyTraceSet";
    case ErrorCode::SingularInteriorBlock: return "SingularInteriorBlock";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::NotClosedClass: return "NotClosedClass";
    case ErrorCode::H2Violation: return "H2Violation";
    case ErrorCode::H3Violation: return "H3Violation";
    case ErrorCode::OptimizerNotConverged: return "OptimizerNotConverged";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::DegenerateCritical: return "DegenerateCritical";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::DescentAmbiguous: return "DescentAmbiguous";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NotASaddle: return "NotASaddle";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the offending position and what would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t pos, std::string expected, const std::string& what)
      : Error(code, what + " at position " + std::to_string(pos) +
                        (expected.empty() ? std::string() : " (expected " + expected + ")")),
        pos_(pos), expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return pos_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t pos_;
  std::string expected_;
};

// One named pass/fail verdict with a human-readable witness.
struct ConditionCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

inline void warn(const std::string& msg) { std::clog << "gladder: warning: " << msg << '\n'; }

// Below this a normalised probability is treated as subnormal noise.
template <class Real>
constexpr Real flush_threshold() {
  if constexpr (sizeof(Real) > sizeof(double)) return static_cast<Real>(1e-4900L);
  else return static_cast<Real>(1e-300);
}

// Neumaier compensated summation.
template <class Real>
struct Accumulator {
  Real sum = 0, comp = 0;
  void add(Real v) {
    Real t = sum + v;
    if (std::abs(sum) >= std::abs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  Real value() const { return sum + comp; }
};

template <class Real, class It>
Real compensated_sum(It first, It last) {
  Accumulator<Real> acc;
  for (; first != last; ++first) acc.add(static_cast<Real>(*first));
  return acc.value();
}

template <class Real>
Real log_sum_exp(const std::vector<Real>& v) {
  if (v.empty()) return -std::numeric_limits<Real>::infinity();
  Real m = v[0];
  for (Real x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  Accumulator<Real> acc;
  for (Real x : v) acc.add(std::exp(x - m));
  return m + std::log(acc.value());
}

inline double rel_diff(double a, double b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace gladder
