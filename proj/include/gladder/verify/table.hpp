#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>
#include <atomic>

#include <json.hpp>

#include "gladder/common.hpp"

namespace gladder {

struct ConvergenceRow {
  int n = 0;
  long double value = 0, target = 0, rel_error = 0;
};

struct ConvergenceFit {
  long double limit = 0;
  long double exponent = 0;  // -alpha for C n^-alpha, -kappa for C e^{-kappa n}, -inf when exact
  std::string kind;          // "power", "exponential" or "exact"
};

// Rows (n, value, target, error) for one claim. The verdict compares the error at the largest n
// (or at every n when all_rows is set) with the tolerance, optionally also requiring the error
// to decrease strictly along the grid.
struct ConvergenceTable {
  std::string claim;
  std::vector<ConvergenceRow> rows;
  double tolerance = 0.1;
  bool all_rows = false;
  bool decreasing = false;
  std::optional<ConvergenceFit> fit;
  bool verdict = false;
  std::string note;

  static long double error_of(long double value, long double target) {
    long double e = std::abs(value - target);
    return target != 0 ? e / std::abs(target) : e;
  }

  void add(int n, long double value, long double target) {
    if (!rows.empty() && n <= rows.back().n)
      throw Error(ErrorCode::InvalidInput, claim + ": n must be strictly increasing");
    rows.push_back({n, value, target, error_of(value, target)});
  }

  bool errors_decreasing() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].rel_error < rows[i - 1].rel_error)) return false;
    return true;
  }

  bool evaluate() {
    verdict = !rows.empty();
    if (verdict && all_rows) {
      for (auto& r : rows) verdict = verdict && r.rel_error <= tolerance;
    } else if (verdict) {
      verdict = rows.back().rel_error <= tolerance;
    }
    if (decreasing) verdict = verdict && errors_decreasing();
    return verdict;
  }
};

namespace detail {

// Least-squares line through (x, y); returns slope, intercept and residual sum of squares.
struct LineFit {
  double slope = 0, intercept = 0, rss = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / m, my = sy / m, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    f.rss += r * r;
  }
  return f;
}

}  // namespace detail

// Fits value = L + C phi(n) on the last (at most 5) rows. The decay shape comes from the
// successive differences D_i = v_{i+1} - v_i, which do not involve L: log|D_i / (n_{i+1} - n_i)|
// against the log of the interval midpoint (slope -(alpha+1) for n^-alpha, exact on geometric
// grids) and log|D_i| against the left end (slope -kappa for e^{-kappa n}, exact on uniform
// grids). The straighter of the two regressions wins; with two differences or fewer there is
// no curvature information and the power law is kept. L then solves the linear least squares
// problem with phi fixed.
inline ConvergenceFit extrapolate(ConvergenceTable& t) {
  if (t.rows.size() < 3)
    throw Error(ErrorCode::InsufficientRows, t.claim + ": extrapolation needs at least 3 rows");
  std::size_t first = t.rows.size() > 5 ? t.rows.size() - 5 : 0;
  std::vector<ConvergenceRow> r(t.rows.begin() + static_cast<long>(first), t.rows.end());
  ConvergenceFit fit;
  std::vector<double> lmid, left, lslope, ldiff;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    long double d = r[i + 1].value - r[i].value;
    if (d == 0) continue;
    long double dn = r[i + 1].n - r[i].n;
    lmid.push_back(std::log(0.5 * (r[i].n + r[i + 1].n)));
    left.push_back(static_cast<double>(r[i].n));
    lslope.push_back(static_cast<double>(std::log(std::abs(d) / dn)));
    ldiff.push_back(static_cast<double>(std::log(std::abs(d))));
  }
  if (ldiff.empty()) {
    fit.kind = "exact";
    fit.limit = r.back().value;
    fit.exponent = -std::numeric_limits<long double>::infinity();
    t.fit = fit;
    return fit;
  }
  bool exponential = false;
  long double alpha = 1;  // one nonzero difference: no shape information, assume 1/n
  if (ldiff.size() >= 2) {
    auto pw = detail::fit_line(lmid, lslope);
    auto ex = detail::fit_line(left, ldiff);
    alpha = -pw.slope - 1;
    if (ldiff.size() >= 3 && ex.rss < pw.rss && ex.slope < 0) {
      exponential = true;
      alpha = -ex.slope;
    }
  }
  if (!(alpha > 0)) alpha = 1;  // not decaying; report a 1/n fit
  auto phi = [&](int n) -> long double {
    return exponential ? std::exp(-alpha * static_cast<long double>(n - r.front().n))
                       : std::pow(static_cast<long double>(n), -alpha);
  };
  long double s1 = 0, sp = 0, spp = 0, sv = 0, spv = 0;
  for (auto& row : r) {
    long double p = phi(row.n);
    s1 += 1;
    sp += p;
    spp += p * p;
    sv += row.value;
    spv += p * row.value;
  }
  long double det = s1 * spp - sp * sp;
  fit.limit = det != 0 ? (spp * sv - sp * spv) / det : r.back().value;
  fit.exponent = -alpha;
  fit.kind = exponential ? "exponential" : "power";
  t.fit = fit;
  return fit;
}

inline std::string format_real(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

inline const char* csv_header() { return "claim,n,value,target,rel_error\n"; }

inline std::string table_csv(const ConvergenceTable& t) {
  std::string s;
  for (auto& r : t.rows)
    s += t.claim + "," + std::to_string(r.n) + "," + format_real(r.value) + "," + format_real(r.target) + "," +
         format_real(r.rel_error) + "\n";
  return s;
}

// Long doubles go out as decimal strings: values like e^-600 are not representable as JSON doubles.
inline nlohmann::json table_to_json(const ConvergenceTable& t) {
  using nlohmann::json;
  json rows = json::array();
  for (auto& r : t.rows)
    rows.push_back({{"n", r.n},
                    {"value", format_real(r.value)},
                    {"target", format_real(r.target)},
                    {"rel_error", format_real(r.rel_error)}});
  json j{{"claim", t.claim},
         {"rows", rows},
         {"tolerance", t.tolerance},
         {"all_rows", t.all_rows},
         {"require_decreasing", t.decreasing},
         {"errors_decreasing", t.errors_decreasing()},
         {"verdict", t.verdict ? "pass" : "fail"}};
  if (t.fit)
    j["fit"] = {{"kind", t.fit->kind}, {"limit", format_real(t.fit->limit)}, {"exponent", format_real(t.fit->exponent)}};
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

// Runs job(k) for k = 0..count-1 on up to `threads` workers; results are stored by index, so
// the output does not depend on scheduling. The first failure by index is rethrown.
template <class Job>
auto parallel_rows(int count, int threads, Job job) -> std::vector<decltype(job(0))> {
  using Result = decltype(job(0));
  std::vector<std::optional<Result>> out(count);
  std::vector<std::exception_ptr> err(count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k; (k = next++) < count;) {
      try {
        out[k] = job(k);
      } catch (...) {
        err[k] = std::current_exception();
      }
    }
  };
  int t = std::max(1, std::min(threads, count));
  if (t == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  std::vector<Result> res;
  res.reserve(count);
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

}  // namespace gladder
