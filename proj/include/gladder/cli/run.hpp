#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gladder/chain/simulate.hpp"
#include "gladder/cli/config.hpp"
#include "gladder/hierarchy/report.hpp"
#include "gladder/verify/ratios.hpp"
#include "gladder/verify/recovery.hpp"

namespace gladder {

enum ExitCode { ExitPass = 0, ExitError = 1, ExitFail = 2 };

struct VerifyResult {
  std::vector<ConvergenceTable> tables;
  nlohmann::json expansion = nlohmann::json::array();
  bool pass() const {
    for (auto& t : tables)
      if (!t.verdict) return false;
    return true;
  }
};

namespace detail {

inline Landscape landscape_for(const RunConfig& c) {
  LandscapeOptions opt;
  opt.eps = c.epsilon;
  return analyze_landscape(load_potential(c.potential, c.dimension), opt);
}

inline std::vector<int> selected_levels(const RunConfig& c, const Landscape& L) {
  std::vector<int> ps = c.levels;
  if (ps.empty())
    for (int p = 1; p <= L.q(); ++p) ps.push_back(p);
  for (int p : ps)
    if (p > L.q()) throw ConfigError(0, "levels", "level " + std::to_string(p) + " exceeds q = " + std::to_string(L.q()));
  return ps;
}

inline std::vector<double> omega_for(const RunConfig& c, const Landscape& L, int p) {
  const int m = static_cast<int>(L.W().valley_indices(p).size());
  auto it = c.omega.find(p);
  if (it == c.omega.end()) return std::vector<double>(m, 1.0 / m);
  if (static_cast<int>(it->second.size()) != m)
    throw ConfigError(0, "omega", "level " + std::to_string(p) + " needs " + std::to_string(m) + " weights");
  std::vector<double> w = it->second;
  double s = 0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return w;
}

inline void finish(ConvergenceTable& t) {
  if (t.rows.size() >= 3) extrapolate(t);
  t.evaluate();
}

inline bool wants(const RunConfig& c, const std::string& claim) {
  return std::find(c.claims.begin(), c.claims.end(), claim) != c.claims.end();
}

inline bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace detail

// All tables for the selected claims, in a fixed order: h1, level, zeta, dirac, ratios, h5.
// The expansion entries group them by the term of I_n = J + (1/n) J0 + sum_p (1/theta^(p)_n) I^(p)
// they support.
inline VerifyResult run_verification(const RunConfig& c, const Landscape& L) {
  VerifyResult res;
  const auto& ns = c.n_grid;
  const auto& T = c.tolerances;
  const int threads = c.threads;
  if (c.claims.empty()) return res;
  L.require_valid();
  auto levels = detail::selected_levels(c, L);

  if (detail::wants(c, "h1"))
    for (int p : levels)
      for (auto& t : check_h1_rates(L, p, ns, T.h1, threads)) res.tables.push_back(std::move(t));

  if (detail::wants(c, "level"))
    for (int p : levels) {
      auto w = detail::omega_for(c, L, p);
      auto rows = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
        auto R = recovery_level_p(L, ns[k], p, w);
        R.nu.clear();
        return R;
      });
      ConvergenceTable t, z;
      t.claim = "level_p" + std::to_string(p);
      t.tolerance = T.level;
      z.claim = "level_p" + std::to_string(p) + "_Z";
      z.tolerance = T.z;
      bool sane = true;
      for (std::size_t k = 0; k < ns.size(); ++k) {
        t.add(ns[k], rows[k].full, rows[k].target);
        z.add(ns[k], rows[k].Z, 1);
        sane = sane && rows[k].full >= -1e-9L && rows[k].identity_defect() <= 1e-9L;
      }
      detail::finish(t);
      detail::finish(z);
      if (!sane) {
        t.verdict = false;
        t.note = "negative value or trace-vs-full identity violated";
      }
      res.tables.push_back(std::move(t));
      res.tables.push_back(std::move(z));
    }

  if (detail::wants(c, "zeta")) {
    std::vector<int> ord = c.saddles;
    if (ord.empty())
      for (auto& cp : L.critical)
        if (cp.kind == CriticalKind::Saddle) ord.push_back(static_cast<int>(ord.size()) + 1);
    for (int s : ord) {
      int idx;
      try {
        idx = L.saddle(s - 1);
      } catch (const Error&) {
        throw ConfigError(0, "saddles", "no saddle number " + std::to_string(s));
      }
      auto rows = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
        auto R = recovery_saddle(L, ns[k], idx, c.eps_exponent);
        R.mu.clear();
        return R;
      });
      ConvergenceTable t;
      t.claim = "zeta_s" + std::to_string(s);
      t.tolerance = T.zeta;
      t.decreasing = true;
      for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], rows[k].value, rows[k].target);
      detail::finish(t);
      res.tables.push_back(std::move(t));
    }
  }

  if (detail::wants(c, "dirac")) {
    std::vector<double> x = c.dirac_point;
    if (x.empty()) x.assign(L.F.dim(), 0.25);
    if (static_cast<int>(x.size()) != L.F.dim()) throw ConfigError(0, "dirac_point", "wrong dimension");
    auto rows = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
      auto R = recovery_dirac(L.F, ns[k], x);
      R.mu.clear();
      return R;
    });
    ConvergenceTable t;
    t.claim = "dirac";
    t.tolerance = T.dirac;
    for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], rows[k].value, rows[k].target);
    detail::finish(t);
    res.tables.push_back(std::move(t));
  }

  if (detail::wants(c, "ratios"))
    for (auto& t : check_measure_ratios(L, ns, {T.ratio, T.ratio, T.ratio}, threads)) res.tables.push_back(std::move(t));

  if (detail::wants(c, "h5")) {
    auto h = check_h5_separation(L, ns, T.h5, 2000, threads);
    res.tables.push_back(std::move(h.bound));
    res.tables.push_back(std::move(h.exact));
  }

  // group by expansion term
  using nlohmann::json;
  auto term = [&](const std::string& name, const std::string& scale, const std::string& what, auto belongs) {
    json claims = json::array();
    bool pass = true;
    for (auto& t : res.tables)
      if (belongs(t.claim)) {
        claims.push_back(t.claim);
        pass = pass && t.verdict;
      }
    res.expansion.push_back({{"term", name},
                             {"scale", scale},
                             {"meaning", what},
                             {"claims", claims},
                             {"status", claims.empty() ? "not checked" : (pass ? "pass" : "fail")}});
  };
  using detail::starts_with;
  term("J", "1", "mu(G), G(x) = sum_i 2 (cosh(d_i F(x) / 2) - 1)", [](const std::string& s) { return s == "dirac"; });
  term("J0", "1/n", "mu(zeta) on critical points", [](const std::string& s) { return starts_with(s, "zeta_"); });
  for (int p = 1; p <= L.q(); ++p) {
    std::string sp = std::to_string(p);
    term("I^(" + sp + ")", "1/theta^(" + sp + ")_n", "level-" + sp + " functional of the reduced chain r_" + sp,
         [&](const std::string& s) {
           return starts_with(s, "h1_p" + sp + "_") || s == "level_p" + sp || s == "level_p" + sp + "_Z" ||
                  starts_with(s, "ratio_p" + sp + "_") || s == "mass_p" + sp ||
                  (p == 1 && starts_with(s, "h5_")) || (p == L.q() && starts_with(s, "ratio_top_"));
         });
  }
  return res;
}

// ---------------------------------------------------------------------------------------------
// Report emission

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << body;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

inline void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string());
}

// The echoed config leaves out the output directory and thread count, which do not affect results.
inline nlohmann::json config_echo(const RunConfig& c) {
  auto j = config_to_json(c);
  j.erase("output");
  j.erase("threads");
  return j;
}

// <claim>.csv per table, tables.csv with all rows, summary.json. Returns the written file names.
inline std::vector<std::string> emit_reports(const VerifyResult& r, const RunConfig& c,
                                             const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<std::string> files;
  std::string all = csv_header();
  nlohmann::json tables = nlohmann::json::array();
  int failed = 0;
  for (auto& t : r.tables) {
    write_file(dir / (t.claim + ".csv"), csv_header() + table_csv(t));
    files.push_back(t.claim + ".csv");
    all += table_csv(t);
    tables.push_back(table_to_json(t));
    failed += !t.verdict;
  }
  write_file(dir / "tables.csv", all);
  files.push_back("tables.csv");
  nlohmann::json s;
  s["schema_version"] = 1;
  s["config"] = config_echo(c);
  s["expansion"] = r.expansion;
  s["claims"] = r.tables.size();
  s["failed"] = failed;
  s["verdict"] = failed ? "fail" : "pass";
  s["tables"] = tables;
  write_file(dir / "summary.json", s.dump(2) + "\n");
  files.push_back("summary.json");
  return files;
}

// ---------------------------------------------------------------------------------------------
// Subcommands. Each returns an exit code; errors propagate to run().

inline int run_analyze(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  auto L = detail::landscape_for(c);
  ensure_dir(dir);
  write_file(dir / "analysis.json", landscape_to_json(L).dump(2) + "\n");
  if (!L.valid()) {
    log << "validation failed: " << L.report.failures() << "\n";
    return ExitError;
  }
  log << "analysis: " << L.critical.size() << " critical points, q = " << L.q() << "\n";
  return ExitPass;
}

inline int run_ladder(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  auto L = detail::landscape_for(c);
  L.require_valid();
  nlohmann::json j;
  j["schema_version"] = 1;
  j["potential"] = L.F.source();
  j["depths"] = L.W().depths;
  j["ladder"] = ladder_to_json(L.L());
  auto rep = zero_level_set_report(L.L(), 20, c.seed);
  j["zero_level_set_report"] = report_to_json(rep);
  ensure_dir(dir);
  write_file(dir / "ladder.json", j.dump(2) + "\n");
  bool pass = true;
  for (auto& cond : rep.conditions) pass = pass && cond.pass;
  log << "ladder: q = " << L.q() << (pass ? ", zero-level-set report passes" : ", zero-level-set report FAILS") << "\n";
  return pass ? ExitPass : ExitFail;
}

inline int run_verify(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  auto L = detail::landscape_for(c);
  auto r = run_verification(c, L);
  emit_reports(r, c, dir);
  for (auto& t : r.tables)
    log << (t.verdict ? "pass " : "FAIL ") << t.claim << "  error " << format_real(t.rows.back().rel_error) << " (tol "
        << t.tolerance << ")\n";
  log << r.tables.size() << " claims, verdict " << (r.pass() ? "pass" : "fail") << "\n";
  return r.pass() ? ExitPass : ExitFail;
}

inline int run_rates(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  auto L = detail::landscape_for(c);
  L.require_valid();
  int p = c.levels.empty() ? 1 : c.levels.front();
  if (p > L.q()) throw ConfigError(0, "levels", "level " + std::to_string(p) + " exceeds q = " + std::to_string(L.q()));
  VerifyResult r;
  r.tables = check_h1_rates(L, p, c.n_grid, c.tolerances.h1, c.threads);
  ensure_dir(dir);
  std::string csv = csv_header();
  nlohmann::json js = nlohmann::json::array();
  for (auto& t : r.tables) {
    csv += table_csv(t);
    js.push_back(table_to_json(t));
  }
  write_file(dir / ("rates_p" + std::to_string(p) + ".csv"), csv);
  nlohmann::json j{{"schema_version", 1}, {"level", p}, {"config", config_echo(c)}, {"tables", js},
                   {"verdict", r.pass() ? "pass" : "fail"}};
  write_file(dir / ("rates_p" + std::to_string(p) + ".json"), j.dump(2) + "\n");
  for (auto& t : r.tables)
    log << (t.verdict ? "pass " : "FAIL ") << t.claim << "  " << format_real(t.rows.back().value) << " vs "
        << format_real(t.rows.back().target) << "\n";
  return r.pass() ? ExitPass : ExitFail;
}

inline int run_simulate(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  auto L = detail::landscape_for(c);
  const auto& S = c.simulate;
  auto chain = gibbs_chain<double>(L.F, S.n);
  TorusGrid g(S.n, L.F.dim());
  std::vector<double> start = S.start;
  if (start.empty()) {
    for (auto& cp : L.critical)
      if (cp.kind == CriticalKind::Minimum) {
        start = cp.location;
        break;
      }
  }
  if (static_cast<int>(start.size()) != L.F.dim()) throw ConfigError(0, "simulate", "start has the wrong dimension");
  auto traj = simulate_trajectory(chain, g.nearest(start), S.horizon, c.seed);
  auto emp = empirical_measure(traj, chain.size());
  ensure_dir(dir);
  char buf[96];
  std::string t = "time,state\n";
  std::snprintf(buf, sizeof buf, "%.17g", 0.0);
  t += std::string(buf) + ",\"" + chain.label(traj.states[0]) + "\"\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
    t += std::string(buf) + ",\"" + chain.label(traj.states[k + 1]) + "\"\n";
  }
  write_file(dir / "trajectory.csv", t);
  std::string e = "state,empirical,gibbs\n";
  for (int x = 0; x < chain.size(); ++x) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", emp[x], chain.pi(x));
    e += "\"" + chain.label(x) + "\"," + buf + "\n";
  }
  write_file(dir / "empirical.csv", e);
  log << "simulate: " << traj.times.size() << " jumps up to t = " << S.horizon << "\n";
  return ExitPass;
}

// Dispatch with error handling: module errors print with context and give exit code 1.
inline int run(const std::string& sub, const RunConfig& c, const std::filesystem::path& dir, std::ostream& log,
               std::ostream& err) {
  try {
    if (sub == "analyze") return run_analyze(c, dir, log);
    if (sub == "ladder") return run_ladder(c, dir, log);
    if (sub == "verify") return run_verify(c, dir, log);
    if (sub == "rates") return run_rates(c, dir, log);
    if (sub == "simulate") return run_simulate(c, dir, log);
    err << "gamma-ladder: unknown subcommand '" << sub << "'\n";
  } catch (const Error& e) {
    err << "gamma-ladder " << sub << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "gamma-ladder " << sub << ": internal error: " << e.what() << "\n";
  }
  return ExitError;
}

}  // namespace gladder
