#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "gladder/verify/ratios.hpp"
#include "gladder/verify/recovery.hpp"

using namespace gladder;

namespace {

constexpr long double pi_l = 3.141592653589793238462643383279502884L;
const std::vector<int> grid{200, 400, 800, 1600};

const Landscape& catalog(const std::string& name) {
  static std::map<std::string, Landscape> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, analyze_landscape(load_potential(name))).first;
  return it->second;
}

// The catalog double well written out by hand, independent of the expression parser.
long double double_well(long double x) {
  long double s = std::sin(2 * pi_l * x);
  return s * s + 0.2L * (1 - std::cos(2 * pi_l * x));
}
long double double_well_dd(long double x) {
  return 8 * pi_l * pi_l * std::cos(4 * pi_l * x) + 0.8L * pi_l * pi_l * std::cos(2 * pi_l * x);
}

const ConvergenceTable& find(const std::vector<ConvergenceTable>& ts, const std::string& claim) {
  for (auto& t : ts)
    if (t.claim == claim) return t;
  throw std::runtime_error("no table " + claim);
}

}  // namespace

// ---------------------------------------------------------------------------------------------

TEST(Table, RowsAndErrors) {
  ConvergenceTable t;
  t.claim = "x";
  t.add(10, 1.1L, 1);
  t.add(20, 0.25L, 0);
  EXPECT_NEAR(static_cast<double>(t.rows[0].rel_error), 0.1, 1e-15);
  EXPECT_EQ(t.rows[1].rel_error, 0.25L);  // absolute when the target is zero
  EXPECT_THROW(t.add(20, 1, 1), Error);
  EXPECT_THROW(t.add(5, 1, 1), Error);
}

TEST(Table, Verdicts) {
  ConvergenceTable t;
  t.tolerance = 0.1;
  t.add(1, 1.5L, 1);
  t.add(2, 1.05L, 1);
  EXPECT_TRUE(t.evaluate());
  t.all_rows = true;
  EXPECT_FALSE(t.evaluate());
  t.all_rows = false;
  t.decreasing = true;
  t.add(3, 1.08L, 1);
  EXPECT_FALSE(t.evaluate());
  ConvergenceTable empty;
  EXPECT_FALSE(empty.evaluate());
}

TEST(Extrapolate, PowerLaw) {
  const long double L = 2.5L;
  ConvergenceTable t;
  for (int n : {100, 200, 400, 800, 1600}) t.add(n, L + 3.0L / n, L);
  auto f = extrapolate(t);
  EXPECT_EQ(f.kind, "power");
  EXPECT_NEAR(static_cast<double>(f.exponent), -1, 1e-6);
  EXPECT_NEAR(static_cast<double>(f.limit), static_cast<double>(L), 1e-6);
  ASSERT_TRUE(t.fit.has_value());
}

TEST(Extrapolate, PowerLawOnUniformGrid) {
  ConvergenceTable t;
  for (int n : {100, 110, 120, 130, 140, 150}) t.add(n, 1 + 5.0L / (static_cast<long double>(n) * n), 1);
  auto f = extrapolate(t);
  EXPECT_EQ(f.kind, "power");
  EXPECT_NEAR(static_cast<double>(f.exponent), -2, 1e-2);
  EXPECT_NEAR(static_cast<double>(f.limit), 1, 1e-5);
}

TEST(Extrapolate, Exponential) {
  const long double L = -0.75L;
  ConvergenceTable t;
  for (int n = 1; n <= 6; ++n) t.add(n, L + std::exp(-static_cast<long double>(n)), L);
  auto f = extrapolate(t);
  EXPECT_EQ(f.kind, "exponential");
  EXPECT_NEAR(static_cast<double>(f.exponent), -1, 1e-9);
  EXPECT_NEAR(static_cast<double>(f.limit), static_cast<double>(L), 1e-12);
}

TEST(Extrapolate, ConstantRowsAreExact) {
  ConvergenceTable t;
  for (int n : {10, 20, 30}) t.add(n, 0.5L, 0.5L);
  auto f = extrapolate(t);
  EXPECT_EQ(f.kind, "exact");
  EXPECT_TRUE(std::isinf(f.exponent) && f.exponent < 0);
  EXPECT_EQ(f.limit, 0.5L);
}

TEST(Extrapolate, InsufficientRows) {
  ConvergenceTable t;
  t.add(1, 1, 1);
  t.add(2, 1, 1);
  try {
    extrapolate(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientRows);
  }
}

TEST(Table, CsvAndJson) {
  ConvergenceTable t;
  t.claim = "demo";
  t.add(8, 1.0L / 3, 0);
  EXPECT_STREQ(csv_header(), "claim,n,value,target,rel_error\n");
  EXPECT_EQ(table_csv(t), "demo,8,0.33333333333333333,0,0.33333333333333333\n");
  t.evaluate();
  auto j = table_to_json(t);
  EXPECT_EQ(j["claim"], "demo");
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["rows"][0]["value"], "0.33333333333333333");
  EXPECT_FALSE(j.contains("fit"));
}

TEST(ParallelRows, OrderAndErrors) {
  auto v = parallel_rows(50, 4, [](int k) { return k * k; });
  for (int k = 0; k < 50; ++k) EXPECT_EQ(v[k], k * k);
  auto bad = [](int k) {
    if (k == 7 || k == 30) throw Error(ErrorCode::InvalidInput, std::to_string(k));
    return k;
  };
  try {
    parallel_rows(40, 8, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "InvalidInput: 7");
  }
}

// ---------------------------------------------------------------------------------------------
// (H1)

TEST(H1, ValleyRatesMatchSeriesParallelOracle) {
  // On the ring, the trace flux between two arcs V_1, V_2 is the parallel sum of the two
  // series chains of edge conductances pi(x) R(x,x+1) = e^{-(n/2)(F(x)+F(x+1))} / Z.
  const auto& L = catalog("double_well");
  for (int n : {200, 800}) {
    auto chain = gibbs_chain<long double>(L.F, n);
    auto rates = valley_rates(L, 1, n, chain);
    auto sets = well_sets(L.F, L.W(), n);
    std::vector<int> of(n, -1);
    for (int k = 0; k < 2; ++k)
      for (int x : sets[k]) of[x] = k;
    std::vector<long double> F(n);
    long double Z = 0, m2 = 0;
    for (int x = 0; x < n; ++x) F[x] = double_well(static_cast<long double>(x) / n);
    for (int x = 0; x < n; ++x) Z += std::exp(-n * F[x]);
    for (int x : sets[1]) m2 += std::exp(-n * F[x]) / Z;
    long double conductance = 0;
    int start = sets[0].back();  // walk the ring from a point of V_1 through both arcs
    while (of[(start + 1) % n] == 0) start = (start + 1) % n;
    long double resistance = 0;
    for (int step = 0, x = start; step < n; ++step, x = (x + 1) % n) {
      int y = (x + 1) % n;
      if (of[x] >= 0 && of[y] == of[x]) continue;
      resistance += Z * std::exp(static_cast<long double>(n) / 2 * (F[x] + F[y]));
      if (of[y] >= 0) {
        conductance += 1 / resistance;
        resistance = 0;
      }
    }
    EXPECT_NEAR(static_cast<double>(rates[1][0] / (conductance / m2)), 1, 1e-12) << n;
  }
}

TEST(H1, DoubleWellShallowToDeep) {
  const auto& L = catalog("double_well");
  auto ts = check_h1_rates(L, 1, grid);
  ASSERT_EQ(ts.size(), 2u);
  const auto& t = find(ts, "h1_p1_2_1");
  const double d = 0.2;
  const double target = 4 * M_PI * std::sqrt((2 - d * d / 2) * (2 - d));
  EXPECT_NEAR(static_cast<double>(t.rows[0].target), target, 1e-10);
  EXPECT_TRUE(t.errors_decreasing());
  EXPECT_LE(t.rows.back().rel_error, 0.10L);
  EXPECT_TRUE(t.verdict);
  // frozen regression values
  const double frozen[] = {24.8347294611048, 24.2744212940916, 23.997784269002, 23.8603468020227};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(static_cast<double>(t.rows[k].value), frozen[k], 1e-9 * frozen[k]);
  ASSERT_TRUE(t.fit.has_value());
  EXPECT_EQ(t.fit->kind, "power");
  EXPECT_NEAR(static_cast<double>(t.fit->limit), target, 0.01 * target);
}

TEST(H1, DeepRowDecaysToZero) {
  const auto& t = find(check_h1_rates(catalog("double_well"), 1, grid), "h1_p1_1_2");
  EXPECT_EQ(t.rows[0].target, 0);
  EXPECT_TRUE(t.errors_decreasing());
  EXPECT_LT(t.rows.back().value, 1e-200L);
  EXPECT_TRUE(t.verdict);
}

TEST(H1, SymmetricWellRatesAgree) {
  auto ts = check_h1_rates(catalog("symmetric_double_well"), 1, {64, 128, 256});
  const auto &a = find(ts, "h1_p1_1_2"), &b = find(ts, "h1_p1_2_1");
  for (std::size_t k = 0; k < a.rows.size(); ++k)
    EXPECT_NEAR(static_cast<double>(a.rows[k].value / b.rows[k].value), 1, 1e-12);
}

TEST(H1, ThreadCountDoesNotChangeResults) {
  const auto& L = catalog("three_well");
  auto a = check_h1_rates(L, 1, {100, 200, 300}, 0.1, 1);
  auto b = check_h1_rates(L, 1, {100, 200, 300}, 0.1, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].rows.size(); ++k) EXPECT_EQ(a[i].rows[k].value, b[i].rows[k].value);
}

TEST(H1, RejectsBadGrid) {
  EXPECT_THROW(check_h1_rates(catalog("double_well"), 1, {400, 200}), Error);
  EXPECT_THROW(check_h1_rates(catalog("double_well"), 3, {200}), Error);
}

// ---------------------------------------------------------------------------------------------
// Level-p recovery

TEST(LevelRecovery, DoubleWellHalfHalf) {
  const auto& L = catalog("double_well");
  const double r21 = L.L().level(1).reduced.rate(1, 0);
  const double frozen[] = {12.4173647305524, 12.1372106470458, 11.998892134501, 11.9301734010114};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto R = recovery_level_p(L, grid[k], 1, {0.5, 0.5});
    EXPECT_NEAR(static_cast<double>(R.target), 0.5 * r21, 1e-9);
    EXPECT_GE(R.full, -1e-9L);
    EXPECT_LE(R.identity_defect(), 1e-12L);
    EXPECT_NEAR(static_cast<double>(R.full), frozen[k], 1e-9 * frozen[k]);
    EXPECT_NEAR(static_cast<double>(compensated_sum<long double>(R.nu.begin(), R.nu.end())), 1, 1e-15);
    if (grid[k] == 1600) {
      EXPECT_LE(std::abs(R.full - R.target) / R.target, 0.15L);
      EXPECT_LE(std::abs(R.Z - 1), 1e-3L);
    }
  }
}

TEST(LevelRecovery, EnergyMatchesRingOracle) {
  // On the ring the harmonic extension is linear in accumulated resistance along each arc, so
  // D(u) = (s_1 - s_2)^2 (1/R_arc1 + 1/R_arc2) with s_j = sqrt(omega_j pi(V) / pi(V_j)).
  const auto& L = catalog("double_well");
  const std::vector<double> w{0.4, 0.6};
  for (int n : {100, 400}) {
    auto R = recovery_level_p(L, n, 1, w);
    auto sets = well_sets(L.F, L.W(), n);
    std::vector<int> of(n, -1);
    for (int k = 0; k < 2; ++k)
      for (int x : sets[k]) of[x] = k;
    std::vector<long double> F(n);
    long double Z = 0, m[2] = {0, 0};
    for (int x = 0; x < n; ++x) Z += std::exp(-n * (F[x] = double_well(static_cast<long double>(x) / n)));
    for (int k = 0; k < 2; ++k)
      for (int x : sets[k]) m[k] += std::exp(-n * F[x]) / Z;
    long double conductance = 0, resistance = 0;
    int start = sets[0].back();
    while (of[(start + 1) % n] == 0) start = (start + 1) % n;
    for (int step = 0, x = start; step < n; ++step, x = (x + 1) % n) {
      int y = (x + 1) % n;
      if (of[x] >= 0 && of[y] == of[x]) continue;
      resistance += Z * std::exp(static_cast<long double>(n) / 2 * (F[x] + F[y]));
      if (of[y] >= 0) {
        conductance += 1 / resistance;
        resistance = 0;
      }
    }
    long double s1 = std::sqrt(w[0] * (m[0] + m[1]) / m[0]), s2 = std::sqrt(w[1] * (m[0] + m[1]) / m[1]);
    long double D = (s1 - s2) * (s1 - s2) * conductance;
    EXPECT_NEAR(static_cast<double>(R.full * R.Z / R.theta / D), 1, 1e-12) << n;
  }
}

TEST(LevelRecovery, ZTendsToOne) {
  const auto& L = catalog("double_well");
  long double prev = 1;
  for (int n : grid) {
    auto R = recovery_level_p(L, n, 1, {0.3, 0.7});
    EXPECT_LT(std::abs(R.Z_minus_1), prev);
    prev = std::abs(R.Z_minus_1);
  }
}

TEST(LevelRecovery, StationaryMixtureHasZeroCost) {
  // symmetric wells: omega = (1/2, 1/2) is the limit stationary mixture
  auto R = recovery_level_p(catalog("symmetric_double_well"), 400, 1, {0.5, 0.5});
  EXPECT_NEAR(static_cast<double>(R.target), 0, 1e-9);
  EXPECT_LT(R.full, 1e-9L);
  // single top valley of the asymmetric well
  auto T = recovery_level_p(catalog("double_well"), 400, 2, {1.0});
  EXPECT_EQ(T.full, 0);
  EXPECT_EQ(T.trace, 0);
}

TEST(LevelRecovery, PropertyRandomWeights) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  struct Case {
    std::string name;
    int p;
  };
  for (auto c : {Case{"double_well", 1}, Case{"three_well", 1}, Case{"three_well", 2}, Case{"product_2d", 1}}) {
    const auto& L = catalog(c.name);
    int m = static_cast<int>(L.W().valley_indices(c.p).size());
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> w(m);
      double s = 0;
      for (auto& v : w) s += v = U(g);
      for (auto& v : w) v /= s;
      int n = L.F.dim() == 1 ? 300 : 48;
      auto R = recovery_level_p(L, n, c.p, w);
      EXPECT_GE(R.full, -1e-9L) << c.name;
      // trace-vs-full: theta I_n(nu) Z / pi(V) = theta I^(p)_n(mu)
      EXPECT_LE(R.identity_defect(), 1e-10L) << c.name << " p=" << c.p;
    }
  }
}

TEST(LevelRecovery, RejectsBadOmega) {
  const auto& L = catalog("double_well");
  EXPECT_THROW(recovery_level_p(L, 200, 1, {1.0, 0.0}), Error);
  EXPECT_THROW(recovery_level_p(L, 200, 1, {0.5, 0.6}), Error);
  EXPECT_THROW(recovery_level_p(L, 200, 1, {1.0}), Error);
}

// ---------------------------------------------------------------------------------------------
// Saddle recovery

TEST(SaddleRecovery, MatchesDirectFormula) {
  // n I_n(mu_n) = sum_x pi(x) R(x,x+1) n (g(x+1) - g(x))^2 / A, evaluated naively at n = 200.
  const auto& L = catalog("double_well");
  const int n = 200, s = L.saddle(0);
  const long double z = L.critical[s].location[0];
  const long double gamma = -double_well_dd(z), eps = std::pow(static_cast<long double>(n), -0.4L);
  auto gfun = [&](int x) {
    long double d = static_cast<long double>(x) / n - z;
    d -= std::floor(d + 0.5L);
    long double u2 = 4 * eps * eps * d * d;
    long double bump = u2 < 1 ? std::exp(1 - 1 / (1 - u2)) : 0;
    return std::exp(-static_cast<long double>(n) / 2 * gamma * d * d) * bump;
  };
  long double A = 0, E = 0;
  for (int x = 0; x < n; ++x) {
    long double fx = double_well(static_cast<long double>(x) / n), fy = double_well(static_cast<long double>(x + 1) / n);
    A += gfun(x) * gfun(x) * std::exp(-n * fx);
    long double dg = gfun((x + 1) % n) - gfun(x);
    E += std::exp(-static_cast<long double>(n) / 2 * (fx + fy)) * n * dg * dg;
  }
  auto R = recovery_saddle(L, n, s);
  EXPECT_NEAR(static_cast<double>(R.value / (E / A)), 1, 1e-9);
  EXPECT_NEAR(static_cast<double>(R.target), static_cast<double>(gamma), 1e-6);
}

TEST(SaddleRecovery, ZetaLimit) {
  const auto& L = catalog("double_well");
  ConvergenceTable t;
  t.tolerance = 0.15;
  t.decreasing = true;
  const double frozen[] = {81.7036042414202, 79.9142131614736, 79.0352457992766, 78.5998603362639};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto R = recovery_saddle(L, grid[k], L.saddle(0));
    EXPECT_NEAR(static_cast<double>(R.value), frozen[k], 1e-9 * frozen[k]);
    t.add(grid[k], R.value, R.target);
  }
  EXPECT_TRUE(t.evaluate());
  auto f = extrapolate(t);
  EXPECT_EQ(f.kind, "power");
  EXPECT_NEAR(static_cast<double>(f.exponent), -1, 0.1);
}

TEST(SaddleRecovery, MinimumCase) {
  const auto& L = catalog("double_well");
  for (int n : grid) {
    auto R = recovery_saddle(L, n, 0);
    EXPECT_EQ(R.target, 0);
    EXPECT_LE(R.value, 1e-3L);
  }
}

TEST(SaddleRecovery, ConcentratesAtSaddle) {
  const auto& L = catalog("double_well");
  const int s = L.saddle(0);
  long double prev = 1;
  for (int n : grid) {
    auto R = recovery_saddle(L, n, s);
    long double out = mass_beyond(TorusGrid(n, 1), R.mu, L.critical[s].location, 0.05);
    EXPECT_LT(out, prev);
    prev = out;
  }
  EXPECT_LT(prev, 1e-50L);
}

TEST(SaddleRecovery, TwoDimensionalSaddle) {
  const auto& L = catalog("product_2d");
  auto R = recovery_saddle(L, 128, L.saddle(0));
  EXPECT_NEAR(static_cast<double>(R.target), 8 * M_PI * M_PI, 1e-6);
  EXPECT_LT(std::abs(R.value - R.target) / R.target, 0.25L);
}

TEST(SaddleRecovery, RejectsHigherIndex) {
  const auto& L = catalog("product_2d");
  int k = -1;
  for (std::size_t i = 0; i < L.critical.size(); ++i)
    if (L.critical[i].kind == CriticalKind::HigherIndex) k = static_cast<int>(i);
  ASSERT_GE(k, 0);
  try {
    recovery_saddle(L, 32, k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotASaddle);
  }
}

// ---------------------------------------------------------------------------------------------
// Dirac recovery

TEST(DiracRecovery, CoshLimitAtQuarter) {
  auto F = load_potential("cosine");
  const double target = 2 * (std::cosh(M_PI) - 1);
  const double frozen[] = {16.3479101706689, 18.3128892407247, 19.593794943113, 20.3423434656737};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    auto R = recovery_dirac(F, grid[k], {0.25});
    EXPECT_NEAR(static_cast<double>(R.target), target, 1e-12);
    EXPECT_NEAR(static_cast<double>(R.value), frozen[k], 1e-9 * frozen[k]);
  }
  auto R = recovery_dirac(F, 1600, {0.25});
  EXPECT_LE(std::abs(R.value - R.target) / R.target, 0.05L);
}

TEST(DiracRecovery, LogFormMatchesPlainEdgeForm) {
  auto F = load_potential("double_well");
  auto R = recovery_dirac(F, 400, {0.1});
  auto chain = gibbs_chain<long double>(F, 400);
  long double plain = rate_functional(chain, BasicMeasure<long double>(R.mu));
  EXPECT_NEAR(static_cast<double>(R.value / plain), 1, 1e-12);
}

TEST(DiracRecovery, CriticalPointAndConcentration) {
  auto F = load_potential("cosine");
  long double prev = 1e9, inside = 0;
  for (int n : grid) {
    auto R = recovery_dirac(F, n, {0.0});
    EXPECT_EQ(R.target, 0);
    EXPECT_LT(R.value, prev);
    prev = R.value;
    long double in = 1 - mass_beyond(TorusGrid(n, 1), R.mu, {0.0}, 0.1);
    EXPECT_GT(in, inside);
    inside = in;
  }
  EXPECT_LT(prev, 0.5L);
  EXPECT_GT(inside, 0.999L);
}

TEST(DiracRecovery, CapIsSmooth) {
  EXPECT_EQ(capped_square(0.3L), 0.3L);
  EXPECT_EQ(capped_square(1), 1);
  EXPECT_EQ(capped_square(2), 1.5L);
  EXPECT_EQ(capped_square(7), 1.5L);
  const long double h = 1e-5L;
  for (long double t : {1.0L, 2.0L}) {
    long double d1l = (capped_square(t) - capped_square(t - h)) / h, d1r = (capped_square(t + h) - capped_square(t)) / h;
    EXPECT_NEAR(static_cast<double>(d1l - d1r), 0, 1e-4);
  }
  for (long double t = 0; t < 3; t += 0.01L) EXPECT_GE(capped_square(t), std::min(t, 1.0L));
}

// ---------------------------------------------------------------------------------------------
// Measure ratios and (H5)

TEST(Ratios, SymmetricWellIsExactlyHalf) {
  auto ts = check_measure_ratios(catalog("symmetric_double_well"), {50, 100, 200, 400, 800, 1600});
  const auto& t = find(ts, "ratio_top_1");
  for (auto& r : t.rows) EXPECT_NEAR(static_cast<double>(r.value), 0.5, 1e-10) << r.n;
  EXPECT_TRUE(t.verdict);
}

TEST(Ratios, AsymmetricLaplaceExponent) {
  // pi(V^{1,2}) / pi(V^(1)) ~ C e^{-n (F(m_2) - F(m_1))}; F(1/2) - F(0) = 0.4 by hand.
  const long double kappa = double_well(0.5L) - double_well(0);
  EXPECT_NEAR(static_cast<double>(kappa), 0.4, 1e-15);
  auto ts = check_measure_ratios(catalog("double_well"), grid);
  const auto& t = find(ts, "ratio_top_2");
  ASSERT_TRUE(t.fit.has_value());
  EXPECT_EQ(t.fit->kind, "exponential");
  EXPECT_LE(std::abs(-t.fit->exponent - kappa) / kappa, 0.10L);
  EXPECT_TRUE(t.verdict);
  // singleton valleys: ratio identically 1
  for (auto c : {"ratio_p1_1_1", "ratio_p1_2_2", "ratio_p2_1_1"})
    for (auto& r : find(ts, c).rows) EXPECT_EQ(r.value, 1);
  for (auto& r : find(ts, "mass_p1").rows) EXPECT_NEAR(static_cast<double>(r.value), 1, 1e-12);
}

TEST(Ratios, ThreeWellTopMeasure) {
  auto ts = check_measure_ratios(catalog("three_well"), grid);
  for (auto& t : ts) EXPECT_TRUE(t.verdict) << t.claim;
  const auto& s = find(ts, "ratio_top_1");
  const auto& L = catalog("three_well");
  double kappa = L.W().value[0] - L.W().value[1];
  EXPECT_LE(std::abs(static_cast<double>(-s.fit->exponent) - kappa) / kappa, 0.10);
  EXPECT_NEAR(static_cast<double>(find(ts, "ratio_top_2").rows.back().value), 0.5, 1e-10);
}

TEST(H5, SeparationOnCatalog) {
  auto h = check_h5_separation(catalog("double_well"), grid);
  EXPECT_TRUE(h.exact_below_bound);
  EXPECT_TRUE(h.bound.errors_decreasing());
  EXPECT_LT(h.bound.rows.back().value, 1e-2L);
  EXPECT_TRUE(h.bound.verdict);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_LE(h.exact.rows[k].value, h.bound.rows[k].value);
}

TEST(H5, ThreeWell) {
  auto h = check_h5_separation(catalog("three_well"), {100, 200, 400});
  EXPECT_TRUE(h.exact_below_bound);
  EXPECT_TRUE(h.bound.verdict);
}
