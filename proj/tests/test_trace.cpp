#include <gtest/gtest.h>

#include <Eigen/Sparse>
#include <random>

#include "gladder/potential/capacity.hpp"
#include "oracles.hpp"

using namespace gladder;

namespace {

Chain path(int n, double rate = 1.0) {
  std::vector<RateEntry<double>> r;
  for (int i = 0; i + 1 < n; ++i) {
    r.push_back({i, i + 1, rate});
    r.push_back({i + 1, i, rate});
  }
  return build_chain<double>(n, r);
}

// A chain whose conductances c(x,y) = pi(x)R(x,y) are prescribed, with uniform pi.
Chain from_conductances(int n, const std::vector<std::tuple<int, int, double>>& e) {
  std::vector<RateEntry<double>> r;
  for (auto [x, y, c] : e) {
    r.push_back({x, y, c * n});
    r.push_back({y, x, c * n});
  }
  return build_chain<double>(n, r);
}

std::vector<int> all_but(int n, const std::vector<int>& skip) {
  std::vector<int> v;
  for (int x = 0; x < n; ++x)
    if (std::find(skip.begin(), skip.end(), x) == skip.end()) v.push_back(x);
  return v;
}

}  // namespace

TEST(Trace, FullSetUnchanged) {
  std::mt19937_64 g(1);
  auto c = oracle::random_reversible(g, 6);
  auto t = trace_chain(c, {0, 1, 2, 3, 4, 5});
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      EXPECT_EQ(t.rate(x, y), c.rate(x, y));
    }
}

TEST(Trace, PathAndStar) {
  auto t = trace_chain(path(3), {0, 2});
  EXPECT_DOUBLE_EQ(t.rate(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(t.rate(1, 0), 0.5);
  auto star = build_chain<double>(4, {{0, 1, 1}, {1, 0, 1}, {0, 2, 1}, {2, 0, 1}, {0, 3, 1}, {3, 0, 1}});
  auto s = trace_chain(star, {1, 2, 3});
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x != y) EXPECT_NEAR(s.rate(x, y), 1.0 / 3.0, 1e-15);
    }
  EXPECT_THROW(trace_chain(star, {}), Error);
}

TEST(Trace, MatchesDenseSchurComplementAndConditionedPi) {
  std::mt19937_64 g(2);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 3 + rep % 8;
    auto c = oracle::random_reversible(g, n);
    std::vector<int> W;
    for (int x = 0; x < n; ++x)
      if (x % 2 == 0 || x == 1) W.push_back(x);
    auto t = trace_chain(c, W);
    auto S = oracle::schur_trace(c, W);
    double mass = 0;
    for (int x : W) mass += c.pi(x);
    for (size_t i = 0; i < W.size(); ++i) {
      EXPECT_NEAR(t.pi(i), c.pi(W[i]) / mass, 1e-13);
      double row = 0;
      for (size_t j = 0; j < W.size(); ++j)
        if (i != j) {
          EXPECT_NEAR(t.rate(i, j), S(i, j), 1e-11 * (1 + std::abs(S(i, j))));
          row += t.rate(i, j);
        }
      EXPECT_NEAR(row, -S(i, i), 1e-10 * row);
    }
    EXPECT_TRUE(t.reversible());
    EXPECT_LE(stationarity_residual(t), 1e-10);
  }
}

TEST(Trace, HittingProbabilityFormula) {
  // R^W(x,y) = lambda(x) P_x[H_y = H_W^+] computed by an absorbing-chain dense solve
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 20; ++rep) {
    auto c = oracle::random_reversible(g, 7);
    std::vector<int> W{0, 3, 5};
    auto t = trace_chain(c, W);
    for (size_t j = 0; j < W.size(); ++j) {
      std::vector<double> h(7, 0.0);
      h[W[j]] = 1;
      auto u = oracle::dense_harmonic(c, W, h);  // P_z[hit W first at W[j]]
      for (size_t i = 0; i < W.size(); ++i) {
        if (i == j) continue;
        double p = 0;
        for (auto [y, r] : c.out(W[i])) p += r * u[y];
        EXPECT_NEAR(t.rate(i, j), p, 1e-12 * (1 + p));
      }
    }
  }
}

TEST(Trace, IteratedTrace) {
  std::mt19937_64 g(4);
  for (int rep = 0; rep < 100; ++rep) {
    auto c = oracle::random_reversible(g, 8);
    std::vector<int> W1{0, 1, 2, 4, 6, 7}, W2{1, 4, 7};
    auto t1 = trace_chain(c, W1);
    auto t12 = trace_chain(t1, {1, 3, 5});  // positions of W2 inside W1
    auto t2 = trace_chain(c, W2);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (x != y) EXPECT_NEAR(t12.rate(x, y), t2.rate(x, y), 1e-9 * t2.rate(x, y));
      }
  }
}

TEST(MeanRate, SingletonsAndCycle) {
  std::mt19937_64 g(5);
  auto c = oracle::random_reversible(g, 5);
  Partition P{{{0}, {1}, {2}, {3}, {4}}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i != j) EXPECT_NEAR(mean_jump_rate(c, P, i, j), c.rate(i, j), 1e-15);
    }
  auto q = build_chain<double>(4, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}, {2, 3, 1}, {3, 2, 1}, {3, 0, 1}, {0, 3, 1}});
  Partition opp{{{0, 2}, {1, 3}}};
  double a = mean_jump_rate(q, opp, 0, 1), b = mean_jump_rate(q, opp, 1, 0);
  EXPECT_DOUBLE_EQ(a, b);
  EXPECT_NEAR(0.5 * a, 0.5 * b, 1e-12);
  EXPECT_THROW(mean_jump_rate(q, opp, 0, 0), Error);
}

TEST(MeanRate, DetailedBalanceRandom) {
  std::mt19937_64 g(6);
  for (int rep = 0; rep < 50; ++rep) {
    auto c = oracle::random_reversible(g, 9);
    Partition P{{{0, 1}, {4}, {6, 7, 8}}};
    auto f = block_flux(c, P);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(f.flux[i][j], f.flux[j][i], 1e-12 * (1 + f.flux[i][j]));
  }
}

TEST(Harmonic, Examples) {
  auto p = path(4);
  auto s = harmonic_extension(p, {0, 3}, std::vector<double>{0, 9, 9, 1});
  EXPECT_NEAR(s.values[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.values[2], 2.0 / 3.0, 1e-15);
  EXPECT_LE(s.residual, 1e-14);
  auto k = harmonic_extension(p, {0, 3}, std::vector<double>{2.5, 0, 0, 2.5});
  for (double v : k.values) EXPECT_NEAR(v, 2.5, 1e-15);
  EXPECT_THROW(harmonic_extension(p, {}, std::vector<double>(4, 0)), Error);
}

TEST(Harmonic, RandomAgainstDenseAndMaximumPrinciple) {
  std::mt19937_64 g(7);
  std::normal_distribution<double> N(0, 1);
  for (int rep = 0; rep < 50; ++rep) {
    auto c = oracle::random_reversible(g, 9);
    std::vector<int> W{0, 5, 8};
    std::vector<double> h(9, 0);
    for (int x : W) h[x] = N(g);
    auto s = harmonic_extension(c, W, h);
    auto ref = oracle::dense_harmonic(c, W, h);
    double lo = 1e300, hi = -1e300;
    for (int x : W) lo = std::min(lo, h[x]), hi = std::max(hi, h[x]);
    for (int x = 0; x < 9; ++x) {
      EXPECT_NEAR(s.values[x], ref[x], 1e-12);
      EXPECT_GE(s.values[x], lo - 1e-14);
      EXPECT_LE(s.values[x], hi + 1e-14);
    }
    EXPECT_LE(s.residual, 1e-9);
    std::vector<double> pos(9, 0);
    for (int x : W) pos[x] = 0.1 + std::abs(h[x]);
    auto sp = harmonic_extension(c, W, pos);
    for (double v : sp.values) EXPECT_GT(v, 0);
  }
}

TEST(Equilibrium, Examples) {
  auto p = path(3);
  auto h = equilibrium_potential(p, {0}, {2});
  EXPECT_DOUBLE_EQ(h.values[0], 1);
  EXPECT_DOUBLE_EQ(h.values[2], 0);
  EXPECT_DOUBLE_EQ(h.values[1], 0.5);
  EXPECT_THROW(equilibrium_potential(p, {0, 1}, {1}), Error);
  std::mt19937_64 g(8);
  auto c = oracle::random_reversible(g, 8);
  auto a = equilibrium_potential(c, {0, 1}, {5}), b = equilibrium_potential(c, {5}, {0, 1});
  for (int x = 0; x < 8; ++x) {
    EXPECT_NEAR(a.values[x] + b.values[x], 1.0, 1e-14);
    EXPECT_GE(a.values[x], 0);
    EXPECT_LE(a.values[x], 1);
  }
}

TEST(Capacity, SeriesParallelSingle) {
  WeightedGraph one{2, {{0, 1, 0.7}}};
  EXPECT_NEAR(capacity(one, {0}, {1}), 0.7, 1e-15);
  double c1 = 0.3, c2 = 1.7, c3 = 2.2, c4 = 0.45;
  WeightedGraph series{3, {{0, 1, c1}, {1, 2, c2}}};
  EXPECT_NEAR(capacity(series, {0}, {2}), 1.0 / (1.0 / c1 + 1.0 / c2), 1e-12);
  WeightedGraph par{4, {{0, 1, c1}, {1, 3, c2}, {0, 2, c3}, {2, 3, c4}}};
  double expect = 1.0 / (1.0 / c1 + 1.0 / c2) + 1.0 / (1.0 / c3 + 1.0 / c4);
  EXPECT_NEAR(capacity(par, {0}, {3}), expect, 1e-12);
  // same on chains with c = pi R
  auto sc = from_conductances(3, {{0, 1, c1}, {1, 2, c2}});
  EXPECT_NEAR(capacity(sc, {0}, {2}), 1.0 / (1.0 / c1 + 1.0 / c2), 1e-12);
}

TEST(Capacity, EqualsDirichletEnergyAndIsSymmetric) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> U(0, 1);
  for (int rep = 0; rep < 40; ++rep) {
    auto c = oracle::random_reversible(g, 8);
    std::vector<int> A{0, 2}, B{5, 7};
    double cap = capacity(c, A, B);
    EXPECT_EQ(cap, capacity(c, B, A));
    auto h = equilibrium_potential(c, A, B);
    EXPECT_NEAR(cap, dirichlet_energy(c, h.values), 1e-12 * cap);
    // Dirichlet principle against random admissible g
    for (int k = 0; k < 100; ++k) {
      std::vector<double> gfun(8);
      for (auto& v : gfun) v = U(g);
      for (int x : A) gfun[x] = 1;
      for (int x : B) gfun[x] = 0;
      EXPECT_LE(cap, dirichlet_energy(c, gfun) * (1 + 1e-12));
    }
    // monotone under enlarging A
    EXPECT_LE(cap, capacity(c, {0, 2, 3}, B) * (1 + 1e-12));
  }
}

TEST(Capacity, SparseSymmetrizedOracle) {
  // Dirichlet energy of the solution of the pi-symmetrised grounded system via Eigen's LDLT.
  std::mt19937_64 g(10);
  for (int rep = 0; rep < 20; ++rep) {
    auto c = oracle::random_reversible(g, 12, 0.2);
    std::vector<int> A{0}, B{11};
    std::vector<int> D = all_but(12, {0, 11});
    std::vector<int> loc(12, -1);
    for (size_t k = 0; k < D.size(); ++k) loc[D[k]] = k;
    std::vector<Eigen::Triplet<double>> t;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(D.size());
    for (int x : D) {
      double diag = 0;
      for (auto [y, r] : c.out(x)) {
        double w = c.pi(x) * r;
        diag += w;
        if (loc[y] >= 0) t.emplace_back(loc[x], loc[y], -w);
        else if (y == 0) rhs(loc[x]) += w;
      }
      t.emplace_back(loc[x], loc[x], diag);
    }
    Eigen::SparseMatrix<double> M(D.size(), D.size());
    M.setFromTriplets(t.begin(), t.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(M);
    Eigen::VectorXd s = ldlt.solve(rhs);
    std::vector<double> h(12, 0);
    h[0] = 1;
    for (int x : D) h[x] = s(loc[x]);
    EXPECT_NEAR(capacity(c, A, B), dirichlet_energy(c, h), 1e-11 * capacity(c, A, B));
  }
}

TEST(Bridge, AgreementOnRandomAndStructuredPartitions) {
  std::mt19937_64 g(11);
  for (int rep = 0; rep < 40; ++rep) {
    auto c = oracle::random_reversible(g, 9);
    Partition two{{{0, 1}, {5}}};
    auto b2 = capacity_rate_bridge(c, two);
    EXPECT_TRUE(b2.agree) << b2.max_rel_dev;
    Partition three{{{0}, {3, 4}, {8}}};
    auto b3 = capacity_rate_bridge(c, three);
    EXPECT_TRUE(b3.agree) << b3.max_rel_dev;
    EXPECT_LE(b3.max_rel_dev, 1e-8);
  }
  // symmetric triangle of wells joined through a hub, and a partition where Delta holds most mass
  std::vector<RateEntry<double>> r;
  for (int k = 1; k <= 3; ++k) {
    r.push_back({0, k, 1.0});
    r.push_back({k, 0, 1.0});
  }
  auto tri = build_chain<double>(4, r);
  auto bt = capacity_rate_bridge(tri, Partition{{{1}, {2}, {3}}});
  EXPECT_TRUE(bt.agree);
  EXPECT_NEAR(bt.direct[0][1], 1.0 / 3.0, 1e-15);
  std::vector<RateEntry<double>> heavy{{0, 1, 1.0}, {1, 0, 1e-3}, {1, 2, 1e-3}, {2, 1, 1.0}};
  auto hc = build_chain<double>(3, heavy);
  EXPECT_GT(hc.pi(1), 0.99);
  EXPECT_TRUE(capacity_rate_bridge(hc, Partition{{{0}, {2}}}).agree);
}

TEST(Capacity, LongDoubleTinyCapacityKeepsRelativeAccuracy) {
  // Birth-death chain with a barrier far beyond double range: closed form for the capacity
  // of a path is (sum 1/c_e)^-1 with c_e = pi(x)R(x,x+1).
  using LD = long double;
  const int n = 60;
  std::vector<RateEntry<LD>> r;
  std::vector<LD> logpi(n);
  for (int i = 0; i < n; ++i) logpi[i] = -80.0L * std::min(i, n - 1 - i);
  for (int i = 0; i + 1 < n; ++i) {
    r.push_back({i, i + 1, std::exp((logpi[i + 1] - logpi[i]) / 2)});
    r.push_back({i + 1, i, std::exp((logpi[i] - logpi[i + 1]) / 2)});
  }
  auto c = build_chain<LD>(n, r);
  LD inv = 0;
  for (int i = 0; i + 1 < n; ++i) inv += 1 / (c.pi(i) * c.rate(i, i + 1));
  LD cap = capacity(c, {0}, {n - 1});
  EXPECT_GT(cap, 0.0L);
  EXPECT_LT(cap, 1e-1000L);
  EXPECT_NEAR(static_cast<double>(cap * inv), 1.0, 1e-15);
}
