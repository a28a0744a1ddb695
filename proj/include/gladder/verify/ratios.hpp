#pragma once

#include <string>
#include <vector>

#include "gladder/chain/poincare.hpp"
#include "gladder/verify/h1.hpp"

namespace gladder {

struct RatioTolerances {
  double level = 1e-2;  // pi(V^{1,i}) / pi(V^{p,j}) against m_{p,j}(i) at the largest n
  double top = 1e-2;    // pi(V^{1,i}) / pi(V^(1)) against the top-level measure
  double mass = 1e-2;   // pi(V^(p)) against 1
};

// Tables, in this order:
//   ratio_p<p>_<j>_<i>  pi(V^{1,i}) / pi(V^{p,j}) -> m_{p,j}(i) for i in the valley S_{p,j}
//   ratio_top_<i>       pi(V^{1,i}) / pi(V^(1))   -> the top-level product measure at i
//   mass_p<p>           pi(V^(p))                 -> 1
// (i is 1-based in S_1, j 1-based in S_p.)
inline std::vector<ConvergenceTable> check_measure_ratios(const Landscape& L, const std::vector<int>& ns,
                                                          RatioTolerances tol = {}, int threads = 1) {
  check_grid(ns);
  const auto& W = L.W();
  const auto& lad = L.L();
  auto masses = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
    auto chain = gibbs_chain<long double>(L.F, ns[k]);
    auto sets = well_sets(L.F, W, ns[k]);
    std::vector<long double> m;
    for (auto& s : sets) m.push_back(subset_mass(chain, s));
    return m;
  });
  auto sum_over = [&](std::size_t k, const std::vector<int>& idx) {
    Accumulator<long double> acc;
    for (int i : idx) acc.add(masses[k][i]);
    return acc.value();
  };
  std::vector<ConvergenceTable> out;
  auto finish = [&](ConvergenceTable& t) {
    if (t.rows.size() >= 3) extrapolate(t);
    t.evaluate();
    out.push_back(std::move(t));
  };
  for (int p = 1; p <= W.q(); ++p) {
    const auto& J = W.valley_indices(p);
    const auto& lv = lad.level(p);
    for (std::size_t j = 0; j < J.size(); ++j) {
      // the level-p valley of state j is the single well J[j] on the lattice
      for (int i : lv.valleys[j]) {
        ConvergenceTable t;
        t.claim = "ratio_p" + std::to_string(p) + "_" + std::to_string(j + 1) + "_" + std::to_string(i + 1);
        t.tolerance = tol.level;
        for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], masses[k][i] / masses[k][J[j]], lv.product[j][i]);
        finish(t);
      }
    }
  }
  const auto& all = W.valley_indices(1);
  for (int i = 0; i < W.size(); ++i) {
    ConvergenceTable t;
    t.claim = "ratio_top_" + std::to_string(i + 1);
    t.tolerance = tol.top;
    for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], masses[k][i] / sum_over(k, all), lad.top_product[i]);
    finish(t);
  }
  for (int p = 1; p <= W.q(); ++p) {
    ConvergenceTable t;
    t.claim = "mass_p" + std::to_string(p);
    t.tolerance = tol.mass;
    for (std::size_t k = 0; k < ns.size(); ++k) t.add(ns[k], sum_over(k, W.valley_indices(p)), 1);
    finish(t);
  }
  return out;
}

// (H5): beta_n = max over level-1 valleys of the path bound, tabulated as beta_n / theta^(1)_n,
// and the exact constant (on wells of at most exact_cap states) the same way.
struct H5Check {
  ConvergenceTable bound;  // h5_bound
  ConvergenceTable exact;  // h5_exact
  bool exact_below_bound = true;
};

inline H5Check check_h5_separation(const Landscape& L, const std::vector<int>& ns, double tol = 1e-2,
                                   int exact_cap = 2000, int threads = 1) {
  check_grid(ns);
  const auto& W = L.W();
  struct Row {
    long double bound = 0, exact = 0;
    bool below = true;
  };
  auto rows = parallel_rows(static_cast<int>(ns.size()), threads, [&](int k) {
    auto chain = gibbs_chain<long double>(L.F, ns[k]);
    auto sets = well_sets(L.F, W, ns[k]);
    Row r;
    for (int i : W.valley_indices(1)) {
      long double b = poincare_path_bound(chain, sets[i]);
      r.bound = std::max(r.bound, b);
      if (static_cast<int>(sets[i].size()) <= exact_cap) {
        long double e = exact_h5_constant(chain, sets[i], exact_cap).full;
        r.exact = std::max(r.exact, e);
        r.below = r.below && e <= b;
      }
    }
    return r;
  });
  H5Check h;
  h.bound.claim = "h5_bound";
  h.exact.claim = "h5_exact";
  for (auto* t : {&h.bound, &h.exact}) {
    t->tolerance = tol;
    t->decreasing = true;
  }
  for (std::size_t k = 0; k < ns.size(); ++k) {
    long double th = time_scale(L, 1, ns[k]);
    h.bound.add(ns[k], rows[k].bound / th, 0);
    h.exact.add(ns[k], rows[k].exact / th, 0);
    h.exact_below_bound = h.exact_below_bound && rows[k].below;
  }
  for (auto* t : {&h.bound, &h.exact}) {
    if (t->rows.size() >= 3) extrapolate(*t);
    t->evaluate();
  }
  h.bound.verdict = h.bound.verdict && h.exact_below_bound;
  if (!h.exact_below_bound) h.bound.note = "exact constant exceeds the path bound";
  return h;
}

}  // namespace gladder
