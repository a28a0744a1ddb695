#pragma once

#include <cmath>
#include <vector>

#include "gladder/chain/chain.hpp"

namespace gladder {

template <class Real>
Real subset_mass(const BasicChain<Real>& c, const std::vector<int>& A) {
  Accumulator<Real> acc;
  for (int x : A) acc.add(c.pi(x));
  return acc.value();
}

template <class Real>
std::vector<char> membership(int n, const std::vector<int>& A) {
  std::vector<char> in(n, 0);
  for (int x : A) {
    if (x < 0 || x >= n) throw Error(ErrorCode::InvalidInput, "subset element out of range");
    in[x] = 1;
  }
  return in;
}

// D(A,h) = (1/(2 pi(A))) sum_{x,y in A} pi(x) R(x,y) (h(y)-h(x))^2; h indexed by state.
template <class Real>
Real dirichlet_form(const BasicChain<Real>& c, const std::vector<int>& A, const std::vector<Real>& h) {
  if (A.empty()) throw Error(ErrorCode::EmptySubset, "dirichlet_form on an empty subset");
  auto in = membership<Real>(c.size(), A);
  Accumulator<Real> acc;
  for (int x : A)
    for (auto [y, r] : c.out(x))
      if (in[y]) {
        Real d = h[y] - h[x];
        acc.add(c.pi(x) * r * d * d);
      }
  return acc.value() / (2 * subset_mass(c, A));
}

// Level-two rate functional of a reversible chain, via the edge form
// sum over unordered pairs (sqrt(mu(x)R(x,y)) - sqrt(mu(y)R(y,x)))^2.
template <class Real>
Real rate_functional(const BasicChain<Real>& c, const BasicMeasure<Real>& mu) {
  if (!c.reversible()) throw Error(ErrorCode::NotReversible, "rate_functional needs a reversible chain");
  if (static_cast<int>(mu.size()) != c.size())
    throw Error(ErrorCode::InvalidInput, "measure size does not match the chain");
  Accumulator<Real> acc;
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) {
      if (y < x) continue;
      if (mu[x] == 0 && mu[y] == 0) continue;
      Real d = std::sqrt(mu[x] * r) - std::sqrt(mu[y] * c.rate(y, x));
      acc.add(d * d);
    }
  return acc.value();
}

// -sum_x mu(x) (L u)(x) / u(x).
template <class Real>
Real variational_value(const BasicChain<Real>& c, const BasicMeasure<Real>& mu, const std::vector<Real>& u) {
  for (Real v : u)
    if (!(v > 0)) throw Error(ErrorCode::NonPositiveTestFunction, "test function must be positive");
  Accumulator<Real> acc;
  for (int x = 0; x < c.size(); ++x) {
    if (mu[x] == 0) continue;
    for (auto [y, r] : c.out(x)) acc.add(mu[x] * r * (1 - u[y] / u[x]));
  }
  return acc.value();
}

}  // namespace gladder
