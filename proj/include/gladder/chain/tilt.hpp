#pragma once

#include <cmath>
#include <vector>

#include "gladder/chain/chain.hpp"

namespace gladder {

// R'(x,y) = R(x,y) u(y)/u(x). A reversible input stays reversible with measure ~ u^2 pi.
template <class Real>
BasicChain<Real> tilt_generator(const BasicChain<Real>& c, const std::vector<Real>& u) {
  if (static_cast<int>(u.size()) != c.size()) throw Error(ErrorCode::InvalidInput, "size mismatch");
  for (Real v : u)
    if (!(v > 0)) throw Error(ErrorCode::NonPositiveTestFunction, "tilt needs a positive function");
  Adjacency<Real> out(c.size());
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) out[x].push_back({y, r * u[y] / u[x]});
  if (c.reversible()) {
    std::vector<Real> logpi(c.size());
    for (int x = 0; x < c.size(); ++x) logpi[x] = std::log(c.pi(x)) + 2 * std::log(u[x]);
    bool zero = false;
    for (int x = 0; x < c.size(); ++x) zero = zero || !(c.pi(x) > 0);
    if (!zero) return build_reversible_chain(c.states(), std::move(out), logpi);
  }
  std::vector<RateEntry<Real>> rates;
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : out[x]) rates.push_back({x, y, r});
  return build_chain<Real>(c.states(), rates);
}

}  // namespace gladder
