#pragma once

#include <algorithm>
#include <map>
#include <string>

#include <json.hpp>

#include "gladder/chain/chain.hpp"

namespace gladder {

namespace detail {
inline std::string state_key(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::InvalidInput, "state identifiers must be strings or integers");
}
}  // namespace detail

// {"states":[...], "rates":[[x,y,value],...]}
template <class Real>
nlohmann::json chain_to_json(const BasicChain<Real>& c) {
  nlohmann::json j;
  j["states"] = c.states();
  auto rates = nlohmann::json::array();
  for (int x = 0; x < c.size(); ++x)
    for (auto [y, r] : c.out(x)) rates.push_back({c.label(x), c.label(y), static_cast<double>(r)});
  j["rates"] = rates;
  return j;
}

template <class Real>
BasicChain<Real> chain_from_json(const nlohmann::json& j) {
  if (!j.contains("states") || !j.contains("rates"))
    throw Error(ErrorCode::InvalidInput, "chain JSON needs 'states' and 'rates'");
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  for (auto& s : j.at("states")) {
    std::string k = detail::state_key(s);
    if (index.count(k)) throw Error(ErrorCode::InvalidInput, "duplicate state " + k);
    index[k] = static_cast<int>(labels.size());
    labels.push_back(k);
  }
  std::vector<RateEntry<Real>> rates;
  for (auto& e : j.at("rates")) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::InvalidInput, "rate entries are [x,y,value]");
    auto fx = index.find(detail::state_key(e[0])), fy = index.find(detail::state_key(e[1]));
    if (fx == index.end() || fy == index.end()) throw Error(ErrorCode::InvalidInput, "rate refers to an unknown state");
    rates.push_back({fx->second, fy->second, static_cast<Real>(e[2].template get<double>())});
  }
  return build_chain<Real>(std::move(labels), rates);
}

template <class Real>
nlohmann::json measure_to_json(const BasicMeasure<Real>& m, const std::vector<std::string>& labels) {
  nlohmann::json w = nlohmann::json::object();
  for (std::size_t i = 0; i < m.size(); ++i) w[labels[i]] = static_cast<double>(m[i]);
  return {{"weights", w}};
}

template <class Real>
BasicMeasure<Real> measure_from_json(const nlohmann::json& j, const std::vector<std::string>& labels) {
  std::vector<Real> w(labels.size(), 0);
  for (auto& [k, v] : j.at("weights").items()) {
    auto it = std::find(labels.begin(), labels.end(), k);
    if (it == labels.end()) throw Error(ErrorCode::InvalidInput, "measure support outside the state set: " + k);
    w[it - labels.begin()] = static_cast<Real>(v.template get<double>());
  }
  BasicMeasure<Real> m(std::move(w));
  if (!m.valid()) throw Error(ErrorCode::InvalidInput, "weights must be nonnegative and sum to 1");
  return m;
}

}  // namespace gladder
