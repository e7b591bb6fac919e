#pragma once

#include <string>
#include <vector>

#include "mixv/models.hpp"
#include "mixv/rational.hpp"

namespace mixv::testing {

inline RationalVector rvec(const std::vector<std::string>& entries) {
  RationalVector v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(parse_rational(e));
  return v;
}

inline Mixture make_mixture(const std::vector<std::string>& weights,
                            const std::vector<std::vector<std::vector<std::string>>>& tables,
                            const std::vector<std::string>& alphabet = {"0", "1"}) {
  Mixture m;
  m.alphabet.symbols = alphabet;
  m.n = tables.empty() ? 0 : tables.front().size();
  for (const auto& w : weights) m.weights.push_back(parse_rational(w));
  for (const auto& table : tables) {
    ProductDistribution comp;
    for (const auto& row : table) comp.table.push_back(rvec(row));
    m.components.push_back(std::move(comp));
  }
  return m;
}

// Single-component mixture of one Bernoulli row: Pr["1"] = p.
inline Mixture bernoulli(const std::string& p) {
  const Rational prob = parse_rational(p);
  const Rational rest = 1 - prob;
  return make_mixture({"1"}, {{{rational_str(rest), rational_str(prob)}}});
}

inline IsingModel make_ising(std::size_t n,
                             const std::vector<std::tuple<std::size_t, std::size_t, double>>& pairs,
                             const std::vector<double>& fields) {
  IsingModel m;
  m.n = n;
  for (const auto& [i, j, w] : pairs) m.pairs.push_back({i, j, w});
  m.fields = fields;
  return m;
}

}  // namespace mixv::testing
