#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mixv/rational.hpp"

namespace mixv {

/// Ordered alphabet of distinct symbols. The order fixes serialization and
/// iteration order everywhere else.
struct Alphabet {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
  std::optional<std::size_t> index_of(const std::string& symbol) const;

  bool operator==(const Alphabet&) const = default;
};

/// A prefix assignment x in Sigma^j, stored as symbol indices.
using Assignment = std::vector<std::size_t>;

/// Product distribution over n coordinates: table[i][y] = Pr[X_i = y].
struct ProductDistribution {
  std::vector<RationalVector> table;

  std::size_t n() const { return table.size(); }
};

/// Convex mixture of product distributions over a common alphabet.
/// P(x) = sum_i weights[i] * components[i](x).
struct Mixture {
  Alphabet alphabet;
  std::size_t n = 0;
  std::vector<Rational> weights;
  std::vector<ProductDistribution> components;

  std::size_t k() const { return weights.size(); }
};

/// Prob of the length-j prefix `x` under a product distribution:
/// product of table[i][x_i] for i < j. Requires 1 <= j <= n and in-range
/// symbol indices.
Rational product_prefix_prob(const ProductDistribution& component, const Assignment& prefix);

/// Prefix-marginal probability under a mixture: sum of
/// weight_i * product_prefix_prob(component_i, x).
Rational mixture_prob(const Mixture& mixture, const Assignment& prefix);

/// Every violated invariant, as human-readable messages; empty means valid.
std::vector<std::string> validate_mixture(const Mixture& mixture);

/// Throws std::invalid_argument listing all violations unless valid.
void require_valid(const Mixture& mixture);

/// Explicit distribution over Sigma^n. probs is indexed by the mixed-radix
/// rank of the assignment, coordinate 0 most significant.
struct DenseDistribution {
  Alphabet alphabet;
  std::size_t n = 0;
  std::vector<Rational> probs;
};

/// Mixture with one deterministic product component per point of Sigma^n,
/// weighted by the point's probability. Reproduces the input exactly:
/// mixture_prob(out, x) == probs[rank(x)] for every x. Guarded to
/// |Sigma|^n <= 2^20.
Mixture point_mass_mixture(const DenseDistribution& dist);

/// rank <-> assignment helpers for enumeration over Sigma^n.
Assignment unrank_assignment(std::size_t rank, std::size_t n, std::size_t sigma);

/// |Sigma|^n if it does not exceed `limit`, std::nullopt otherwise.
std::optional<std::size_t> assignment_count(std::size_t n, std::size_t sigma, std::size_t limit);

struct IsingPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 0.0;
};

/// Ising model over spins x in {-1,+1}^n:
/// P(x) proportional to exp(sum_{i<j} w_{ij} x_i x_j + sum_i h_i x_i).
/// Pairs are sparse; an absent pair has weight 0.
struct IsingModel {
  std::size_t n = 0;
  std::vector<IsingPair> pairs;
  std::vector<double> fields;

  double max_abs_pair_weight() const;  // W
  double max_abs_field() const;        // H
};

std::vector<std::string> validate_ising(const IsingModel& model);
void require_valid(const IsingModel& model);

}  // namespace mixv
