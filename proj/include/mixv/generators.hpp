#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "mixv/equivalence.hpp"
#include "mixv/models.hpp"

namespace mixv {

/// Generation is a pure function of (parameters, seed): identical inputs
/// produce bit-identical output.
struct Seed {
  std::uint64_t value = 0;
};

/// Valid random mixture. Row and weight rationals are built over a common
/// denominator <= denominator_bound (so every parameter's reduced
/// denominator stays within the bound) and sum to 1 exactly.
Mixture random_mixture(std::size_t n, std::size_t k, const Alphabet& alphabet, Seed seed,
                       std::uint64_t denominator_bound);

/// A mixture with the same distribution as `m` but a different parameter
/// description: a random composition of component permutation, weight
/// splitting, zero-weight component appending and (for small Sigma^n) full
/// re-expression through point_mass_mixture.
Mixture equivalent_rewrite(const Mixture& m, Seed seed);

struct PerturbedPair {
  Mixture mixture;
  Verdict expected;        // ground truth from brute-force enumeration
  std::size_t component = 0;
  std::size_t coordinate = 0;
};

/// Shifts one marginal entry of a random component by +/- magnitude,
/// compensating within the same row so it still sums to 1. The returned
/// expected verdict comes from enumeration, not from assuming the edit
/// changed the distribution.
PerturbedPair perturbed_pair(const Mixture& m, Seed seed, const Rational& magnitude);

/// Valid random Ising model: each unordered pair is present independently
/// with probability pair_density, parameters uniform in the given ranges.
IsingModel random_ising(std::size_t n, double pair_density,
                        std::pair<double, double> weight_range,
                        std::pair<double, double> field_range, Seed seed);

}  // namespace mixv
