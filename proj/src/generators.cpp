#include "mixv/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixv {

namespace {

// SplitMix64. Hand-rolled so generation is bit-stable across standard
// libraries and platforms.
class Rng {
 public:
  explicit Rng(Seed seed) : state_(seed.value) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t state_;
};

// Exact composition of `denominator` into `parts` nonnegative cells via
// sorted uniform cut points; the cells sum to the denominator.
RationalVector random_composition(Rng& rng, std::size_t parts, std::uint64_t denominator) {
  std::vector<std::uint64_t> cuts(parts + 1);
  cuts.front() = 0;
  cuts.back() = denominator;
  for (std::size_t i = 1; i < parts; ++i) cuts[i] = rng.below(denominator + 1);
  std::sort(cuts.begin(), cuts.end());
  RationalVector cells(parts);
  for (std::size_t i = 0; i < parts; ++i) {
    cells[i] = Rational(cuts[i + 1] - cuts[i], denominator);
    cells[i].canonicalize();
  }
  return cells;
}

std::size_t rewrite_point_mass_limit() { return 128; }

void apply_permutation(Mixture& m, Rng& rng) {
  for (std::size_t i = m.k(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(m.weights[i - 1], m.weights[j]);
    std::swap(m.components[i - 1], m.components[j]);
  }
}

void apply_split(Mixture& m, Rng& rng) {
  const std::size_t i = rng.below(m.k());
  Rational alpha(1 + rng.below(7), 8);
  alpha.canonicalize();
  const Rational w = m.weights[i];
  m.weights[i] = alpha * w;
  m.weights.push_back((1 - alpha) * w);
  m.components.push_back(m.components[i]);
}

void apply_append_zero(Mixture& m, Rng& rng) {
  ProductDistribution comp;
  comp.table.reserve(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    comp.table.push_back(random_composition(rng, m.alphabet.size(), 6));
  }
  m.weights.push_back(0);
  m.components.push_back(std::move(comp));
}

void apply_point_mass(Mixture& m) {
  const auto count = assignment_count(m.n, m.alphabet.size(), rewrite_point_mass_limit());
  DenseDistribution dense;
  dense.alphabet = m.alphabet;
  dense.n = m.n;
  dense.probs.reserve(*count);
  for (std::size_t rank = 0; rank < *count; ++rank) {
    dense.probs.push_back(mixture_prob(m, unrank_assignment(rank, m.n, m.alphabet.size())));
  }
  m = point_mass_mixture(dense);
}

bool same_description(const Mixture& a, const Mixture& b) {
  if (a.k() != b.k() || a.weights != b.weights) return false;
  for (std::size_t i = 0; i < a.k(); ++i) {
    if (a.components[i].table != b.components[i].table) return false;
  }
  return true;
}

}  // namespace

Mixture random_mixture(std::size_t n, std::size_t k, const Alphabet& alphabet, Seed seed,
                       std::uint64_t denominator_bound) {
  if (n < 1 || k < 1) throw std::invalid_argument("random_mixture: n and k must be >= 1");
  if (denominator_bound < 2) {
    throw std::invalid_argument("random_mixture: denominator bound must be >= 2");
  }
  if (alphabet.size() == 0) throw std::invalid_argument("random_mixture: empty alphabet");

  Rng rng(seed);
  Mixture m;
  m.alphabet = alphabet;
  m.n = n;
  m.weights = random_composition(rng, k, denominator_bound);
  m.components.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    ProductDistribution comp;
    comp.table.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      comp.table.push_back(random_composition(rng, alphabet.size(), denominator_bound));
    }
    m.components.push_back(std::move(comp));
  }
  return m;
}

Mixture equivalent_rewrite(const Mixture& m, Seed seed) {
  require_valid(m);
  Rng rng(seed);
  Mixture out = m;
  const std::size_t ops = 1 + rng.below(3);
  for (std::size_t t = 0; t < ops; ++t) {
    const bool point_mass_ok =
        assignment_count(out.n, out.alphabet.size(), rewrite_point_mass_limit()).has_value() &&
        out.n >= 1;
    // perm : split : zero-append : point-mass re-expression, 3:3:2:1
    const std::uint64_t roll = rng.below(point_mass_ok ? 9 : 8);
    if (roll < 3) {
      apply_permutation(out, rng);
    } else if (roll < 6) {
      apply_split(out, rng);
    } else if (roll < 8) {
      apply_append_zero(out, rng);
    } else {
      apply_point_mass(out);
    }
  }
  // A rewrite must change the description, not just the distribution; a
  // permutation of identical components can be a no-op.
  if (same_description(m, out)) apply_split(out, rng);
  return out;
}

PerturbedPair perturbed_pair(const Mixture& m, Seed seed, const Rational& magnitude) {
  require_valid(m);
  if (magnitude < 0) throw std::invalid_argument("perturbed_pair: magnitude must be >= 0");
  Rng rng(seed);
  PerturbedPair result;
  result.mixture = m;

  if (magnitude > 0) {
    const std::size_t sigma = m.alphabet.size();
    if (sigma < 2) throw std::invalid_argument("perturbed_pair: needs |Sigma| >= 2");
    // Random starting point, then scan for a feasible (component, row, up
    // symbol, down symbol) edit.
    const std::size_t c0 = rng.below(m.k());
    const std::size_t r0 = rng.below(m.n);
    const std::size_t y0 = rng.below(sigma);
    bool applied = false;
    for (std::size_t dc = 0; dc < m.k() && !applied; ++dc) {
      const std::size_t c = (c0 + dc) % m.k();
      for (std::size_t dr = 0; dr < m.n && !applied; ++dr) {
        const std::size_t r = (r0 + dr) % m.n;
        for (std::size_t dup = 0; dup < sigma && !applied; ++dup) {
          const std::size_t up = (y0 + dup) % sigma;
          for (std::size_t ddn = 1; ddn < sigma && !applied; ++ddn) {
            const std::size_t down = (up + ddn) % sigma;
            auto& row = result.mixture.components[c].table[r];
            if (row[up] + magnitude <= 1 && row[down] - magnitude >= 0) {
              row[up] += magnitude;
              row[down] -= magnitude;
              result.component = c;
              result.coordinate = r;
              applied = true;
            }
          }
        }
      }
    }
    if (!applied) {
      throw std::invalid_argument(
          "perturbed_pair: no entry can absorb the requested magnitude");
    }
  }

  result.expected = brute_force_equivalence(m, result.mixture);
  return result;
}

IsingModel random_ising(std::size_t n, double pair_density,
                        std::pair<double, double> weight_range,
                        std::pair<double, double> field_range, Seed seed) {
  if (pair_density < 0.0 || pair_density > 1.0) {
    throw std::invalid_argument("random_ising: pair density must lie in [0,1]");
  }
  if (!(weight_range.first <= weight_range.second) ||
      !(field_range.first <= field_range.second)) {
    throw std::invalid_argument("random_ising: malformed parameter range");
  }
  Rng rng(seed);
  IsingModel model;
  model.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.unit() < pair_density) {
        model.pairs.push_back({i, j, rng.uniform(weight_range.first, weight_range.second)});
      }
    }
  }
  model.fields.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.fields.push_back(rng.uniform(field_range.first, field_range.second));
  }
  return model;
}

}  // namespace mixv
