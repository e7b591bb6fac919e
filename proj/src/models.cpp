#include "mixv/models.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mixv/errors.hpp"

namespace mixv {

namespace {

constexpr std::size_t kPointMassLimit = std::size_t{1} << 20;

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << "; ";
    out << parts[i];
  }
  return out.str();
}

}  // namespace

std::optional<std::size_t> Alphabet::index_of(const std::string& symbol) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == symbol) return i;
  }
  return std::nullopt;
}

Rational product_prefix_prob(const ProductDistribution& component, const Assignment& prefix) {
  if (prefix.empty() || prefix.size() > component.n()) {
    throw std::invalid_argument("prefix length must be between 1 and n");
  }
  Rational prob = 1;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] >= component.table[i].size()) {
      throw std::invalid_argument("prefix symbol out of alphabet range");
    }
    prob *= component.table[i][prefix[i]];
  }
  return prob;
}

Rational mixture_prob(const Mixture& mixture, const Assignment& prefix) {
  Rational prob = 0;
  for (std::size_t i = 0; i < mixture.k(); ++i) {
    prob += mixture.weights[i] * product_prefix_prob(mixture.components[i], prefix);
  }
  return prob;
}

std::vector<std::string> validate_mixture(const Mixture& mixture) {
  std::vector<std::string> violations;
  if (mixture.alphabet.size() == 0) {
    violations.push_back("alphabet is empty");
  }
  {
    std::set<std::string> seen;
    for (const auto& s : mixture.alphabet.symbols) {
      if (!seen.insert(s).second) violations.push_back("duplicate alphabet symbol '" + s + "'");
    }
  }
  if (mixture.weights.size() != mixture.components.size()) {
    violations.push_back("weight count differs from component count");
    return violations;  // shapes disagree; later checks would misreport
  }

  Rational weight_sum = 0;
  for (std::size_t i = 0; i < mixture.weights.size(); ++i) {
    const auto& w = mixture.weights[i];
    if (w < 0 || w > 1) {
      violations.push_back("weight " + std::to_string(i) + " = " + rational_str(w) +
                           " outside [0,1]");
    }
    weight_sum += w;
  }
  if (!mixture.weights.empty() && weight_sum != 1) {
    violations.push_back("weights sum to " + rational_str(weight_sum));
  }
  if (mixture.weights.empty()) {
    violations.push_back("mixture has no components");
  }

  for (std::size_t c = 0; c < mixture.components.size(); ++c) {
    const auto& comp = mixture.components[c];
    if (comp.n() != mixture.n) {
      violations.push_back("component " + std::to_string(c) + " has " +
                           std::to_string(comp.n()) + " rows, expected " +
                           std::to_string(mixture.n));
      continue;
    }
    for (std::size_t r = 0; r < comp.table.size(); ++r) {
      const auto& row = comp.table[r];
      if (row.size() != mixture.alphabet.size()) {
        violations.push_back("component " + std::to_string(c) + " row " + std::to_string(r) +
                             " has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(mixture.alphabet.size()));
        continue;
      }
      Rational row_sum = 0;
      bool in_range = true;
      for (const auto& entry : row) {
        if (entry < 0 || entry > 1) in_range = false;
        row_sum += entry;
      }
      if (!in_range) {
        violations.push_back("component " + std::to_string(c) + " row " + std::to_string(r) +
                             " has an entry outside [0,1]");
      }
      if (row_sum != 1) {
        violations.push_back("component " + std::to_string(c) + " row " + std::to_string(r) +
                             " sums to " + rational_str(row_sum));
      }
    }
  }
  return violations;
}

void require_valid(const Mixture& mixture) {
  const auto violations = validate_mixture(mixture);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid mixture: " + join(violations));
  }
}

Assignment unrank_assignment(std::size_t rank, std::size_t n, std::size_t sigma) {
  Assignment a(n);
  for (std::size_t i = n; i-- > 0;) {
    a[i] = rank % sigma;
    rank /= sigma;
  }
  return a;
}

std::optional<std::size_t> assignment_count(std::size_t n, std::size_t sigma, std::size_t limit) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > limit / sigma) return std::nullopt;
    count *= sigma;
    if (count > limit) return std::nullopt;
  }
  return count;
}

Mixture point_mass_mixture(const DenseDistribution& dist) {
  const std::size_t sigma = dist.alphabet.size();
  if (sigma == 0) throw std::invalid_argument("point_mass_mixture: empty alphabet");
  const auto count = assignment_count(dist.n, sigma, kPointMassLimit);
  if (!count) {
    throw guard_error("point_mass_mixture: |Sigma|^n exceeds the 2^20 enumeration guard");
  }
  if (dist.probs.size() != *count) {
    throw std::invalid_argument("point_mass_mixture: table size does not match |Sigma|^n");
  }
  Rational total = 0;
  for (const auto& p : dist.probs) {
    if (p < 0) throw std::invalid_argument("point_mass_mixture: negative probability");
    total += p;
  }
  if (total != 1) {
    throw std::invalid_argument("point_mass_mixture: table sums to " + rational_str(total));
  }

  Mixture out;
  out.alphabet = dist.alphabet;
  out.n = dist.n;
  out.weights.reserve(*count);
  out.components.reserve(*count);
  for (std::size_t rank = 0; rank < *count; ++rank) {
    const Assignment point = unrank_assignment(rank, dist.n, sigma);
    ProductDistribution comp;
    comp.table.assign(dist.n, RationalVector(sigma, Rational(0)));
    for (std::size_t i = 0; i < dist.n; ++i) comp.table[i][point[i]] = 1;
    out.weights.push_back(dist.probs[rank]);
    out.components.push_back(std::move(comp));
  }
  return out;
}

double IsingModel::max_abs_pair_weight() const {
  double w = 0.0;
  for (const auto& p : pairs) w = std::max(w, std::abs(p.w));
  return w;
}

double IsingModel::max_abs_field() const {
  double h = 0.0;
  for (const auto& f : fields) h = std::max(h, std::abs(f));
  return h;
}

std::vector<std::string> validate_ising(const IsingModel& model) {
  std::vector<std::string> violations;
  if (model.fields.size() != model.n) {
    violations.push_back("field count " + std::to_string(model.fields.size()) +
                         " differs from n = " + std::to_string(model.n));
  }
  for (const auto& f : model.fields) {
    if (!std::isfinite(f)) violations.push_back("non-finite field value");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& p : model.pairs) {
    if (p.i >= p.j) {
      violations.push_back("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                           ") must satisfy i < j");
      continue;
    }
    if (p.j >= model.n) {
      violations.push_back("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                           ") out of range");
      continue;
    }
    if (!seen.insert({p.i, p.j}).second) {
      violations.push_back("duplicate pair (" + std::to_string(p.i) + "," +
                           std::to_string(p.j) + ")");
    }
    if (!std::isfinite(p.w)) violations.push_back("non-finite pair weight");
  }
  return violations;
}

void require_valid(const IsingModel& model) {
  const auto violations = validate_ising(model);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid ising model: " + join(violations));
  }
}

}  // namespace mixv
