#include "mixv/equivalence.hpp"

#include <stdexcept>

#include "mixv/errors.hpp"
#include "mixv/linalg.hpp"

namespace mixv {

namespace {

void require_comparable(const Mixture& p, const Mixture& q) {
  require_valid(p);
  require_valid(q);
  if (p.alphabet != q.alphabet) {
    throw std::invalid_argument("mixtures are over different alphabets");
  }
  if (p.n != q.n) {
    throw std::invalid_argument("mixtures have different coordinate counts");
  }
}

// Coefficient vector of the depth-1 equation for symbol y:
// (w_1 Pr[X_1=y | P_1], ..., -v_1 Pr[X_1=y | Q_1], ...).
RationalVector first_coordinate_candidate(const Mixture& p, const Mixture& q, std::size_t y) {
  RationalVector c(p.k() + q.k());
  for (std::size_t i = 0; i < p.k(); ++i) {
    c[i] = p.weights[i] * p.components[i].table[0][y];
  }
  for (std::size_t i = 0; i < q.k(); ++i) {
    c[p.k() + i] = -(q.weights[i] * q.components[i].table[0][y]);
  }
  return c;
}

// Extends a depth-j basis vector by symbol y: coordinate i is multiplied by
// the component's coordinate-(j+1) parameter for y. Signs carry over from
// the parent, so the Q block stays negated.
RationalVector extended_candidate(const TaggedBasisVector& parent, const Mixture& p,
                                  const Mixture& q, std::size_t depth, std::size_t y) {
  RationalVector c(parent.coeffs.size());
  for (std::size_t i = 0; i < p.k(); ++i) {
    c[i] = parent.coeffs[i] * p.components[i].table[depth][y];
  }
  for (std::size_t i = 0; i < q.k(); ++i) {
    c[p.k() + i] = parent.coeffs[p.k() + i] * q.components[i].table[depth][y];
  }
  return c;
}

TaggedBasis select_basis(std::size_t depth, std::vector<RationalVector>&& candidates,
                         std::vector<Assignment>&& tags) {
  const auto chosen = independent_subset(candidates);
  TaggedBasis basis;
  basis.depth = depth;
  basis.vectors.reserve(chosen.size());
  for (const auto idx : chosen) {
    basis.vectors.push_back({std::move(candidates[idx]), std::move(tags[idx])});
  }
  return basis;
}

StepOutcome initial_basis_unchecked(const Mixture& p, const Mixture& q) {
  std::vector<RationalVector> candidates;
  std::vector<Assignment> tags;
  for (std::size_t y = 0; y < p.alphabet.size(); ++y) {
    RationalVector c = first_coordinate_candidate(p, q, y);
    if (!holds_at_ones(c)) {
      return Witness{1, {y}};
    }
    candidates.push_back(std::move(c));
    tags.push_back({y});
  }
  return select_basis(1, std::move(candidates), std::move(tags));
}

StepOutcome extend_basis_unchecked(const TaggedBasis& basis, const Mixture& p, const Mixture& q) {
  std::vector<RationalVector> candidates;
  std::vector<Assignment> tags;
  candidates.reserve(basis.vectors.size() * p.alphabet.size());
  for (const auto& parent : basis.vectors) {
    for (std::size_t y = 0; y < p.alphabet.size(); ++y) {
      RationalVector c = extended_candidate(parent, p, q, basis.depth, y);
      Assignment tag = parent.tag;
      tag.push_back(y);
      if (!holds_at_ones(c)) {
        return Witness{basis.depth + 1, std::move(tag)};
      }
      candidates.push_back(std::move(c));
      tags.push_back(std::move(tag));
    }
  }
  return select_basis(basis.depth + 1, std::move(candidates), std::move(tags));
}

void assert_basis_bound(const TaggedBasis& basis, const Mixture& p, const Mixture& q) {
  std::size_t bound = p.k() + q.k();
  // min with |Sigma|^j, guarding the power against overflow.
  if (const auto points = assignment_count(basis.depth, p.alphabet.size(), bound)) {
    bound = std::min(bound, *points);
  }
  if (basis.vectors.size() > bound) {
    throw std::logic_error("basis size exceeds min(k_P + k_Q, |Sigma|^j)");
  }
}

}  // namespace

StepOutcome initial_basis(const Mixture& p, const Mixture& q) {
  require_comparable(p, q);
  if (p.n == 0) throw std::invalid_argument("initial_basis requires n >= 1");
  return initial_basis_unchecked(p, q);
}

StepOutcome extend_basis(const TaggedBasis& basis, const Mixture& p, const Mixture& q) {
  require_comparable(p, q);
  if (basis.depth >= p.n) throw std::invalid_argument("extend_basis: basis already at depth n");
  return extend_basis_unchecked(basis, p, q);
}

Verdict check_equivalence(const Mixture& p, const Mixture& q, EquivalenceTrace* trace) {
  // Validation happens once here; the induction loop uses the unchecked
  // steps, keeping the per-coordinate cost independent of n.
  require_comparable(p, q);
  if (trace) trace->basis_sizes.clear();
  // A single point mass on both sides; nothing to compare.
  if (p.n == 0 || p.alphabet.size() == 1) return Verdict::Equal();

  StepOutcome outcome = initial_basis_unchecked(p, q);
  for (;;) {
    if (const auto* witness = std::get_if<Witness>(&outcome)) {
      return Verdict::NotEqual(*witness);
    }
    TaggedBasis& basis = std::get<TaggedBasis>(outcome);
    assert_basis_bound(basis, p, q);
    if (trace) trace->basis_sizes.push_back(basis.vectors.size());
    if (basis.depth == p.n) return Verdict::Equal();
    outcome = extend_basis_unchecked(basis, p, q);
  }
}

bool verify_witness(const Mixture& p, const Mixture& q, const Assignment& prefix) {
  require_comparable(p, q);
  if (prefix.empty() || prefix.size() > p.n) {
    throw std::invalid_argument("witness prefix length must be between 1 and n");
  }
  return mixture_prob(p, prefix) != mixture_prob(q, prefix);
}

Verdict brute_force_equivalence(const Mixture& p, const Mixture& q, std::size_t max_points) {
  require_comparable(p, q);
  if (p.n == 0) return Verdict::Equal();
  const auto count = assignment_count(p.n, p.alphabet.size(), max_points);
  if (!count) {
    throw guard_error("brute_force_equivalence: |Sigma|^n exceeds the enumeration guard");
  }
  for (std::size_t rank = 0; rank < *count; ++rank) {
    const Assignment point = unrank_assignment(rank, p.n, p.alphabet.size());
    if (mixture_prob(p, point) != mixture_prob(q, point)) {
      return Verdict::NotEqual({p.n, point});
    }
  }
  return Verdict::Equal();
}

}  // namespace mixv
