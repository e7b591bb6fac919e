#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mixv/models.hpp"
#include "mixv/rational.hpp"

namespace mixv {

/// A basis vector together with the prefix assignment that generated it.
/// coeffs[i] = w_i * P_i^{<=j}(tag) for i < k_P, and
/// coeffs[k_P + i] = -v_i * Q_i^{<=j}(tag); both reconstructible from tag.
struct TaggedBasisVector {
  RationalVector coeffs;
  Assignment tag;
};

/// Linearly independent coefficient vectors collected at depth j.
struct TaggedBasis {
  std::size_t depth = 0;
  std::vector<TaggedBasisVector> vectors;
};

/// Prefix assignment witnessing P^{<=depth}(prefix) != Q^{<=depth}(prefix).
struct Witness {
  std::size_t depth = 0;
  Assignment prefix;
};

struct Verdict {
  bool equal = true;
  std::optional<Witness> witness;

  static Verdict Equal() { return {true, std::nullopt}; }
  static Verdict NotEqual(Witness w) { return {false, std::move(w)}; }
};

/// Either a counterexample (the induction halts) or the basis for the next
/// depth.
using StepOutcome = std::variant<Witness, TaggedBasis>;

/// Depth-1 step: screens the |Sigma| first-coordinate candidate vectors and,
/// if all of them sum to zero, returns their maximal independent subset as
/// B_1 (each tagged with its symbol).
StepOutcome initial_basis(const Mixture& p, const Mixture& q);

/// Induction step j -> j+1: extends every basis vector by every symbol
/// (elementwise product with the coordinate-(j+1) parameters), screens the
/// |B_j|*|Sigma| candidates, and returns their independent subset as B_{j+1}.
StepOutcome extend_basis(const TaggedBasis& basis, const Mixture& p, const Mixture& q);

/// Per-run diagnostics, filled when a trace is passed to check_equivalence.
struct EquivalenceTrace {
  std::vector<std::size_t> basis_sizes;  // |B_j| for j = 1..depth reached
};

/// Decides whether the two mixtures are equal as distributions on Sigma^n.
/// On inequality the verdict carries a prefix witness found at the
/// shallowest failing depth. The basis size bound
/// |B_j| <= min(k_P + k_Q, |Sigma|^j) is asserted after every step.
Verdict check_equivalence(const Mixture& p, const Mixture& q, EquivalenceTrace* trace = nullptr);

/// True iff mixture_prob(p, prefix) != mixture_prob(q, prefix) exactly.
bool verify_witness(const Mixture& p, const Mixture& q, const Assignment& prefix);

/// Enumeration oracle: compares the mixtures point by point on Sigma^n.
/// Guarded to |Sigma|^n <= max_points. A NotEqual verdict carries the first
/// differing full-length assignment in lexicographic order.
Verdict brute_force_equivalence(const Mixture& p, const Mixture& q,
                                std::size_t max_points = std::size_t{1} << 16);

}  // namespace mixv
