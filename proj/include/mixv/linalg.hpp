#pragma once

#include <cstddef>
#include <vector>

#include "mixv/rational.hpp"

namespace mixv {

/// Indices of a maximal linearly independent subset of `vectors`, greedy in
/// input order: a vector is kept iff it is outside the span of the vectors
/// kept before it. Pivots are chosen first-seen, columns scanned left to
/// right, so the selection is deterministic. All vectors must share one
/// dimension d >= 1; the empty list yields an empty selection.
std::vector<std::size_t> independent_subset(const std::vector<RationalVector>& vectors);

/// True iff the entries of `v` sum to zero exactly. This is the test that the
/// linear equation with coefficient vector `v` holds at the all-ones point.
bool holds_at_ones(const RationalVector& v);

}  // namespace mixv
