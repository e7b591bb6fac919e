#include "mixv/linalg.hpp"

#include <stdexcept>

namespace mixv {

namespace {

struct PivotRow {
  std::size_t col = 0;
  RationalVector row;
};

// Reduces `v` in place against the echelon rows accumulated so far. Each
// stored row has zeros at all earlier pivot columns, so one left-to-right
// sweep suffices.
void reduce(RationalVector& v, const std::vector<PivotRow>& pivots) {
  for (const auto& p : pivots) {
    if (sgn(v[p.col]) == 0) continue;
    const Rational factor = v[p.col] / p.row[p.col];
    for (std::size_t c = p.col; c < v.size(); ++c) {
      if (sgn(p.row[c]) != 0) v[c] -= factor * p.row[c];
    }
  }
}

}  // namespace

std::vector<std::size_t> independent_subset(const std::vector<RationalVector>& vectors) {
  std::vector<std::size_t> selected;
  if (vectors.empty()) return selected;

  const std::size_t dim = vectors.front().size();
  if (dim == 0) {
    throw std::invalid_argument("independent_subset: vectors must have dimension >= 1");
  }
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw std::invalid_argument("independent_subset: mixed vector dimensions");
    }
  }

  std::vector<PivotRow> pivots;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    RationalVector r = vectors[idx];
    reduce(r, pivots);
    std::size_t col = 0;
    while (col < dim && sgn(r[col]) == 0) ++col;
    if (col == dim) continue;  // in the span of earlier selections
    selected.push_back(idx);
    pivots.push_back({col, std::move(r)});
    if (pivots.size() == dim) {
      // Full rank reached; everything after this is dependent.
      break;
    }
  }
  return selected;
}

bool holds_at_ones(const RationalVector& v) {
  Rational sum = 0;
  for (const auto& entry : v) sum += entry;
  return sgn(sum) == 0;
}

}  // namespace mixv
