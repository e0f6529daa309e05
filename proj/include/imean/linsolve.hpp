#pragma once

// Exact linear algebra over the rationals: row reduction and vertex
// enumeration of {x ≥ 0 : Ax = b}.

#include <cstddef>
#include <optional>

#include "imean/rational.hpp"

namespace imean {

struct RowEchelon {
  RationalMatrix rows;  // reduced, zero rows dropped, augmented column last
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

RowEchelon row_reduce(RationalMatrix augmented);
std::size_t rank(RationalMatrix m);

// Unique solution of a square system, or nothing when singular.
std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b);

struct VertexSet {
  bool feasible = false;
  std::vector<RationalVector> vertices;  // lexicographically sorted
  bool truncated = false;
  // Dimension of the affine hull of the vertices (of the polytope when
  // bounded and not truncated).
  std::size_t dimension = 0;
};

// Basic feasible solutions of {x ≥ 0 : Ax = b}, at most `cap` of them.
VertexSet enumerate_vertices(const RationalMatrix& a, const RationalVector& b, std::size_t cap);

}  // namespace imean
