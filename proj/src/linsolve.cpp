#include "imean/linsolve.hpp"

#include <algorithm>
#include <set>

#include "imean/error.hpp"

namespace imean {

RowEchelon row_reduce(RationalMatrix m) {
  RowEchelon out;
  if (m.empty()) return out;
  const std::size_t cols = m.front().size();
  const std::size_t vars = cols - 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < vars && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational lead = m[row][col];
    for (auto& v : m[row]) v /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m.size(); ++r) {
    if (m[r][vars] != 0) out.consistent = false;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(RationalMatrix m) {
  for (auto& r : m) r.emplace_back(0);
  return row_reduce(std::move(m)).pivots.size();
}

std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto ech = row_reduce(std::move(a));
  if (ech.pivots.size() != n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[ech.pivots[i]] = ech.rows[i][n];
  return x;
}

VertexSet enumerate_vertices(const RationalMatrix& a, const RationalVector& b, std::size_t cap) {
  if (a.size() != b.size()) fail(Errc::ShapeMismatch, "constraint rows and right-hand side differ");
  VertexSet out;
  if (a.empty()) return out;
  const std::size_t n = a.front().size();
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const RowEchelon ech = row_reduce(std::move(aug));
  if (!ech.consistent) return out;
  const std::size_t r = ech.pivots.size();

  std::set<RationalVector> found;
  // Choose r basic columns; non-basic variables are zero.
  std::vector<std::size_t> basis(r);
  auto visit = [&](auto&& self, std::size_t start, std::size_t depth) -> bool {
    if (depth == r) {
      RationalMatrix sq(r, RationalVector(r));
      RationalVector rhs(r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) sq[i][j] = ech.rows[i][basis[j]];
        rhs[i] = ech.rows[i][n];
      }
      auto xb = solve_square(std::move(sq), std::move(rhs));
      if (!xb) return true;
      if (std::any_of(xb->begin(), xb->end(), [](const Rational& v) { return v < 0; })) return true;
      RationalVector x(n, Rational(0));
      for (std::size_t j = 0; j < r; ++j) x[basis[j]] = (*xb)[j];
      found.insert(std::move(x));
      if (found.size() >= cap) {
        out.truncated = true;
        return false;
      }
      return true;
    }
    for (std::size_t c = start; c + (r - depth) <= n; ++c) {
      basis[depth] = c;
      if (!self(self, c + 1, depth + 1)) return false;
    }
    return true;
  };
  if (r == 0) {
    // Ax = b is 0 = 0: the whole orthant, whose only vertex is the origin.
    found.insert(RationalVector(n, Rational(0)));
  } else {
    visit(visit, 0, 0);
  }
  out.vertices.assign(found.begin(), found.end());
  out.feasible = !out.vertices.empty();
  if (out.truncated) {
    out.dimension = n - r;
  } else if (out.vertices.size() > 1) {
    RationalMatrix diffs;
    for (std::size_t i = 1; i < out.vertices.size(); ++i) {
      RationalVector d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = out.vertices[i][j] - out.vertices[0][j];
      diffs.push_back(std::move(d));
    }
    out.dimension = rank(std::move(diffs));
  }
  return out;
}

}  // namespace imean
