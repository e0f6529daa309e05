#include "imean/rook.hpp"

#include <functional>

namespace imean {

bool validate(const RookMatrix<PartialBijection>& a, const FiniteBIM& base) {
  for (const auto& [cell, e] : a.entries()) {
    if (!base.contains(e)) {
      fail(Errc::BaseMismatch, "entry (" + std::to_string(cell.first) + "," +
                                   std::to_string(cell.second) + ") = " + to_string(e) +
                                   " is not in the base monoid");
    }
  }
  return validate(a);
}

namespace {

using PMatrix = RookMatrix<PartialBijection>;

// Fills cells row-major; domains are tracked per column and ranges per row.
// `choices(i, j)` lists the admissible entries (zero included) for cell (i, j)
// and `accept` decides whether a completed assignment is kept; returning false
// from `accept` stops the search.
void backtrack(std::size_t rows, std::size_t cols, GroundSet ground,
               const std::function<const std::vector<PartialBijection>&(std::size_t, std::size_t)>& choices,
               const std::function<bool(std::size_t, Mask)>& row_done,
               const std::function<bool(std::size_t, Mask)>& col_done,
               const std::function<bool(const std::vector<PartialBijection>&)>& accept) {
  std::vector<Mask> col_used(cols, 0);
  std::vector<Mask> row_used(rows, 0);
  std::vector<PartialBijection> cells(rows * cols, PartialBijection::zero(ground));
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (stop) return;
    if (k == rows * cols) {
      if (!accept(cells)) stop = true;
      return;
    }
    const std::size_t i = k / cols;
    const std::size_t j = k % cols;
    for (const auto& x : choices(i, j)) {
      const Mask d = x.domain_mask();
      const Mask r = x.range_mask();
      if ((d & col_used[j]) != 0 || (r & row_used[i]) != 0) continue;
      col_used[j] |= d;
      row_used[i] |= r;
      const bool row_ok = j + 1 < cols || row_done(i, row_used[i]);
      const bool col_ok = i + 1 < rows || col_done(j, col_used[j]);
      if (row_ok && col_ok) {
        cells[k] = x;
        self(self, k + 1);
        cells[k] = PartialBijection::zero(ground);
      }
      col_used[j] &= ~d;
      row_used[i] &= ~r;
      if (stop) return;
    }
  };
  rec(rec, 0);
}

PMatrix from_cells(std::size_t rows, std::size_t cols, const std::vector<PartialBijection>& cells) {
  std::vector<PMatrix::Entry> entries;
  for (std::size_t k = 0; k < cells.size(); ++k) entries.emplace_back(k / cols, k % cols, cells[k]);
  return PMatrix(Dim::finite(rows), Dim::finite(cols), std::move(entries));
}

}  // namespace

std::vector<PMatrix> enumerate_rook_matrices(const FiniteBIM& s, std::size_t rows, std::size_t cols) {
  const std::vector<PartialBijection> all = s.elements();
  std::vector<PMatrix> out;
  backtrack(
      rows, cols, s.ground(), [&](std::size_t, std::size_t) -> const std::vector<PartialBijection>& { return all; },
      [](std::size_t, Mask) { return true; }, [](std::size_t, Mask) { return true; },
      [&](const std::vector<PartialBijection>& cells) {
        out.push_back(from_cells(rows, cols, cells));
        return true;
      });
  return out;
}

std::optional<PMatrix> find_diagonal_d_witness(const FiniteBIM& s,
                                               const std::vector<SubsetIdempotent>& e,
                                               const std::vector<SubsetIdempotent>& f) {
  const std::size_t cols = e.size();
  const std::size_t rows = f.size();
  int total_e = 0;
  int total_f = 0;
  for (const auto& x : e) {
    s.require_idempotent(x);
    total_e += x.count();
  }
  for (const auto& x : f) {
    s.require_idempotent(x);
    total_f += x.count();
  }
  // A rook matrix over I(X) is a bijection between tagged unions.
  if (total_e != total_f) return std::nullopt;
  if (rows == 0 || cols == 0) {
    if (total_e != 0) return std::nullopt;
    return PMatrix::zero(Dim::finite(rows), Dim::finite(cols));
  }

  std::vector<std::vector<PartialBijection>> candidates(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto& c = candidates[i * cols + j];
      for (std::size_t k = 0; k < s.size(); ++k) {
        if ((s.domain_mask(k) & ~e[j].mask()) == 0 && (s.range_mask(k) & ~f[i].mask()) == 0) {
          c.push_back(s.element(k));
        }
      }
    }
  }
  std::optional<PMatrix> found;
  backtrack(
      rows, cols, s.ground(),
      [&](std::size_t i, std::size_t j) -> const std::vector<PartialBijection>& {
        return candidates[i * cols + j];
      },
      [&](std::size_t i, Mask used) { return used == f[i].mask(); },
      [&](std::size_t j, Mask used) { return used == e[j].mask(); },
      [&](const std::vector<PartialBijection>& cells) {
        found = from_cells(rows, cols, cells);
        return false;
      });
  return found;
}

std::vector<std::pair<int, int>> TaggedUnion::points() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (int x : parts[j].members()) out.emplace_back(x, static_cast<int>(j));
  }
  return out;
}

TaggedBijection rook_to_bijection(const RookMatrix<PartialBijection>& a) {
  // An all-zero matrix has empty parts on a point.
  return rook_to_bijection(a, a.entries().empty() ? GroundSet(1) : a.entries().begin()->second.ground());
}

TaggedBijection rook_to_bijection(const RookMatrix<PartialBijection>& a, GroundSet ground) {
  if (a.rows().is_omega() || a.cols().is_omega()) {
    fail(Errc::ShapeMismatch, "tagged unions need a finite matrix");
  }
  if (!validate(a)) fail(Errc::InvalidArgument, "not a rook matrix");
  for (const auto& [cell, e] : a.entries()) {
    if (e.ground() != ground) fail(Errc::GroundMismatch, "entry on a different ground");
  }
  const std::size_t m = a.rows().value();
  const std::size_t n = a.cols().value();
  std::vector<Mask> xs(n, 0);
  std::vector<Mask> ys(m, 0);
  TaggedBijection f{{ground, {}}, {ground, {}}, {}};
  for (const auto& [cell, e] : a.entries()) {
    const auto [i, j] = cell;
    xs[j] |= e.domain_mask();
    ys[i] |= e.range_mask();
    for (auto [x, y] : e.graph()) {
      f.map.emplace(std::pair{x, static_cast<int>(j)}, std::pair{y, static_cast<int>(i)});
    }
  }
  for (Mask x : xs) f.domain.parts.emplace_back(ground, x);
  for (Mask y : ys) f.codomain.parts.emplace_back(ground, y);
  return f;
}

RookMatrix<PartialBijection> bijection_to_rook(const TaggedBijection& f) {
  const GroundSet ground = f.domain.ground;
  if (f.codomain.ground != ground) fail(Errc::GroundMismatch, "tagged unions on different grounds");
  const auto dom_points = f.domain.points();
  const auto cod_points = f.codomain.points();
  if (f.map.size() != dom_points.size() || dom_points.size() != cod_points.size()) {
    fail(Errc::NotBijective, "point counts differ");
  }
  const std::size_t n = f.domain.parts.size();
  const std::size_t m = f.codomain.parts.size();
  std::map<std::pair<int, int>, bool> hit;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<int, int>>> graphs;
  for (const auto& p : dom_points) {
    auto it = f.map.find(p);
    if (it == f.map.end()) fail(Errc::NotBijective, "point not mapped");
    const auto [y, i] = it->second;
    if (i < 0 || static_cast<std::size_t>(i) >= m || !f.codomain.parts[i].contains(y)) {
      fail(Errc::NotBijective, "image outside the codomain");
    }
    if (!hit.emplace(it->second, true).second) fail(Errc::NotBijective, "image hit twice");
    graphs[{static_cast<std::size_t>(i), static_cast<std::size_t>(p.second)}].emplace_back(p.first, y);
  }
  std::vector<RookMatrix<PartialBijection>::Entry> entries;
  for (const auto& [cell, graph] : graphs) {
    entries.emplace_back(cell.first, cell.second, PartialBijection(ground, graph));
  }
  return RookMatrix<PartialBijection>(Dim::finite(m), Dim::finite(n), std::move(entries));
}

}  // namespace imean
