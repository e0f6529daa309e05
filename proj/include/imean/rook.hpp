#pragma once

// Generalized rook matrices over a Boolean inverse monoid.
//
// Entries are stored sparsely; an absent cell is 0, which makes finite support
// (RM3) structural and lets ω × ω matrices share the representation with the
// finite ones. The element type only needs the inverse-monoid vocabulary
// found by ADL: compose, inverse, join, orthogonal, natural_leq,
// identity_like and a member is_zero().

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "imean/bim.hpp"
#include "imean/error.hpp"
#include "imean/pbij.hpp"

namespace imean {

class Dim {
 public:
  static Dim finite(std::size_t n) { return Dim(n, false); }
  static Dim omega() { return Dim(0, true); }

  bool is_omega() const noexcept { return omega_; }
  std::size_t value() const noexcept { return value_; }
  bool admits(std::size_t index) const noexcept { return omega_ || index < value_; }
  std::string to_string() const { return omega_ ? "omega" : std::to_string(value_); }

  friend bool operator==(const Dim&, const Dim&) = default;

 private:
  Dim(std::size_t v, bool o) : value_(v), omega_(o) {}
  std::size_t value_;
  bool omega_;
};

inline PartialBijection identity_like(const PartialBijection& a) {
  return PartialBijection::identity(a.ground());
}

template <class E>
class RookMatrix {
 public:
  using Cell = std::pair<std::size_t, std::size_t>;
  using Entry = std::tuple<std::size_t, std::size_t, E>;

  // Zero entries are dropped. Throws ShapeMismatch for out-of-range cells and
  // InvalidArgument for a repeated cell.
  RookMatrix(Dim rows, Dim cols, std::vector<Entry> entries) : rows_(rows), cols_(cols) {
    for (auto& [i, j, e] : entries) {
      if (!rows.admits(i) || !cols.admits(j)) {
        fail(Errc::ShapeMismatch, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") outside " + rows.to_string() + "x" + cols.to_string());
      }
      if (cells_.contains({i, j})) {
        fail(Errc::InvalidArgument, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") given twice");
      }
      if (!e.is_zero()) cells_.emplace(Cell{i, j}, std::move(e));
    }
  }

  static RookMatrix zero(Dim rows, Dim cols) { return RookMatrix(rows, cols, {}); }

  static RookMatrix diagonal(const std::vector<E>& diag, bool omega = false) {
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < diag.size(); ++i) entries.emplace_back(i, i, diag[i]);
    const Dim d = omega ? Dim::omega() : Dim::finite(diag.size());
    return RookMatrix(d, d, std::move(entries));
  }

  static RookMatrix identity(std::size_t n, const E& one) {
    return diagonal(std::vector<E>(n, one));
  }

  Dim rows() const noexcept { return rows_; }
  Dim cols() const noexcept { return cols_; }
  const std::map<Cell, E>& entries() const noexcept { return cells_; }

  const E* at(std::size_t i, std::size_t j) const {
    auto it = cells_.find({i, j});
    return it == cells_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const RookMatrix&, const RookMatrix&) = default;

 private:
  Dim rows_;
  Dim cols_;
  std::map<Cell, E> cells_;
};

// RM1 and RM2; RM3 holds by construction.
template <class E>
bool validate(const RookMatrix<E>& a) {
  const auto& cells = a.entries();
  for (auto it = cells.begin(); it != cells.end(); ++it) {
    for (auto jt = std::next(it); jt != cells.end(); ++jt) {
      const auto [i1, j1] = it->first;
      const auto [i2, j2] = jt->first;
      // Same row: ranges orthogonal, i.e. a⁻¹b = 0.
      if (i1 == i2 && !compose(inverse(it->second), jt->second).is_zero()) return false;
      // Same column: domains orthogonal, i.e. ab⁻¹ = 0.
      if (j1 == j2 && !compose(it->second, inverse(jt->second)).is_zero()) return false;
    }
  }
  return true;
}

// Validity plus membership of every entry in the base. Throws BaseMismatch.
bool validate(const RookMatrix<PartialBijection>& a, const FiniteBIM& base);

template <class E>
RookMatrix<E> product(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  if (a.cols() != b.rows()) {
    fail(Errc::ShapeMismatch, "cannot multiply " + a.rows().to_string() + "x" +
                                  a.cols().to_string() + " by " + b.rows().to_string() + "x" +
                                  b.cols().to_string());
  }
  std::map<std::size_t, std::vector<std::pair<std::size_t, const E*>>> b_rows;
  for (const auto& [cell, e] : b.entries()) b_rows[cell.first].emplace_back(cell.second, &e);
  std::map<std::pair<std::size_t, std::size_t>, E> acc;
  for (const auto& [cell, x] : a.entries()) {
    auto row = b_rows.find(cell.second);
    if (row == b_rows.end()) continue;
    for (const auto& [j, y] : row->second) {
      E term = compose(x, *y);
      if (term.is_zero()) continue;
      const std::pair<std::size_t, std::size_t> out{cell.first, j};
      auto it = acc.find(out);
      if (it == acc.end()) {
        acc.emplace(out, std::move(term));
      } else {
        // The terms of (AB)_ij are pairwise orthogonal whenever A and B are rook matrices.
        if (!orthogonal(it->second, term)) {
          fail(Errc::InternalInvariantViolation,
               "non-orthogonal terms in product cell (" + std::to_string(out.first) + "," +
                   std::to_string(out.second) + ")");
        }
        it->second = join(it->second, term);
      }
    }
  }
  std::vector<typename RookMatrix<E>::Entry> entries;
  for (auto& [cell, e] : acc) entries.emplace_back(cell.first, cell.second, std::move(e));
  return RookMatrix<E>(a.rows(), b.cols(), std::move(entries));
}

template <class E>
RookMatrix<E> star(const RookMatrix<E>& a) {
  std::vector<typename RookMatrix<E>::Entry> entries;
  for (const auto& [cell, e] : a.entries()) entries.emplace_back(cell.second, cell.first, inverse(e));
  return RookMatrix<E>(a.cols(), a.rows(), std::move(entries));
}

template <class E>
void require_same_shape(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(Errc::ShapeMismatch, "matrices of different shapes");
  }
}

template <class E>
bool leq(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  require_same_shape(a, b);
  for (const auto& [cell, x] : a.entries()) {
    const E* y = b.at(cell.first, cell.second);
    if (y == nullptr || !natural_leq(x, *y)) return false;
  }
  return true;
}

// a_ij ⊥ b_ij for every cell. Necessary for A ⊥ B but not sufficient:
// [1 0] and [0 1] over {0, 1} are entrywise orthogonal while [1 1] is not a
// rook matrix.
template <class E>
bool entrywise_orthogonal(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  require_same_shape(a, b);
  for (const auto& [cell, x] : a.entries()) {
    const E* y = b.at(cell.first, cell.second);
    if (y != nullptr && !orthogonal(x, *y)) return false;
  }
  return true;
}

// A*B = 0 and AB* = 0: entries of A and B sharing a row have orthogonal
// ranges, and entries sharing a column have orthogonal domains.
template <class E>
bool orthogonal(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  require_same_shape(a, b);
  for (const auto& [ca, x] : a.entries()) {
    for (const auto& [cb, y] : b.entries()) {
      if (ca.first == cb.first && !compose(inverse(x), y).is_zero()) return false;
      if (ca.second == cb.second && !compose(x, inverse(y)).is_zero()) return false;
    }
  }
  return true;
}

// Entrywise join of orthogonal matrices. Throws NotOrthogonal.
template <class E>
RookMatrix<E> join(const RookMatrix<E>& a, const RookMatrix<E>& b) {
  if (!orthogonal(a, b)) fail(Errc::NotOrthogonal, "matrices are not orthogonal");
  std::map<std::pair<std::size_t, std::size_t>, E> acc(a.entries().begin(), a.entries().end());
  for (const auto& [cell, y] : b.entries()) {
    auto it = acc.find(cell);
    if (it == acc.end()) {
      acc.emplace(cell, y);
    } else {
      it->second = join(it->second, y);
    }
  }
  std::vector<typename RookMatrix<E>::Entry> entries;
  for (auto& [cell, e] : acc) entries.emplace_back(cell.first, cell.second, std::move(e));
  return RookMatrix<E>(a.rows(), a.cols(), std::move(entries));
}

// A*A = I_{m+1} for an m × (m+1) matrix.
template <class E>
bool is_tarski(const RookMatrix<E>& a, std::size_t m) {
  if (a.rows() != Dim::finite(m) || a.cols() != Dim::finite(m + 1)) {
    fail(Errc::ShapeMismatch, "Tarski matrices of degree " + std::to_string(m) + " are " +
                                  std::to_string(m) + "x" + std::to_string(m + 1));
  }
  if (a.entries().empty()) return false;
  const E one = identity_like(a.entries().begin()->second);
  return product(star(a), a) == RookMatrix<E>::identity(m + 1, one);
}

// First pair (a, b) in enumeration order with [a b] a Tarski matrix of degree 1.
template <class E>
std::optional<RookMatrix<E>> find_tarski_degree1(const std::vector<E>& elements) {
  for (const auto& a : elements) {
    if (a.is_zero()) continue;
    const E one = identity_like(a);
    if (compose(inverse(a), a) != one) continue;
    for (const auto& b : elements) {
      if (compose(inverse(b), b) != one || !compose(inverse(a), b).is_zero()) continue;
      RookMatrix<E> m(Dim::finite(1), Dim::finite(2), {{0, 0, a}, {0, 1, b}});
      if (is_tarski(m, 1)) return m;
    }
  }
  return std::nullopt;
}

// The ω × ω matrix with e_i at (r + i, i): it carries Δ_ω(e) onto Δ_ω(0^r, e).
template <class E>
RookMatrix<E> slide_matrix(const std::vector<E>& diag, std::size_t r) {
  std::vector<typename RookMatrix<E>::Entry> entries;
  for (std::size_t i = 0; i < diag.size(); ++i) entries.emplace_back(r + i, i, diag[i]);
  return RookMatrix<E>(Dim::omega(), Dim::omega(), std::move(entries));
}

// Every valid rows × cols rook matrix with entries in s (backtracking).
std::vector<RookMatrix<PartialBijection>> enumerate_rook_matrices(const FiniteBIM& s,
                                                                  std::size_t rows,
                                                                  std::size_t cols);

// A rook matrix A over s with A*A = Δ(e) and AA* = Δ(f), by exhaustive search.
std::optional<RookMatrix<PartialBijection>> find_diagonal_d_witness(
    const FiniteBIM& s, const std::vector<SubsetIdempotent>& e,
    const std::vector<SubsetIdempotent>& f);

// Disjoint union ⨆ X_j, points (x, j).
struct TaggedUnion {
  GroundSet ground;
  std::vector<SubsetIdempotent> parts;

  std::vector<std::pair<int, int>> points() const;
  friend bool operator==(const TaggedUnion&, const TaggedUnion&) = default;
};

struct TaggedBijection {
  TaggedUnion domain;
  TaggedUnion codomain;
  std::map<std::pair<int, int>, std::pair<int, int>> map;  // (x, j) -> (y, i)

  friend bool operator==(const TaggedBijection&, const TaggedBijection&) = default;
};

// Column j gives X_j, row i gives Y_i; f(x, j) = (f_ij(x), i).
TaggedBijection rook_to_bijection(const RookMatrix<PartialBijection>& a);
// The zero matrix does not record its ground; this form supplies it.
TaggedBijection rook_to_bijection(const RookMatrix<PartialBijection>& a, GroundSet ground);
// Throws NotBijective.
RookMatrix<PartialBijection> bijection_to_rook(const TaggedBijection& f);

}  // namespace imean
