#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "imean/rook.hpp"
#include "support.hpp"

namespace support {

using Rook = imean::RookMatrix<imean::PartialBijection>;

// Greedy: each cell takes a drawn element when the matrix stays valid.
template <class Draw>
Rook greedy_rook(Draw&& draw, std::size_t rows, std::size_t cols) {
  std::vector<Rook::Entry> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      auto x = draw();
      bool ok = true;
      for (const auto& [r, c, y] : entries) {
        if (r == i && (x.range_mask() & y.range_mask()) != 0) ok = false;
        if (c == j && (x.domain_mask() & y.domain_mask()) != 0) ok = false;
      }
      if (ok) entries.emplace_back(i, j, x);
    }
  }
  return Rook(imean::Dim::finite(rows), imean::Dim::finite(cols), entries);
}

inline Rook random_rook(std::mt19937_64& rng, const imean::FiniteBIM& s, std::size_t rows,
                        std::size_t cols) {
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  return greedy_rook([&] { return s.element(pick(rng)); }, rows, cols);
}

// Entries drawn from all of I(X).
inline Rook random_rook_free(std::mt19937_64& rng, imean::GroundSet g, std::size_t rows, std::size_t cols) {
  return greedy_rook([&] { return random_pbij(rng, g); }, rows, cols);
}

using Dense = std::vector<std::vector<oracle::Map>>;

inline Dense dense(const Rook& a) {
  Dense d(a.rows().value(), std::vector<oracle::Map>(a.cols().value()));
  for (const auto& [cell, e] : a.entries()) d[cell.first][cell.second] = to_map(e);
  return d;
}

inline Dense dense_product(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<oracle::Map>(b.front().size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.front().size(); ++j) {
      for (std::size_t k = 0; k < b.size(); ++k) {
        auto term = oracle::compose(a[i][k], b[k][j]);
        out[i][j].insert(term.begin(), term.end());
      }
    }
  }
  return out;
}

// Random subsets X_0..X_{cols-1}; every point (x, j) goes to a free slot
// (y, i) among `rows` copies of the ground.
inline imean::TaggedBijection random_tagged_bijection(std::mt19937_64& rng, imean::GroundSet g,
                                                      std::size_t rows, std::size_t cols) {
  using namespace imean;
  TaggedBijection f{TaggedUnion{g, {}}, TaggedUnion{g, {}}, {}};
  std::vector<std::pair<int, int>> slots;
  for (std::size_t i = 0; i < rows; ++i) {
    for (int y = 0; y < g.size(); ++y) slots.emplace_back(y, static_cast<int>(i));
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<std::pair<int, int>> points;
  for (std::size_t j = 0; j < cols; ++j) {
    f.domain.parts.push_back(random_subset(rng, g));
    for (int x : f.domain.parts.back().members()) points.emplace_back(x, static_cast<int>(j));
  }
  // Never more points than slots: drop surplus points from the domain.
  while (points.size() > slots.size()) {
    const auto [x, j] = points.back();
    points.pop_back();
    auto& part = f.domain.parts[static_cast<std::size_t>(j)];
    part = SubsetIdempotent(g, part.mask() & ~(Mask{1} << x));
  }
  std::vector<Mask> rows_used(rows, 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    f.map[points[k]] = slots[k];
    rows_used[static_cast<std::size_t>(slots[k].second)] |= Mask{1} << slots[k].first;
  }
  for (auto m : rows_used) f.codomain.parts.emplace_back(g, m);
  return f;
}

}  // namespace support
