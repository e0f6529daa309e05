#pragma once

#include <random>

#include "imean/af_tower.hpp"

namespace support {

// A valid tower: no zero rows or columns, entries ≤ max_entry, ≤ max_blocks blocks.
inline imean::AFTower random_tower(std::mt19937_64& rng, std::size_t depth, std::size_t max_blocks,
                                   std::int64_t max_entry) {
  imean::AFTower t;
  t.levels.push_back({1});
  std::uniform_int_distribution<std::size_t> blocks(1, max_blocks);
  std::uniform_int_distribution<std::int64_t> entry(0, max_entry);
  for (std::size_t i = 0; i < depth; ++i) {
    const std::size_t p = t.levels.back().size();
    const std::size_t q = blocks(rng);
    imean::IntMatrix m(q, imean::IntVector(p, 0));
    for (auto& row : m) {
      for (auto& x : row) x = entry(rng);
    }
    std::uniform_int_distribution<std::size_t> pick(0, q - 1);
    std::uniform_int_distribution<std::int64_t> pos(1, max_entry);
    for (std::size_t j = 0; j < p; ++j) {
      bool any = false;
      for (std::size_t l = 0; l < q; ++l) any = any || m[l][j] > 0;
      if (!any) m[pick(rng)][j] = pos(rng);
    }
    std::uniform_int_distribution<std::size_t> col(0, p - 1);
    for (auto& row : m) {
      bool any = false;
      for (auto x : row) any = any || x > 0;
      if (!any) row[col(rng)] = pos(rng);
    }
    t.levels.push_back(imean::multiply(m, t.levels.back()));
    t.maps.push_back(std::move(m));
  }
  return t;
}

// A random x ≥ 0 with mᵀx = 1; strictly positive when `positive`.
inline imean::RationalVector random_normalized(std::mt19937_64& rng, const imean::IntVector& m,
                                               bool positive) {
  std::uniform_int_distribution<long> w(positive ? 1 : 0, 7);
  imean::RationalVector x(m.size());
  imean::Rational total(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    x[i] = w(rng);
    total += x[i] * m[i];
  }
  if (total == 0) {
    x[0] = 1;
    total = m[0];
  }
  for (auto& v : x) {
    v /= total;
    v.canonicalize();
  }
  return x;
}

}  // namespace support
