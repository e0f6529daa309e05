#pragma once

#include <random>
#include <vector>

#include "imean/pbij.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Map to_map(const imean::PartialBijection& a) {
  oracle::Map m;
  for (auto [x, y] : a.graph()) m[x] = y;
  return m;
}

inline imean::PartialBijection from_map(imean::GroundSet g, const oracle::Map& m) {
  std::vector<std::pair<int, int>> graph(m.begin(), m.end());
  return imean::PartialBijection(g, graph);
}

inline imean::PartialBijection random_pbij(std::mt19937_64& rng, imean::GroundSet g) {
  return from_map(g, oracle::random_map(rng, g.size()));
}

inline imean::SubsetIdempotent random_subset(std::mt19937_64& rng, imean::GroundSet g) {
  std::uniform_int_distribution<imean::Mask> pick(0, g.full_mask());
  return imean::SubsetIdempotent(g, pick(rng));
}

// Multisets of size 1..max_size drawn from items, as nondecreasing index runs.
template <class T>
std::vector<std::vector<T>> multisets(const std::vector<T>& items, std::size_t max_size) {
  std::vector<std::vector<T>> out;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!idx.empty()) {
      std::vector<T> m;
      for (auto i : idx) m.push_back(items[i]);
      out.push_back(std::move(m));
    }
    if (idx.size() == max_size) return;
    for (std::size_t i = from; i < items.size(); ++i) {
      idx.push_back(i);
      self(self, i);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace support
