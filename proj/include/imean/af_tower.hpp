#pragma once

// AF inverse monoids as finite truncations of towers of semisimple monoids
// S_0 → S_1 → ... . Level i is a block-size vector m_i and the embedding
// S_i → S_{i+1} is a non-negative integer matrix M_i with m_{i+1} = M_i m_i.
// A mean at level i is a vector x_i ≥ 0 with m_iᵀ x_i = 1, and the embedding
// is mean-compatible exactly when x_i = M_iᵀ x_{i+1}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imean/bim.hpp"
#include "imean/rational.hpp"

namespace imean {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

struct AFTower {
  std::vector<IntVector> levels;
  std::vector<IntMatrix> maps;  // maps[i] is |levels[i+1]| × |levels[i]|

  std::size_t depth() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
};

struct TowerReport {
  bool valid = true;
  std::optional<Errc> code;
  std::size_t level = 0;
  std::size_t column = 0;
  std::string message;
};

TowerReport check_tower(const AFTower& t);
// Throws DimensionMismatch, ZeroColumn or BadBase for the first failure.
void validate_tower(const AFTower& t);

IntVector multiply(const IntMatrix& m, const IntVector& v);
RationalVector multiply_transpose(const IntMatrix& m, const RationalVector& y);
Rational dot(const IntVector& m, const RationalVector& x);

// x = M_iᵀ y for y a mean vector at level i+1. Throws NotNormalized.
RationalVector pull_back(const AFTower& t, std::size_t level, const RationalVector& y);

struct TowerMean {
  std::vector<RationalVector> levels;  // x_0, ..., x_d
  friend bool operator==(const TowerMean&, const TowerMean&) = default;
};

// Successive pull-backs from a normalized seed at level `depth`.
TowerMean tower_mean(const AFTower& t, std::size_t depth, const RationalVector& seed);
// Throws NotUHF unless every level up to `depth` is a single block.
TowerMean uhf_unique_mean(const AFTower& t, std::size_t depth);

// Normalization at every level, non-negativity and x_i = M_iᵀ x_{i+1}.
bool check_tower_mean(const AFTower& t, const TowerMean& mu);

SemisimpleSpec level_spec(const AFTower& t, std::size_t level);
// Semisimple realization of a level. Throws CapExceeded when its ground
// exceeds `cap` points.
FiniteBIM realize_level(const AFTower& t, std::size_t level, std::size_t cap);

// Block-diagonal copying: block j of level i goes into block l of level i+1
// M_i[l][j] times.
class TowerEmbedding {
 public:
  TowerEmbedding(const AFTower& t, std::size_t level);

  GroundSet source() const noexcept { return source_; }
  GroundSet target() const noexcept { return target_; }
  PartialBijection operator()(const PartialBijection& s) const;
  SubsetIdempotent operator()(const SubsetIdempotent& e) const;

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<std::vector<int>> copies_;  // source point -> target points
};

struct EmbeddingReport {
  bool into_target = true;
  bool unital = true;
  bool homomorphism = true;
  bool injective = true;
  bool preserves_joins = true;
  bool atoms_match = true;
  std::optional<bool> mean_compatible;

  bool ok() const noexcept {
    return into_target && unital && homomorphism && injective && preserves_joins && atoms_match &&
           mean_compatible.value_or(true);
  }
};

// Checks the realized embedding of level i into level i+1 on every element
// (and every pair, for products and joins). With a tower mean, also checks
// μ_{i+1}(τ(e)) = μ_i(e) on every idempotent.
EmbeddingReport verify_embedding(const AFTower& t, std::size_t level, const FiniteBIM& lower,
                                 const FiniteBIM& upper, const TowerMean* mu = nullptr);

}  // namespace imean
