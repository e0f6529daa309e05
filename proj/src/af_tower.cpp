#include "imean/af_tower.hpp"

#include <unordered_set>

#include "imean/means.hpp"

namespace imean {

namespace {

TowerReport failure(Errc code, std::size_t level, std::size_t column, std::string message) {
  return TowerReport{false, code, level, column, std::move(message)};
}

void require_level(const AFTower& t, std::size_t level) {
  if (level >= t.levels.size()) {
    fail(Errc::InvalidArgument, "level " + std::to_string(level) + " is beyond the tower");
  }
}

bool nonnegative(const RationalVector& v) {
  for (const auto& q : v) {
    if (sgn(q) < 0) return false;
  }
  return true;
}

void require_normalized(const IntVector& m, const RationalVector& x, std::size_t level) {
  if (x.size() != m.size()) {
    fail(Errc::DimensionMismatch, "vector length does not match level " + std::to_string(level));
  }
  if (!nonnegative(x) || dot(m, x) != 1) {
    fail(Errc::NotNormalized, "vector is not a mean at level " + std::to_string(level));
  }
}

constexpr std::size_t kExhaustivePairLimit = 4096;

}  // namespace

IntVector multiply(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != v.size()) fail(Errc::DimensionMismatch, "matrix row has the wrong length");
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

RationalVector multiply_transpose(const IntMatrix& m, const RationalVector& y) {
  if (m.size() != y.size()) fail(Errc::DimensionMismatch, "vector length does not match matrix rows");
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  RationalVector x(cols, Rational(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != cols) fail(Errc::DimensionMismatch, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (m[r][c] != 0) x[c] += Rational(static_cast<long>(m[r][c])) * y[r];
    }
  }
  return x;
}

Rational dot(const IntVector& m, const RationalVector& x) {
  if (m.size() != x.size()) fail(Errc::DimensionMismatch, "dot product of unequal lengths");
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) s += Rational(static_cast<long>(m[i])) * x[i];
  return s;
}

TowerReport check_tower(const AFTower& t) {
  if (t.levels.empty() || t.levels.front() != IntVector{1}) {
    return failure(Errc::BadBase, 0, 0, "level 0 must be [1]");
  }
  if (t.maps.size() + 1 != t.levels.size()) {
    return failure(Errc::DimensionMismatch, t.maps.size(), 0,
                   "a tower with k maps needs k+1 levels");
  }
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    if (t.levels[i].empty()) return failure(Errc::DimensionMismatch, i, 0, "empty level");
    for (auto n : t.levels[i]) {
      if (n <= 0) return failure(Errc::DimensionMismatch, i, 0, "block sizes must be positive");
    }
  }
  for (std::size_t i = 0; i < t.maps.size(); ++i) {
    const auto& m = t.maps[i];
    const auto& lower = t.levels[i];
    const auto& upper = t.levels[i + 1];
    if (m.size() != upper.size()) {
      return failure(Errc::DimensionMismatch, i, 0, "map rows do not match the next level");
    }
    for (const auto& row : m) {
      if (row.size() != lower.size()) {
        return failure(Errc::DimensionMismatch, i, 0, "map columns do not match the level");
      }
      for (auto v : row) {
        if (v < 0) return failure(Errc::DimensionMismatch, i, 0, "map entries must be non-negative");
      }
    }
    for (std::size_t c = 0; c < lower.size(); ++c) {
      bool positive = false;
      for (const auto& row : m) positive = positive || row[c] > 0;
      if (!positive) {
        return failure(Errc::ZeroColumn, i, c,
                       "column " + std::to_string(c) + " of map " + std::to_string(i) + " is zero");
      }
    }
    if (multiply(m, lower) != upper) {
      return failure(Errc::DimensionMismatch, i + 1, 0,
                     "level " + std::to_string(i + 1) + " differs from M_" + std::to_string(i) +
                         " applied to level " + std::to_string(i));
    }
  }
  return {};
}

void validate_tower(const AFTower& t) {
  auto report = check_tower(t);
  if (!report.valid) fail(*report.code, report.message);
}

RationalVector pull_back(const AFTower& t, std::size_t level, const RationalVector& y) {
  require_level(t, level + 1);
  require_normalized(t.levels[level + 1], y, level + 1);
  auto x = multiply_transpose(t.maps[level], y);
  if (dot(t.levels[level], x) != 1) {
    fail(Errc::InternalInvariantViolation, "pull-back lost normalization");
  }
  return x;
}

TowerMean tower_mean(const AFTower& t, std::size_t depth, const RationalVector& seed) {
  validate_tower(t);
  require_level(t, depth);
  require_normalized(t.levels[depth], seed, depth);
  TowerMean mu;
  mu.levels.resize(depth + 1);
  mu.levels[depth] = seed;
  for (std::size_t i = depth; i-- > 0;) mu.levels[i] = pull_back(t, i, mu.levels[i + 1]);
  return mu;
}

TowerMean uhf_unique_mean(const AFTower& t, std::size_t depth) {
  validate_tower(t);
  require_level(t, depth);
  for (std::size_t i = 0; i <= depth; ++i) {
    if (t.levels[i].size() != 1) {
      fail(Errc::NotUHF, "level " + std::to_string(i) + " has " +
                             std::to_string(t.levels[i].size()) + " blocks");
    }
  }
  auto mu = tower_mean(t, depth, {Rational(1, static_cast<unsigned long>(t.levels[depth][0]))});
  for (std::size_t i = 0; i <= depth; ++i) {
    if (mu.levels[i][0] != Rational(1, static_cast<unsigned long>(t.levels[i][0])) ||
        sgn(mu.levels[i][0]) <= 0) {
      fail(Errc::InternalInvariantViolation, "UHF mean is not 1/n at some level");
    }
  }
  return mu;
}

bool check_tower_mean(const AFTower& t, const TowerMean& mu) {
  if (mu.levels.empty() || mu.levels.size() > t.levels.size()) return false;
  for (std::size_t i = 0; i < mu.levels.size(); ++i) {
    const auto& x = mu.levels[i];
    if (x.size() != t.levels[i].size() || !nonnegative(x) || dot(t.levels[i], x) != 1) return false;
    if (i + 1 < mu.levels.size() && multiply_transpose(t.maps[i], mu.levels[i + 1]) != x) {
      return false;
    }
  }
  return true;
}

SemisimpleSpec level_spec(const AFTower& t, std::size_t level) {
  require_level(t, level);
  SemisimpleSpec spec;
  for (auto n : t.levels[level]) {
    if (n <= 0 || n > kMaxGround) fail(Errc::GroundTooLarge, "block size out of range");
    spec.block_sizes.push_back(static_cast<int>(n));
  }
  return spec;
}

FiniteBIM realize_level(const AFTower& t, std::size_t level, std::size_t cap) {
  validate_tower(t);
  require_level(t, level);
  std::int64_t total = 0;
  for (auto n : t.levels[level]) total += n;
  if (static_cast<std::size_t>(total) > cap) {
    fail(Errc::CapExceeded, "level " + std::to_string(level) + " needs " + std::to_string(total) +
                                " points, cap is " + std::to_string(cap));
  }
  if (total > kMaxGround) {
    fail(Errc::CapExceeded, "level " + std::to_string(level) + " exceeds the ground limit");
  }
  return FiniteBIM::semisimple(level_spec(t, level));
}

namespace {

GroundSet checked_ground(const AFTower& t, std::size_t level) {
  validate_tower(t);
  require_level(t, level);
  return GroundSet(level_spec(t, level).total());
}

}  // namespace

TowerEmbedding::TowerEmbedding(const AFTower& t, std::size_t level)
    : source_(checked_ground(t, level)), target_(checked_ground(t, level + 1)) {
  auto lower = level_spec(t, level);
  auto upper = level_spec(t, level + 1);
  const auto lower_off = lower.offsets();
  const auto upper_off = upper.offsets();
  const auto& m = t.maps[level];
  copies_.assign(static_cast<std::size_t>(source_.size()), {});
  for (std::size_t l = 0; l < upper.block_sizes.size(); ++l) {
    int cursor = upper_off[l];
    for (std::size_t j = 0; j < lower.block_sizes.size(); ++j) {
      for (std::int64_t c = 0; c < m[l][j]; ++c) {
        for (int q = 0; q < lower.block_sizes[j]; ++q) {
          copies_[static_cast<std::size_t>(lower_off[j] + q)].push_back(cursor + q);
        }
        cursor += lower.block_sizes[j];
      }
    }
  }
}

PartialBijection TowerEmbedding::operator()(const PartialBijection& s) const {
  if (s.ground() != source_) fail(Errc::GroundMismatch, "element is not on the lower level");
  Image img;
  img.fill(kUndefined);
  for (int x = 0; x < source_.size(); ++x) {
    auto y = s.apply(x);
    if (!y) continue;
    const auto& from = copies_[static_cast<std::size_t>(x)];
    const auto& to = copies_[static_cast<std::size_t>(*y)];
    for (std::size_t c = 0; c < from.size(); ++c) {
      img[static_cast<std::size_t>(from[c])] = static_cast<std::uint8_t>(to[c]);
    }
  }
  return PartialBijection::from_image(target_, img);
}

SubsetIdempotent TowerEmbedding::operator()(const SubsetIdempotent& e) const {
  return SubsetIdempotent::from_partial_identity((*this)(e.to_partial_identity()));
}

EmbeddingReport verify_embedding(const AFTower& t, std::size_t level, const FiniteBIM& lower,
                                 const FiniteBIM& upper, const TowerMean* mu) {
  TowerEmbedding tau(t, level);
  if (lower.ground() != tau.source() || upper.ground() != tau.target()) {
    fail(Errc::GroundMismatch, "realized levels do not match the tower");
  }
  EmbeddingReport report;
  const auto elements = lower.elements();
  std::vector<PartialBijection> images;
  images.reserve(elements.size());
  for (const auto& s : elements) {
    images.push_back(tau(s));
    if (!upper.contains(images.back())) report.into_target = false;
  }
  report.unital = tau(PartialBijection::identity(tau.source())) ==
                      PartialBijection::identity(tau.target()) &&
                  tau(PartialBijection::zero(tau.source())).is_zero();

  std::unordered_set<PartialBijection, PartialBijectionHash> seen(images.begin(), images.end());
  report.injective = seen.size() == images.size();

  // Large levels are checked against the generators on the right only.
  std::vector<std::size_t> right;
  if (elements.size() <= kExhaustivePairLimit) {
    for (std::size_t j = 0; j < elements.size(); ++j) right.push_back(j);
  } else {
    for (const auto& g : lower.generators()) {
      if (auto j = lower.index_of(g)) right.push_back(*j);
    }
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j : right) {
      if (tau(compose(elements[i], elements[j])) != compose(images[i], images[j])) {
        report.homomorphism = false;
      }
      if (compatible(elements[i], elements[j]) &&
          tau(join(elements[i], elements[j])) != join(images[i], images[j])) {
        report.preserves_joins = false;
      }
    }
  }

  const auto& m = t.maps[level];
  for (std::size_t a = 0; a < lower.atoms().size(); ++a) {
    const auto block = lower.class_of_atom(a);
    std::vector<std::int64_t> per_block(upper.class_count(), 0);
    for (auto b : upper.atoms_below(tau(lower.atoms()[a]))) ++per_block[upper.class_of_atom(b)];
    for (std::size_t l = 0; l < per_block.size(); ++l) {
      if (per_block[l] != m[l][block]) report.atoms_match = false;
    }
  }

  if (mu != nullptr) {
    if (mu->levels.size() <= level + 1) {
      fail(Errc::InvalidArgument, "tower mean does not reach level " + std::to_string(level + 1));
    }
    const MeanVector below{mu->levels[level]};
    const MeanVector above{mu->levels[level + 1]};
    bool ok = true;
    for (const auto& e : lower.idempotents()) {
      if (mean_of(lower, below, e) != mean_of(upper, above, tau(e))) ok = false;
    }
    report.mean_compatible = ok;
  }
  return report;
}

}  // namespace imean
