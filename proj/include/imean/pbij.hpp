#pragma once

// Partial bijections on a finite ground set {0, ..., n-1} and the Boolean
// algebra of its subsets (identified with the partial identities 1_A).

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "imean/error.hpp"

namespace imean {

inline constexpr int kMaxGround = 16;
inline constexpr std::uint8_t kUndefined = 0xFF;

// Image table: img[x] is the target of x, or kUndefined. Slots at and beyond
// the ground size are always kUndefined, so structural equality of tables is
// equality of maps.
using Image = std::array<std::uint8_t, kMaxGround>;
using Mask = std::uint32_t;

class GroundSet {
 public:
  explicit GroundSet(int size);

  int size() const noexcept { return size_; }
  Mask full_mask() const noexcept { return (Mask{1} << size_) - 1; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  int size_;
};

class SubsetIdempotent;

class PartialBijection {
 public:
  // Throws InvalidArgument on repeated sources/targets or out-of-range points.
  PartialBijection(GroundSet ground, std::span<const std::pair<int, int>> graph);
  PartialBijection(GroundSet ground, const std::vector<std::pair<int, int>>& graph)
      : PartialBijection(ground, std::span<const std::pair<int, int>>(graph)) {}
  PartialBijection(GroundSet ground, std::initializer_list<std::pair<int, int>> graph)
      : PartialBijection(ground, std::span<const std::pair<int, int>>(graph.begin(), graph.size())) {}

  // Trusted construction from a canonical table (used by kernels and closures).
  static PartialBijection from_image(GroundSet ground, const Image& img) noexcept {
    return PartialBijection(ground, img);
  }

  static PartialBijection zero(GroundSet ground) noexcept;
  static PartialBijection identity(GroundSet ground) noexcept;

  GroundSet ground() const noexcept { return ground_; }
  const Image& image() const noexcept { return img_; }

  std::optional<int> apply(int x) const noexcept {
    if (x < 0 || x >= ground_.size() || img_[x] == kUndefined) return std::nullopt;
    return img_[x];
  }

  // Sorted by source.
  std::vector<std::pair<int, int>> graph() const;
  int rank() const noexcept { return std::popcount(domain_mask()); }
  Mask domain_mask() const noexcept;
  Mask range_mask() const noexcept;

  bool is_zero() const noexcept { return domain_mask() == 0; }
  bool is_idempotent() const noexcept;

  friend bool operator==(const PartialBijection&, const PartialBijection&) = default;
  friend auto operator<=>(const PartialBijection& a, const PartialBijection& b) {
    if (auto c = a.ground_.size() <=> b.ground_.size(); c != 0) return c;
    return a.img_ <=> b.img_;
  }

 private:
  PartialBijection(GroundSet ground, const Image& img) noexcept : ground_(ground), img_(img) {}

  GroundSet ground_;
  Image img_;
};

class SubsetIdempotent {
 public:
  SubsetIdempotent(GroundSet ground, Mask members);
  SubsetIdempotent(GroundSet ground, std::span<const int> members);

  static SubsetIdempotent empty(GroundSet ground) { return {ground, Mask{0}}; }
  static SubsetIdempotent full(GroundSet ground) { return {ground, ground.full_mask()}; }
  // Throws InvalidArgument unless a is idempotent.
  static SubsetIdempotent from_partial_identity(const PartialBijection& a);

  GroundSet ground() const noexcept { return ground_; }
  Mask mask() const noexcept { return mask_; }
  bool contains(int x) const noexcept { return x >= 0 && x < ground_.size() && ((mask_ >> x) & 1u); }
  int count() const noexcept { return std::popcount(mask_); }
  bool is_empty() const noexcept { return mask_ == 0; }
  std::vector<int> members() const;

  PartialBijection to_partial_identity() const;

  friend bool operator==(const SubsetIdempotent&, const SubsetIdempotent&) = default;
  friend auto operator<=>(const SubsetIdempotent& a, const SubsetIdempotent& b) {
    if (auto c = a.ground_.size() <=> b.ground_.size(); c != 0) return c;
    return a.mask_ <=> b.mask_;
  }

 private:
  GroundSet ground_;
  Mask mask_;
};

// a∘b: first b, then a.
PartialBijection compose(const PartialBijection& a, const PartialBijection& b);
PartialBijection compose(std::initializer_list<PartialBijection> chain);
PartialBijection inverse(const PartialBijection& a) noexcept;

// d(a) = a⁻¹a and r(a) = aa⁻¹.
SubsetIdempotent domain(const PartialBijection& a);
SubsetIdempotent range(const PartialBijection& a);

bool natural_leq(const PartialBijection& a, const PartialBijection& b);
bool compatible(const PartialBijection& a, const PartialBijection& b);
bool orthogonal(const PartialBijection& a, const PartialBijection& b);
// Throws NotCompatible.
PartialBijection join(const PartialBijection& a, const PartialBijection& b);

// a·1_E and 1_E·a.
PartialBijection restrict_domain(const PartialBijection& a, const SubsetIdempotent& e);
PartialBijection restrict_range(const PartialBijection& a, const SubsetIdempotent& e);

SubsetIdempotent meet(const SubsetIdempotent& e, const SubsetIdempotent& f);
SubsetIdempotent join(const SubsetIdempotent& e, const SubsetIdempotent& f);
SubsetIdempotent complement(const SubsetIdempotent& e);
bool leq(const SubsetIdempotent& e, const SubsetIdempotent& f);

std::string to_string(const PartialBijection& a);
std::string to_string(const SubsetIdempotent& e);

struct ImageHash {
  std::size_t operator()(const Image& img) const noexcept;
};

struct PartialBijectionHash {
  std::size_t operator()(const PartialBijection& a) const noexcept;
};

}  // namespace imean
