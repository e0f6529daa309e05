#pragma once

// A symbolic Boolean inverse monoid of partial bijections of ℕ. Idempotents
// are periodic sets; elements are finite orthogonal joins of increasing
// affine maps between residue classes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imean/error.hpp"

namespace imean {

inline constexpr std::int64_t kDefaultModulusCap = 1'000'000;

// Largest modulus any affine computation may create; exceeding it throws
// OverflowGuard.
std::int64_t modulus_cap() noexcept;
void set_modulus_cap(std::int64_t cap);

class PeriodicSet {
 public:
  // {x ∈ ℕ : x mod modulus ∈ residues}, reduced to the least modulus.
  PeriodicSet(std::int64_t modulus, std::vector<std::int64_t> residues);
  static PeriodicSet empty() { return PeriodicSet(1, {}); }
  static PeriodicSet naturals() { return PeriodicSet(1, {0}); }
  static PeriodicSet residue_class(std::int64_t modulus, std::int64_t residue);

  std::int64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::int64_t>& residues() const noexcept { return residues_; }
  bool is_empty() const noexcept { return residues_.empty(); }
  bool is_naturals() const noexcept { return modulus_ == 1 && !residues_.empty(); }
  bool contains(std::int64_t x) const;
  // Residues after lifting to a multiple of the modulus.
  std::vector<std::int64_t> residues_mod(std::int64_t multiple) const;

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> residues_;
};

PeriodicSet meet(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet join(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet complement(const PeriodicSet& a);
bool leq(const PeriodicSet& a, const PeriodicSet& b);
bool orthogonal(const PeriodicSet& a, const PeriodicSet& b);
std::string to_string(const PeriodicSet& s);

// res + mod·t ↦ img_res + img_mod·t for t ≥ 0.
struct AffinePiece {
  std::int64_t mod = 1;
  std::int64_t res = 0;
  std::int64_t img_mod = 1;
  std::int64_t img_res = 0;

  // x ↦ a·x + b on x ≡ res (mod m). Throws InvalidArgument unless a > 0 and
  // the image is exactly the residue class of a·res + b modulo a·m.
  static AffinePiece slope_offset(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t res);

  bool integral_slope() const noexcept { return img_mod % mod == 0; }
  std::int64_t slope() const noexcept { return img_mod / mod; }
  std::int64_t offset() const noexcept { return img_res - slope() * res; }
  std::optional<std::int64_t> apply(std::int64_t x) const;

  friend auto operator<=>(const AffinePiece&, const AffinePiece&) = default;
};

// Throws InvalidArgument on a malformed piece.
void validate(const AffinePiece& p);

class AffineMap {
 public:
  AffineMap() = default;
  // Throws InvalidArgument unless domains and images are pairwise disjoint.
  explicit AffineMap(std::vector<AffinePiece> pieces);

  static AffineMap zero() { return AffineMap(); }
  static AffineMap identity() { return AffineMap({AffinePiece{}}); }
  static AffineMap identity_on(const PeriodicSet& s);
  // n ↦ a·n + b on all of ℕ.
  static AffineMap linear(std::int64_t a, std::int64_t b);

  const std::vector<AffinePiece>& pieces() const noexcept { return pieces_; }
  bool is_zero() const noexcept { return pieces_.empty(); }
  std::optional<std::int64_t> apply(std::int64_t x) const;
  // Least common multiple of the domain moduli.
  std::int64_t period() const;

  // Semantic equality.
  friend bool operator==(const AffineMap& a, const AffineMap& b);

 private:
  std::vector<AffinePiece> pieces_;
};

PeriodicSet domain(const AffineMap& a);
PeriodicSet range(const AffineMap& a);
// Coarsest piece decomposition, used for output and hashing.
AffineMap canonical(const AffineMap& a);

AffineMap compose(const AffineMap& a, const AffineMap& b);  // x ↦ a(b(x))
AffineMap inverse(const AffineMap& a);
AffineMap restrict_domain(const AffineMap& a, const PeriodicSet& s);
AffineMap restrict_range(const AffineMap& a, const PeriodicSet& s);
AffineMap pow(const AffineMap& a, unsigned k);
// Image of a periodic set under a.
PeriodicSet image(const AffineMap& a, const PeriodicSet& s);
bool orthogonal(const AffineMap& a, const AffineMap& b);
bool compatible(const AffineMap& a, const AffineMap& b);
bool natural_leq(const AffineMap& a, const AffineMap& b);
// Join of orthogonal maps. Throws NotOrthogonal.
AffineMap join(const AffineMap& a, const AffineMap& b);
AffineMap join(const std::vector<AffineMap>& maps);
inline AffineMap identity_like(const AffineMap&) { return AffineMap::identity(); }
std::string to_string(const AffineMap& a);

}  // namespace imean
