#pragma once

// Finite Boolean inverse monoids realized as wide inverse submonoids of I(X).

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "imean/pbij.hpp"

namespace imean {

struct SemisimpleSpec {
  std::vector<int> block_sizes;

  // Throws InvalidArgument on an empty list or a non-positive block.
  void validate() const;
  int total() const;
  // First ground point of each block in the block-diagonal realization.
  std::vector<int> offsets() const;
};

class FiniteBIM {
 public:
  // Least subset of I(X) containing the generators, 0 and 1 that is closed
  // under products, inverses, compatible joins and complements of idempotents.
  static FiniteBIM close(GroundSet ground, const std::vector<PartialBijection>& generators,
                         std::size_t cap);
  // I_{n(1)} × ... × I_{n(k)} block-diagonally inside I(n(1)+...+n(k)),
  // enumerated directly rather than by closure.
  static FiniteBIM semisimple(const SemisimpleSpec& spec);
  static FiniteBIM symmetric(int n) { return semisimple(SemisimpleSpec{{n}}); }
  // Adopts an element set that must already be a Boolean inverse monoid.
  // Throws InvalidArgument when a closure property fails.
  static FiniteBIM from_elements(GroundSet ground, std::vector<PartialBijection> elements,
                                 std::vector<PartialBijection> generators = {});

  GroundSet ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return images_.size(); }
  std::span<const Image> images() const noexcept { return images_; }
  PartialBijection element(std::size_t i) const {
    return PartialBijection::from_image(ground_, images_[i]);
  }
  std::vector<PartialBijection> elements() const;
  const std::vector<PartialBijection>& generators() const noexcept { return generators_; }

  bool contains(const PartialBijection& a) const;
  std::optional<std::size_t> index_of(const PartialBijection& a) const;

  Mask domain_mask(std::size_t i) const noexcept { return domains_[i]; }
  Mask range_mask(std::size_t i) const noexcept { return ranges_[i]; }

  const std::vector<SubsetIdempotent>& idempotents() const noexcept { return idempotents_; }
  bool is_idempotent(const SubsetIdempotent& e) const noexcept;
  // Throws NotAnElement.
  void require_idempotent(const SubsetIdempotent& e) const;
  SubsetIdempotent one() const { return SubsetIdempotent::full(ground_); }

  // Minimal non-zero idempotents, ascending by mask.
  const std::vector<SubsetIdempotent>& atoms() const noexcept { return atoms_; }
  std::vector<std::size_t> atoms_below(const SubsetIdempotent& e) const;
  std::optional<std::size_t> atom_index(const SubsetIdempotent& a) const;

  // Atom D-classes, numbered by their least atom.
  std::size_t class_count() const noexcept { return class_sizes_.size(); }
  std::size_t class_of_atom(std::size_t atom) const noexcept { return atom_class_[atom]; }
  const std::vector<std::size_t>& class_sizes() const noexcept { return class_sizes_; }

  // Some element s with d(s) = d and r(s) = r.
  std::optional<PartialBijection> d_witness(Mask d, Mask r) const;

  friend bool operator==(const FiniteBIM& a, const FiniteBIM& b) {
    return a.ground_ == b.ground_ && a.images_ == b.images_;
  }

 private:
  FiniteBIM(GroundSet ground, std::vector<Image> sorted_images,
            std::vector<PartialBijection> generators);

  GroundSet ground_;
  std::vector<Image> images_;
  std::vector<PartialBijection> generators_;
  std::vector<Mask> domains_;
  std::vector<Mask> ranges_;
  std::vector<bool> idempotent_flag_;
  std::vector<SubsetIdempotent> idempotents_;
  std::vector<SubsetIdempotent> atoms_;
  std::vector<std::size_t> atom_class_;
  std::vector<std::size_t> class_sizes_;
  std::unordered_map<std::uint32_t, std::uint32_t> witness_;
};

// All partial bijections of {0, ..., n-1}; there are Σ_k C(n,k)² k! of them.
std::vector<PartialBijection> enumerate_symmetric(GroundSet ground);
std::vector<PartialBijection> semisimple_generators(const SemisimpleSpec& spec);

struct Pencil {
  SubsetIdempotent target;
  std::vector<PartialBijection> elements;
  SubsetIdempotent bound;
};

std::optional<PartialBijection> d_related(const FiniteBIM& s, const SubsetIdempotent& e,
                                          const SubsetIdempotent& f);
bool j_leq(const FiniteBIM& s, const SubsetIdempotent& e, const SubsetIdempotent& f);
bool check_d_eq_j(const FiniteBIM& s);

// Pencil from e to f of length at most the number of atoms under e.
std::optional<Pencil> preceq(const FiniteBIM& s, const SubsetIdempotent& e,
                             const SubsetIdempotent& f);
// Throws InvalidPencil when p is not a pencil of s.
void validate_pencil(const FiniteBIM& s, const Pencil& p);
Pencil orthogonalize_pencil(const FiniteBIM& s, const Pencil& p);
std::optional<Pencil> is_large(const FiniteBIM& s, const SubsetIdempotent& e);
bool is_zero_simplifying(const FiniteBIM& s);

// (SeS)^∨, the smallest ∨-closed ideal containing e.
std::vector<PartialBijection> vee_ideal(const FiniteBIM& s, const SubsetIdempotent& e);
bool is_zero_simplifying_by_ideals(const FiniteBIM& s);

// eSe on the ground relabelled to the members of e. Throws ZeroIdempotent.
FiniteBIM local_monoid(const FiniteBIM& s, const SubsetIdempotent& e);
// Moves a subset of e's members into the local monoid's coordinates.
SubsetIdempotent to_local(const SubsetIdempotent& e, const SubsetIdempotent& sub);
SubsetIdempotent from_local(const SubsetIdempotent& e, const SubsetIdempotent& local);

}  // namespace imean
