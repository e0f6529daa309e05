#pragma once

// Weak and strong paradoxicality over the affine monoid, amplification of a
// large complement, the upgrade from weak to strong given a witness, and the
// finite Kuratowski back-and-forth construction.

#include <optional>
#include <string_view>
#include <vector>

#include "imean/affine.hpp"
#include "imean/bim.hpp"

namespace imean {

enum class ParadoxKind { weak, strong };
std::string_view to_string(ParadoxKind kind) noexcept;

struct ParadoxCertificate {
  ParadoxKind kind = ParadoxKind::weak;
  AffineMap a;
  AffineMap b;
  // Generator indices of the words found by detect_weak, first letter applied last.
  std::vector<std::size_t> a_word;
  std::vector<std::size_t> b_word;

  friend bool operator==(const ParadoxCertificate&, const ParadoxCertificate&) = default;
};

// d(a) = ℕ = d(b) and r(a) ⊥ r(b), plus r(a) ∨ r(b) = ℕ for a strong one.
bool verify(const ParadoxCertificate& cert);
bool is_strong_pair(const AffineMap& a, const AffineMap& b);

// Bounded search over products of at most max_word generators. Returns the
// least pair in (length, lexicographic) word order. Absence is inconclusive.
std::optional<ParadoxCertificate> detect_weak(const std::vector<AffineMap>& generators,
                                              unsigned max_word);

struct Amplification {
  ParadoxCertificate certificate;  // (a^m, ⋁ a^{i-1} b_i)
  PeriodicSet f = PeriodicSet::empty();  // complement of r(a)
  std::vector<PeriodicSet> family;  // a^i f a^{-i} for i = 0..m
};

// Throws BadPencil unless d(a) = ℕ, the domains of the pencil partition ℕ
// and every range lies under the complement of r(a).
Amplification bike_amplify(const AffineMap& a, const std::vector<AffineMap>& pencil);

// Throws BadWitness unless the certificate is valid, d(c) = ℕ and
// r(c) = ℕ \ r(a).
ParadoxCertificate arden_upgrade(const ParadoxCertificate& cert, const AffineMap& c);

enum class KLetter { alpha, alpha_inv, phi, phi_inv, psi, psi_inv };
std::string_view to_string(KLetter letter) noexcept;

struct KuratowskiInput {
  // E and E' are both {0..n-1}; N = E \ M and Q = E' \ P.
  GroundSet ground;
  SubsetIdempotent m;
  PartialBijection phi;  // M → N
  SubsetIdempotent p;
  PartialBijection psi;  // P → Q
  PartialBijection alpha;  // E → E'
};

struct KuratowskiPiece {
  std::vector<KLetter> word;  // applied right to left
  SubsetIdempotent domain;
  PartialBijection map;
};

struct KuratowskiResult {
  PartialBijection bijection;  // M → Q
  std::vector<KuratowskiPiece> pieces;
};

// Throws NotBijective or PartitionMismatch on malformed input.
KuratowskiResult kuratowski_bijection(const KuratowskiInput& in);
PartialBijection evaluate_word(const KuratowskiInput& in, const std::vector<KLetter>& word);
// Bijectivity of the result and re-evaluation of every piece from its word.
bool verify(const KuratowskiInput& in, const KuratowskiResult& out);

// e₁ ⊥ e₂, e₁ D e₂, f₁ ⊥ f₂, f₁ D f₂ and (e₁∨e₂) D (f₁∨f₂) imply e₁ D f₂.
bool check_kuratowski_property(const FiniteBIM& s);

}  // namespace imean
