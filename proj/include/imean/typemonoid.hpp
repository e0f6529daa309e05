#pragma once

// The type monoid T(S) of a finite Boolean inverse monoid, presented as the
// free commutative monoid on atom D-classes modulo the atom-sum equations of
// D-related idempotent pairs, with order-unit u = δ(1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imean/bim.hpp"

namespace imean {

// Non-negative coefficients over the presentation's generators.
using TypeElement = std::vector<std::uint64_t>;

struct TypeRelation {
  TypeElement lhs;
  TypeElement rhs;
  friend bool operator==(const TypeRelation&, const TypeRelation&) = default;
};

struct TypePresentation {
  std::vector<std::string> generators;
  std::vector<TypeRelation> relations;  // symmetric-closed, no trivial ones
  TypeElement unit;

  // Present only when built from a monoid; needed by delta.
  std::vector<SubsetIdempotent> atoms;
  std::vector<std::size_t> atom_generator;
  std::vector<Mask> idempotents;

  std::size_t rank() const noexcept { return generators.size(); }
  // Adds r and its mirror unless trivial or already present.
  void add_relation(TypeRelation r);
};

TypePresentation present(const FiniteBIM& s);

// Throws NotAnElement, or InvalidArgument when P carries no monoid data.
TypeElement delta(const TypePresentation& p, const SubsetIdempotent& e);

enum class Decision { yes, no, unknown };
std::string_view to_string(Decision d) noexcept;

inline constexpr std::size_t kDefaultSearchBound = 64;

// x ≤ y in the presented monoid: some word equal to y dominates x
// coordinatewise. Rewriting explores words of degree ≤ bound; `unknown` means
// a word was pruned and no certificate turned up.
Decision leq(const TypePresentation& p, const TypeElement& x, const TypeElement& y,
             std::size_t bound = kDefaultSearchBound);
Decision equivalent(const TypePresentation& p, const TypeElement& x, const TypeElement& y,
                    std::size_t bound = kDefaultSearchBound);

struct ObstructionResult {
  std::optional<std::size_t> n;  // least n with (n+1)u ≤ nu
  std::size_t tested_up_to = 0;
  bool inconclusive = false;  // some n came back unknown
};

ObstructionResult tarski_obstruction(const TypePresentation& p, std::size_t n_max,
                                     std::size_t bound = kDefaultSearchBound);

// Idempotents D-related to e, ascending.
std::vector<SubsetIdempotent> d_class(const FiniteBIM& s, const SubsetIdempotent& e);
SubsetIdempotent class_representative(const FiniteBIM& s, const SubsetIdempotent& e);

// [e] ⊕ [f] as the least idempotent of its class, when orthogonal
// representatives exist. Throws InternalInvariantViolation if two witness
// pairs disagree.
std::optional<SubsetIdempotent> oplus_partial(const FiniteBIM& s, const SubsetIdempotent& e,
                                              const SubsetIdempotent& f);

TypeElement operator+(const TypeElement& a, const TypeElement& b);
TypeElement scale(const TypeElement& a, std::uint64_t k);

}  // namespace imean
