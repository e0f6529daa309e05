#pragma once

// Exact invariant means on finite Boolean inverse monoids.
//
// A mean is determined by its values on atoms, and IM1 forces D-related atoms
// to share a value, so the unknowns are one rational per atom D-class. The
// only remaining constraint is normalization: the atoms under 1 sum to 1.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "imean/bim.hpp"
#include "imean/linsolve.hpp"
#include "imean/rational.hpp"

namespace imean {

struct MeanVector {
  RationalVector class_values;  // indexed by atom D-class
  friend bool operator==(const MeanVector&, const MeanVector&) = default;
};

// Value on every mask of the ground set; entries at non-idempotent masks are
// not meaningful.
using IdempotentValuation = std::vector<Rational>;

Rational mean_of(const FiniteBIM& s, const MeanVector& mu, const SubsetIdempotent& e);
IdempotentValuation valuation_of(const FiniteBIM& s, const MeanVector& mu);

enum class MeanStatus { unique, polytope, infeasible };
std::string_view to_string(MeanStatus status) noexcept;

struct ConstraintSystem {
  std::vector<std::string> variables;  // "g0", "g1", ...
  RationalMatrix lhs;
  RationalVector rhs;
};

struct MeanSolution {
  MeanStatus status = MeanStatus::infeasible;
  std::optional<MeanVector> witness;
  std::vector<MeanVector> vertices;
  std::size_t dimension = 0;
  bool truncated = false;
  ConstraintSystem constraints;
};

inline constexpr std::size_t kDefaultVertexCap = 64;

// The witness is the unique mean, or the barycentre of the vertices (which is
// faithful) when the solution set is a polytope.
MeanSolution solve(const FiniteBIM& s, std::size_t vertex_cap = kDefaultVertexCap);
// Atoms of I_{n(1)} × ... × I_{n(k)} are the points and its atom D-classes are
// the blocks, so the monoid itself is never built.
MeanSolution solve(const SemisimpleSpec& spec, std::size_t vertex_cap = kDefaultVertexCap);
// The system Σ_c class_sizes[c]·x_c = 1, x ≥ 0.
MeanSolution solve_class_sizes(const std::vector<std::size_t>& class_sizes,
                               std::size_t vertex_cap = kDefaultVertexCap);

struct AxiomReport {
  bool passed = true;
  std::string violation;  // first failed identity with witnesses
  std::size_t checks = 0;
};

AxiomReport check_axioms(const FiniteBIM& s, const IdempotentValuation& mu);
AxiomReport check_axioms(const FiniteBIM& s, const MeanVector& mu);

bool is_faithful(const FiniteBIM& s, const MeanVector& mu);

struct LocalMean {
  FiniteBIM monoid;
  MeanVector mean;
};

// Renormalizes ν on eSe by 1/ν(e). Throws ZeroMass when ν(e) = 0.
LocalMean restrict_mean(const FiniteBIM& s, const MeanVector& nu, const SubsetIdempotent& e);

// Units of S: elements with full domain.
std::vector<PartialBijection> units(const FiniteBIM& s);
bool is_piecewise_factorizable(const FiniteBIM& s);

struct UnitInvarianceResult {
  bool holds = false;
  std::string reason;
  // σ itself, as a mean, when it holds; re-verified against IM1 on all elements.
  std::optional<IdempotentValuation> extension;
  AxiomReport extension_report;
};

// Throws NotPiecewiseFactorizable.
UnitInvarianceResult check_unit_invariance(const FiniteBIM& s, const IdempotentValuation& sigma);

// μ(e) ≥ 1/n for a pencil of length n from 1 to e. Throws InvalidPencil.
bool large_idempotent_bound(const FiniteBIM& s, const MeanVector& mu, const SubsetIdempotent& e,
                            const Pencil& p);

}  // namespace imean
