#include "imean/means.hpp"

#include <unordered_set>

namespace imean {

namespace {

Mask conjugate_mask(const Image& img, int n, Mask e) {
  Mask out = 0;
  for (int x = 0; x < n; ++x) {
    if (((e >> x) & 1u) && img[x] != kUndefined) out |= Mask{1} << img[x];
  }
  return out;
}

std::string mask_name(const FiniteBIM& s, Mask m) { return to_string(SubsetIdempotent(s.ground(), m)); }

void require_shape(const FiniteBIM& s, const MeanVector& mu) {
  if (mu.class_values.size() != s.class_count()) {
    fail(Errc::InvalidArgument, "mean has " + std::to_string(mu.class_values.size()) +
                                    " class values, monoid has " + std::to_string(s.class_count()) +
                                    " atom classes");
  }
}

}  // namespace

std::string_view to_string(MeanStatus status) noexcept {
  switch (status) {
    case MeanStatus::unique: return "unique";
    case MeanStatus::polytope: return "polytope";
    case MeanStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

Rational mean_of(const FiniteBIM& s, const MeanVector& mu, const SubsetIdempotent& e) {
  require_shape(s, mu);
  s.require_idempotent(e);
  Rational total = 0;
  for (std::size_t a : s.atoms_below(e)) total += mu.class_values[s.class_of_atom(a)];
  return total;
}

IdempotentValuation valuation_of(const FiniteBIM& s, const MeanVector& mu) {
  require_shape(s, mu);
  IdempotentValuation out(std::size_t{1} << s.ground().size(), Rational(0));
  for (const auto& e : s.idempotents()) out[e.mask()] = mean_of(s, mu, e);
  return out;
}

MeanSolution solve(const FiniteBIM& s, std::size_t vertex_cap) {
  return solve_class_sizes(s.class_sizes(), vertex_cap);
}

MeanSolution solve(const SemisimpleSpec& spec, std::size_t vertex_cap) {
  spec.validate();
  return solve_class_sizes({spec.block_sizes.begin(), spec.block_sizes.end()}, vertex_cap);
}

MeanSolution solve_class_sizes(const std::vector<std::size_t>& class_sizes, std::size_t vertex_cap) {
  MeanSolution out;
  const std::size_t k = class_sizes.size();
  out.constraints.lhs.assign(1, RationalVector(k));
  for (std::size_t c = 0; c < k; ++c) {
    out.constraints.variables.push_back("g" + std::to_string(c));
    out.constraints.lhs[0][c] = static_cast<long>(class_sizes[c]);
  }
  out.constraints.rhs = {Rational(1)};

  const VertexSet vs = enumerate_vertices(out.constraints.lhs, out.constraints.rhs, vertex_cap);
  if (!vs.feasible) return out;
  for (const auto& v : vs.vertices) out.vertices.push_back(MeanVector{v});
  out.dimension = vs.dimension;
  out.truncated = vs.truncated;
  out.status = (out.vertices.size() == 1 && !vs.truncated) ? MeanStatus::unique : MeanStatus::polytope;
  RationalVector centre(k, Rational(0));
  for (const auto& v : vs.vertices) {
    for (std::size_t c = 0; c < k; ++c) centre[c] += v[c];
  }
  for (auto& v : centre) v /= static_cast<long>(vs.vertices.size());
  out.witness = MeanVector{std::move(centre)};
  return out;
}

AxiomReport check_axioms(const FiniteBIM& s, const IdempotentValuation& mu) {
  AxiomReport rep;
  const int n = s.ground().size();
  if (mu.size() != (std::size_t{1} << n)) {
    fail(Errc::InvalidArgument, "valuation must cover all 2^n masks");
  }
  auto violate = [&](std::string what) {
    if (rep.passed) {
      rep.passed = false;
      rep.violation = std::move(what);
    }
  };
  const auto& idems = s.idempotents();
  const Mask one = s.ground().full_mask();

  ++rep.checks;
  if (mu[0] != 0) violate("mu(0) = " + to_string(mu[0]) + ", expected 0");
  for (const auto& e : idems) {
    ++rep.checks;
    if (mu[e.mask()] < 0) violate("mu" + to_string(e) + " = " + to_string(mu[e.mask()]) + " < 0");
  }
  // IM1 on every element.
  for (std::size_t i = 0; i < s.size(); ++i) {
    ++rep.checks;
    if (mu[s.domain_mask(i)] != mu[s.range_mask(i)]) {
      violate("IM1 fails at " + to_string(s.element(i)) + ": mu(d) = " +
              to_string(mu[s.domain_mask(i)]) + ", mu(r) = " + to_string(mu[s.range_mask(i)]));
    }
  }
  for (const auto& e : idems) {
    const Mask em = e.mask();
    for (const auto& f : idems) {
      const Mask fm = f.mask();
      rep.checks += 3;
      if ((em & fm) == 0 && mu[em | fm] != mu[em] + mu[fm]) {
        violate("IM2 fails at " + to_string(e) + ", " + to_string(f));
      }
      if (mu[em | fm] != mu[em] + mu[fm] - mu[em & fm]) {
        violate("inclusion-exclusion fails at " + to_string(e) + ", " + to_string(f));
      }
      if ((em & ~fm) == 0 && mu[em] > mu[fm]) {
        violate("monotonicity fails at " + to_string(e) + " <= " + to_string(f));
      }
    }
    ++rep.checks;
    if (mu[one & ~em] != 1 - mu[em]) {
      violate("complement law fails at " + to_string(e) + ": mu(e) = " + to_string(mu[em]) +
              ", mu(complement) = " + to_string(mu[one & ~em]));
    }
  }
  // The null set is an order ideal of E(S) closed under e -> s e s^-1.
  for (const auto& e : idems) {
    if (mu[e.mask()] != 0) continue;
    for (const auto& f : idems) {
      ++rep.checks;
      if (mu[e.mask() & f.mask()] != 0) {
        violate("null ideal not closed under meet at " + to_string(e) + ", " + to_string(f));
      }
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++rep.checks;
      const Mask c = conjugate_mask(s.images()[i], n, e.mask());
      if (mu[c] != 0) {
        violate("null ideal not closed under conjugation: " + to_string(s.element(i)) + " moves " +
                to_string(e) + " to " + mask_name(s, c));
      }
    }
  }
  return rep;
}

AxiomReport check_axioms(const FiniteBIM& s, const MeanVector& mu) {
  return check_axioms(s, valuation_of(s, mu));
}

bool is_faithful(const FiniteBIM& s, const MeanVector& mu) {
  require_shape(s, mu);
  for (std::size_t c = 0; c < s.class_count(); ++c) {
    if (mu.class_values[c] == 0) return false;
  }
  return true;
}

LocalMean restrict_mean(const FiniteBIM& s, const MeanVector& nu, const SubsetIdempotent& e) {
  const Rational mass = mean_of(s, nu, e);
  if (mass == 0) fail(Errc::ZeroMass, "nu" + to_string(e) + " = 0");
  FiniteBIM local = local_monoid(s, e);
  RationalVector values(local.class_count());
  std::vector<bool> set(local.class_count(), false);
  for (std::size_t a = 0; a < local.atoms().size(); ++a) {
    const SubsetIdempotent outer = from_local(e, local.atoms()[a]);
    const auto idx = s.atom_index(outer);
    if (!idx) fail(Errc::InternalInvariantViolation, "local atom is not an atom of S");
    const std::size_t c = local.class_of_atom(a);
    const Rational v = nu.class_values[s.class_of_atom(*idx)] / mass;
    if (set[c] && values[c] != v) {
      fail(Errc::InternalInvariantViolation, "local atom class carries two values");
    }
    values[c] = v;
    set[c] = true;
  }
  return LocalMean{std::move(local), MeanVector{std::move(values)}};
}

std::vector<PartialBijection> units(const FiniteBIM& s) {
  std::vector<PartialBijection> out;
  const Mask one = s.ground().full_mask();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.domain_mask(i) == one) out.push_back(s.element(i));
  }
  return out;
}

bool is_piecewise_factorizable(const FiniteBIM& s) {
  const auto us = units(s);
  // Restrictions of units to each atom.
  std::vector<std::unordered_set<Image, ImageHash>> pieces(s.atoms().size());
  for (std::size_t a = 0; a < s.atoms().size(); ++a) {
    for (const auto& g : us) pieces[a].insert(restrict_domain(g, s.atoms()[a]).image());
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const PartialBijection x = s.element(i);
    for (std::size_t a : s.atoms_below(domain(x))) {
      if (!pieces[a].contains(restrict_domain(x, s.atoms()[a]).image())) return false;
    }
  }
  return true;
}

UnitInvarianceResult check_unit_invariance(const FiniteBIM& s, const IdempotentValuation& sigma) {
  if (!is_piecewise_factorizable(s)) {
    fail(Errc::NotPiecewiseFactorizable, "some element is not a join of unit restrictions");
  }
  const int n = s.ground().size();
  if (sigma.size() != (std::size_t{1} << n)) {
    fail(Errc::InvalidArgument, "valuation must cover all 2^n masks");
  }
  UnitInvarianceResult out;
  const Mask one = s.ground().full_mask();
  if (sigma[one] != 1) {
    out.reason = "sigma(1) = " + to_string(sigma[one]);
    return out;
  }
  for (const auto& e : s.idempotents()) {
    if (sigma[e.mask()] < 0) {
      out.reason = "sigma" + to_string(e) + " is negative";
      return out;
    }
  }
  for (const auto& g : units(s)) {
    for (const auto& e : s.idempotents()) {
      const Mask c = conjugate_mask(g.image(), n, e.mask());
      if (sigma[c] != sigma[e.mask()]) {
        out.reason = "conjugation by " + to_string(g) + " moves " + to_string(e) + " to " +
                     mask_name(s, c) + " with a different value";
        return out;
      }
    }
  }
  for (const auto& e : s.idempotents()) {
    for (const auto& f : s.idempotents()) {
      if ((e.mask() & f.mask()) == 0 && sigma[e.mask() | f.mask()] != sigma[e.mask()] + sigma[f.mask()]) {
        out.reason = "not additive on " + to_string(e) + ", " + to_string(f);
        return out;
      }
    }
  }
  out.holds = true;
  out.extension = sigma;
  out.extension_report = check_axioms(s, sigma);
  return out;
}

bool large_idempotent_bound(const FiniteBIM& s, const MeanVector& mu, const SubsetIdempotent& e,
                            const Pencil& p) {
  if (p.target != s.one() || p.bound != e || p.elements.empty()) {
    fail(Errc::InvalidPencil, "expected a pencil from 1 to " + to_string(e));
  }
  validate_pencil(s, p);
  return mean_of(s, mu, e) * static_cast<long>(p.elements.size()) >= 1;
}

}  // namespace imean
