#include "imean/typemonoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace imean {

namespace {

std::uint64_t degree(const TypeElement& w) { return std::accumulate(w.begin(), w.end(), std::uint64_t{0}); }

bool dominates(const TypeElement& w, const TypeElement& x) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < x[i]) return false;
  }
  return true;
}

void require_rank(const TypePresentation& p, const TypeElement& x) {
  if (x.size() != p.rank()) {
    fail(Errc::InvalidArgument, "element has " + std::to_string(x.size()) +
                                    " coefficients, presentation has " + std::to_string(p.rank()) +
                                    " generators");
  }
}

struct Exploration {
  bool found = false;
  bool pruned = false;
};

// Breadth-first walk of the congruence class of `start`, stopping at the
// first word satisfying `goal`.
template <class Goal>
Exploration explore(const TypePresentation& p, const TypeElement& start, std::size_t bound, Goal goal) {
  Exploration ex;
  std::set<TypeElement> seen{start};
  std::deque<TypeElement> queue{start};
  while (!queue.empty()) {
    TypeElement w = std::move(queue.front());
    queue.pop_front();
    if (goal(w)) {
      ex.found = true;
      return ex;
    }
    for (const auto& r : p.relations) {
      if (!dominates(w, r.lhs)) continue;
      TypeElement next(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) next[i] = w[i] - r.lhs[i] + r.rhs[i];
      if (degree(next) > bound) {
        ex.pruned = true;
        continue;
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return ex;
}

}  // namespace

TypeElement operator+(const TypeElement& a, const TypeElement& b) {
  if (a.size() != b.size()) fail(Errc::InvalidArgument, "type elements of different rank");
  TypeElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

TypeElement scale(const TypeElement& a, std::uint64_t k) {
  TypeElement out(a);
  for (auto& v : out) v *= k;
  return out;
}

void TypePresentation::add_relation(TypeRelation r) {
  require_rank(*this, r.lhs);
  require_rank(*this, r.rhs);
  if (r.lhs == r.rhs) return;
  TypeRelation mirror{r.rhs, r.lhs};
  if (std::find(relations.begin(), relations.end(), r) == relations.end()) relations.push_back(r);
  if (std::find(relations.begin(), relations.end(), mirror) == relations.end()) {
    relations.push_back(std::move(mirror));
  }
}

TypePresentation present(const FiniteBIM& s) {
  TypePresentation p;
  for (std::size_t c = 0; c < s.class_count(); ++c) p.generators.push_back("g" + std::to_string(c));
  p.atoms = s.atoms();
  for (std::size_t a = 0; a < s.atoms().size(); ++a) p.atom_generator.push_back(s.class_of_atom(a));
  for (const auto& e : s.idempotents()) p.idempotents.push_back(e.mask());
  p.unit = delta(p, s.one());
  for (const auto& e : s.idempotents()) {
    for (const auto& f : s.idempotents()) {
      if (f.mask() <= e.mask() || !s.d_witness(e.mask(), f.mask())) continue;
      p.add_relation({delta(p, e), delta(p, f)});
    }
  }
  return p;
}

TypeElement delta(const TypePresentation& p, const SubsetIdempotent& e) {
  if (p.atoms.empty()) fail(Errc::InvalidArgument, "presentation carries no monoid data");
  if (!std::binary_search(p.idempotents.begin(), p.idempotents.end(), e.mask()) ||
      e.ground() != p.atoms.front().ground()) {
    fail(Errc::NotAnElement, to_string(e) + " is not an idempotent of the presented monoid");
  }
  TypeElement out(p.rank(), 0);
  for (std::size_t a = 0; a < p.atoms.size(); ++a) {
    if ((p.atoms[a].mask() & ~e.mask()) == 0) ++out[p.atom_generator[a]];
  }
  return out;
}

std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::yes: return "true";
    case Decision::no: return "false";
    case Decision::unknown: return "unknown";
  }
  return "unknown";
}

Decision leq(const TypePresentation& p, const TypeElement& x, const TypeElement& y, std::size_t bound) {
  require_rank(p, x);
  require_rank(p, y);
  const auto ex = explore(p, y, std::max<std::size_t>(bound, degree(y)),
                          [&](const TypeElement& w) { return dominates(w, x); });
  if (ex.found) return Decision::yes;
  return ex.pruned ? Decision::unknown : Decision::no;
}

Decision equivalent(const TypePresentation& p, const TypeElement& x, const TypeElement& y,
                    std::size_t bound) {
  require_rank(p, x);
  require_rank(p, y);
  const auto ex = explore(p, y, std::max<std::size_t>(bound, degree(y)),
                          [&](const TypeElement& w) { return w == x; });
  if (ex.found) return Decision::yes;
  return ex.pruned ? Decision::unknown : Decision::no;
}

ObstructionResult tarski_obstruction(const TypePresentation& p, std::size_t n_max, std::size_t bound) {
  ObstructionResult out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.tested_up_to = n;
    const Decision d = leq(p, scale(p.unit, n + 1), scale(p.unit, n), bound);
    if (d == Decision::yes) {
      out.n = n;
      return out;
    }
    if (d == Decision::unknown) out.inconclusive = true;
  }
  return out;
}

std::vector<SubsetIdempotent> d_class(const FiniteBIM& s, const SubsetIdempotent& e) {
  s.require_idempotent(e);
  std::vector<SubsetIdempotent> out;
  for (const auto& f : s.idempotents()) {
    if (s.d_witness(e.mask(), f.mask())) out.push_back(f);
  }
  return out;
}

SubsetIdempotent class_representative(const FiniteBIM& s, const SubsetIdempotent& e) {
  return d_class(s, e).front();
}

std::optional<SubsetIdempotent> oplus_partial(const FiniteBIM& s, const SubsetIdempotent& e,
                                              const SubsetIdempotent& f) {
  const auto es = d_class(s, e);
  const auto fs = d_class(s, f);
  std::optional<SubsetIdempotent> result;
  for (const auto& e1 : es) {
    for (const auto& f1 : fs) {
      if ((e1.mask() & f1.mask()) != 0) continue;
      const SubsetIdempotent rep = class_representative(s, join(e1, f1));
      if (result && *result != rep) {
        fail(Errc::InternalInvariantViolation,
             "orthogonal representatives give different classes: " + to_string(*result) + " vs " +
                 to_string(rep));
      }
      result = rep;
    }
  }
  return result;
}

}  // namespace imean
