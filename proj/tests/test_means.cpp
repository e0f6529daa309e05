#include <catch_amalgamated.hpp>

#include "imean/means.hpp"
#include "support.hpp"

using namespace imean;

namespace {

SubsetIdempotent sub(GroundSet g, std::initializer_list<int> xs) {
  std::vector<int> v(xs);
  return SubsetIdempotent(g, std::span<const int>(v));
}

// Atom classes by scanning for D-witnesses among the elements.
std::vector<std::size_t> oracle_classes(const FiniteBIM& s) {
  std::set<oracle::Map> maps;
  for (const auto& a : s.elements()) maps.insert(support::to_map(a));
  const auto& atoms = s.atoms();
  std::vector<std::size_t> cls(atoms.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto mi = atoms[i].members();
    std::size_t c = 0;
    for (; c < reps.size(); ++c) {
      auto mr = atoms[reps[c]].members();
      if (oracle::d_related(maps, {mr.begin(), mr.end()}, {mi.begin(), mi.end()})) break;
    }
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  return cls;
}

Rational value(const FiniteBIM& s, const MeanVector& mu, Mask m) {
  Rational v(0);
  for (std::size_t a = 0; a < s.atoms().size(); ++a) {
    if ((s.atoms()[a].mask() & m) == s.atoms()[a].mask()) v += mu.class_values[s.class_of_atom(a)];
  }
  return v;
}

}  // namespace

TEST_CASE("I_n has the unique mean 1/n per atom") {
  for (int n = 1; n <= 6; ++n) {
    auto sol = solve(FiniteBIM::symmetric(n));
    CHECK(sol.status == MeanStatus::unique);
    REQUIRE(sol.witness);
    CHECK(sol.witness->class_values == RationalVector{Rational(1, n)});
    CHECK(sol.vertices.size() == 1);
    CHECK(sol.vertices[0].class_values == sol.witness->class_values);
    CHECK(sol.dimension == 0);
  }
}

TEST_CASE("I_1 x I_2 polytope") {
  auto s = FiniteBIM::semisimple({{1, 2}});
  auto sol = solve(s);
  CHECK(sol.status == MeanStatus::polytope);
  REQUIRE(sol.vertices.size() == 2);
  CHECK(sol.vertices[0].class_values == RationalVector{Rational(0), Rational(1, 2)});
  CHECK(sol.vertices[1].class_values == RationalVector{Rational(1), Rational(0)});
  CHECK(sol.dimension == 1);
  REQUIRE(sol.witness);
  CHECK(is_faithful(s, *sol.witness));
  CHECK(sol.constraints.variables == std::vector<std::string>{"g0", "g1"});
  CHECK(sol.constraints.lhs == RationalMatrix{{Rational(1), Rational(2)}});
  CHECK(sol.constraints.rhs == RationalVector{Rational(1)});
  CHECK_FALSE(is_faithful(s, sol.vertices[1]));
}

TEST_CASE("{0,1} has the unique mean mu(1) = 1") {
  auto s = FiniteBIM::close(GroundSet(2), {}, 10);
  auto sol = solve(s);
  CHECK(sol.status == MeanStatus::unique);
  CHECK(sol.witness->class_values == RationalVector{Rational(1)});
  CHECK(mean_of(s, *sol.witness, s.one()) == 1);
}

TEST_CASE("vertex cap truncates but keeps the polytope status") {
  auto s = FiniteBIM::semisimple({{1, 1, 1, 1}});
  auto sol = solve(s, 2);
  CHECK(sol.status == MeanStatus::polytope);
  CHECK(sol.truncated);
  CHECK(sol.vertices.size() <= 2);
  CHECK(sol.dimension == 3);
  auto full = solve(s);
  CHECK_FALSE(full.truncated);
  CHECK(full.vertices.size() == 4);
}

TEST_CASE("solver witnesses satisfy IM1 pointwise on random monoids") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    GroundSet g(1 + t % 4);
    auto s = FiniteBIM::close(g, {support::random_pbij(rng, g), support::random_pbij(rng, g)}, 100000);
    auto cls = oracle_classes(s);
    for (std::size_t a = 0; a < cls.size(); ++a) {
      for (std::size_t b = 0; b < cls.size(); ++b) {
        CHECK((cls[a] == cls[b]) == (s.class_of_atom(a) == s.class_of_atom(b)));
      }
    }
    auto sol = solve(s);
    REQUIRE(sol.witness);
    const auto& mu = *sol.witness;
    CHECK(value(s, mu, g.full_mask()) == 1);
    for (const auto& x : s.elements()) CHECK(value(s, mu, x.domain_mask()) == value(s, mu, x.range_mask()));
    CHECK(check_axioms(s, mu).passed);
    CHECK(is_faithful(s, mu));
    const std::size_t k = s.class_count();
    CHECK(sol.dimension == k - 1);
    CHECK(sol.status == (k == 1 ? MeanStatus::unique : MeanStatus::polytope));
    for (const auto& v : sol.vertices) CHECK(check_axioms(s, v).passed);
  }
}

TEST_CASE("axiom checker reports violations") {
  auto i3 = FiniteBIM::symmetric(3);
  auto sol = solve(i3);
  auto report = check_axioms(i3, *sol.witness);
  CHECK(report.passed);
  CHECK(report.checks > 0);

  MeanVector unnormalized{{Rational(1, 2)}};
  auto bad = check_axioms(i3, unnormalized);
  CHECK_FALSE(bad.passed);
  CHECK(bad.violation.find("complement") != std::string::npos);

  // Concentrated on one atom: breaks IM1.
  IdempotentValuation v(8, Rational(0));
  for (Mask m = 0; m < 8; ++m) v[m] = (m & 1u) ? Rational(1) : Rational(0);
  auto im1 = check_axioms(i3, v);
  CHECK_FALSE(im1.passed);

  CHECK(is_faithful(i3, *sol.witness));
}

TEST_CASE("restriction to local monoids") {
  auto i3 = FiniteBIM::symmetric(3);
  GroundSet g(3);
  auto mu = *solve(i3).witness;
  auto whole = restrict_mean(i3, mu, i3.one());
  CHECK(whole.mean.class_values == mu.class_values);
  auto corner = restrict_mean(i3, mu, sub(g, {0, 1}));
  CHECK(corner.monoid == FiniteBIM::symmetric(2));
  CHECK(corner.mean.class_values == RationalVector{Rational(1, 2)});

  auto i12 = FiniteBIM::semisimple({{1, 2}});
  MeanVector vertex{{Rational(1), Rational(0)}};
  try {
    restrict_mean(i12, vertex, sub(g, {1, 2}));
    FAIL("zero mass accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroMass);
  }
}

TEST_CASE("unit invariance") {
  for (int n = 1; n <= 4; ++n) {
    auto s = FiniteBIM::symmetric(n);
    CHECK(is_piecewise_factorizable(s));
    IdempotentValuation rank(std::size_t{1} << n, Rational(0));
    for (Mask m = 0; m < rank.size(); ++m) rank[m] = ratio(std::popcount(m), n);
    auto r = check_unit_invariance(s, rank);
    CHECK(r.holds);
    REQUIRE(r.extension);
    CHECK(r.extension_report.passed);
    if (n >= 2) {
      IdempotentValuation point(rank.size(), Rational(0));
      for (Mask m = 0; m < point.size(); ++m) point[m] = (m & 1u) ? Rational(1) : Rational(0);
      CHECK_FALSE(check_unit_invariance(s, point).holds);
    }
  }
  auto trivial = FiniteBIM::close(GroundSet(1), {}, 10);
  CHECK(check_unit_invariance(trivial, IdempotentValuation{Rational(0), Rational(1)}).holds);

  // An inverse monoid whose only unit is 1 but with a non-trivial D-class.
  GroundSet g(2);
  auto s = FiniteBIM::close(g, {PartialBijection(g, {{0, 1}})}, 100);
  if (!is_piecewise_factorizable(s)) {
    IdempotentValuation any(4, Rational(0));
    CHECK_THROWS_AS(check_unit_invariance(s, any), Error);
  }
}

TEST_CASE("large idempotents carry at least 1/n") {
  for (int n = 1; n <= 4; ++n) {
    auto s = FiniteBIM::symmetric(n);
    auto mu = *solve(s).witness;
    GroundSet g(n);
    auto atom = sub(g, {0});
    auto p = is_large(s, atom);
    REQUIRE(p);
    CHECK(p->elements.size() == static_cast<std::size_t>(n));
    CHECK(large_idempotent_bound(s, mu, atom, *p));
    CHECK(mean_of(s, mu, atom) == Rational(1, n));
    auto q = is_large(s, s.one());
    REQUIRE(q);
    CHECK(large_idempotent_bound(s, mu, s.one(), *q));
  }
  auto i3 = FiniteBIM::symmetric(3);
  GroundSet g(3);
  Pencil wrong{sub(g, {0, 1}), {sub(g, {0, 1}).to_partial_identity()}, sub(g, {0, 1})};
  try {
    large_idempotent_bound(i3, *solve(i3).witness, sub(g, {0, 1}), wrong);
    FAIL("pencil not from 1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidPencil);
  }
}

TEST_CASE("0-simplifying monoids have only faithful means") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 40; ++t) {
    GroundSet g(1 + t % 4);
    auto s = FiniteBIM::close(g, {support::random_pbij(rng, g)}, 100000);
    if (!is_zero_simplifying(s)) continue;
    auto sol = solve(s);
    for (const auto& v : sol.vertices) CHECK(is_faithful(s, v));
  }
}

TEST_CASE("semisimple specs solve without building the monoid") {
  for (const auto& blocks : std::vector<std::vector<int>>{{3}, {1, 2}, {2, 1, 3}}) {
    const SemisimpleSpec spec{blocks};
    const auto direct = solve(spec);
    const auto built = solve(FiniteBIM::semisimple(spec));
    CHECK(direct.status == built.status);
    CHECK(direct.vertices == built.vertices);
    CHECK(direct.witness == built.witness);
  }
  const auto big = solve(SemisimpleSpec{{5, 5, 5, 5}});
  CHECK(big.status == MeanStatus::polytope);
  CHECK(big.vertices.size() == 4);
  CHECK(big.dimension == 3);
  CHECK_THROWS_AS(solve(SemisimpleSpec{{0}}), Error);
}
