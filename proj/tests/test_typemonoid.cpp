#include <catch_amalgamated.hpp>

#include "imean/rook.hpp"
#include "imean/typemonoid.hpp"
#include "support.hpp"

using namespace imean;

namespace {

SubsetIdempotent sub(GroundSet g, std::initializer_list<int> xs) {
  std::vector<int> v(xs);
  return SubsetIdempotent(g, std::span<const int>(v));
}

TypeElement sum_delta(const TypePresentation& p, const std::vector<SubsetIdempotent>& es) {
  TypeElement out(p.rank(), 0);
  for (const auto& e : es) out = out + delta(p, e);
  return out;
}

// Presented equality against D-relatedness of Δ(e) and Δ(f) in M_ω(S).
void check_against_rook_oracle(const FiniteBIM& s, std::size_t max_size) {
  const auto p = present(s);
  const auto ms = support::multisets(s.idempotents(), max_size);
  for (const auto& e : ms) {
    for (const auto& f : ms) {
      const bool oracle = find_diagonal_d_witness(s, e, f).has_value();
      const Decision d = equivalent(p, sum_delta(p, e), sum_delta(p, f));
      REQUIRE(d != Decision::unknown);
      CHECK((d == Decision::yes) == oracle);
    }
  }
}

}  // namespace

TEST_CASE("T(I_n) is N with unit n") {
  for (int n = 1; n <= 5; ++n) {
    const auto s = FiniteBIM::symmetric(n);
    const auto p = present(s);
    REQUIRE(p.rank() == 1);
    CHECK(p.unit == TypeElement{static_cast<std::uint64_t>(n)});
    // Every relation is trivial once atoms are collapsed to one class.
    CHECK(p.relations.empty());
    for (const auto& e : s.idempotents()) {
      CHECK(delta(p, e) == TypeElement{static_cast<std::uint64_t>(e.count())});
    }
  }
}

TEST_CASE("T of a semisimple monoid is N^k") {
  const std::vector<std::vector<int>> specs{{1, 2}, {2, 2}, {3, 1, 2}, {1, 1, 1, 1}};
  for (const auto& blocks : specs) {
    const auto s = FiniteBIM::semisimple({blocks});
    const auto p = present(s);
    REQUIRE(p.rank() == blocks.size());
    TypeElement unit;
    for (int b : blocks) unit.push_back(static_cast<std::uint64_t>(b));
    CHECK(p.unit == unit);
    CHECK(p.relations.empty());
  }
}

TEST_CASE("the two-element monoid") {
  GroundSet g(1);
  const auto s = FiniteBIM::close(g, {}, 10);
  const auto p = present(s);
  CHECK(p.rank() == 1);
  CHECK(p.unit == TypeElement{1});
}

TEST_CASE("delta examples") {
  const auto s = FiniteBIM::symmetric(3);
  const auto p = present(s);
  GroundSet g(3);
  CHECK(delta(p, SubsetIdempotent::empty(g)) == TypeElement{0});
  CHECK(delta(p, sub(g, {0, 2})) == TypeElement{2});
  CHECK(delta(p, sub(g, {0, 2})) == delta(p, sub(g, {1, 2})));

  const auto cyc = FiniteBIM::close(g, {PartialBijection(g, {{0, 1}, {1, 2}, {2, 0}})}, 100);
  const auto q = present(cyc);
  try {
    delta(q, sub(g, {0, 1}));
    FAIL("non-idempotent accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAnElement);
  }
  TypePresentation bare;
  bare.generators = {"g0"};
  bare.unit = {1};
  try {
    delta(bare, sub(g, {0}));
    FAIL("presentation without monoid data accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}

TEST_CASE("delta is a D-invariant additive order-unit map") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 25; ++t) {
    GroundSet g(4);
    const auto s = FiniteBIM::close(g, {support::random_pbij(rng, g), support::random_pbij(rng, g)}, 100000);
    const auto p = present(s);
    for (const auto& e : s.idempotents()) {
      CHECK(leq(p, delta(p, e), p.unit) == Decision::yes);
      for (const auto& f : s.idempotents()) {
        if (d_related(s, e, f)) CHECK(equivalent(p, delta(p, e), delta(p, f)) == Decision::yes);
        if ((e.mask() & f.mask()) == 0) CHECK(delta(p, join(e, f)) == delta(p, e) + delta(p, f));
      }
    }
  }
}

TEST_CASE("leq is antisymmetric on idempotents when D = J") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 25; ++t) {
    GroundSet g(4);
    const auto s = FiniteBIM::close(g, {support::random_pbij(rng, g)}, 100000);
    if (!check_d_eq_j(s)) continue;
    const auto p = present(s);
    for (const auto& e : s.idempotents()) {
      for (const auto& f : s.idempotents()) {
        const auto de = delta(p, e);
        const auto df = delta(p, f);
        if (leq(p, de, df) == Decision::yes && leq(p, df, de) == Decision::yes) {
          CHECK(d_related(s, e, f));
        }
      }
    }
  }
}

TEST_CASE("leq on free presentations is coordinatewise") {
  TypePresentation p;
  p.generators = {"a", "b", "c"};
  p.unit = {1, 1, 1};
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::uint64_t> c(0, 4);
  for (int t = 0; t < 200; ++t) {
    TypeElement x{c(rng), c(rng), c(rng)};
    TypeElement y{c(rng), c(rng), c(rng)};
    const bool expect = x[0] <= y[0] && x[1] <= y[1] && x[2] <= y[2];
    CHECK(leq(p, x, y) == (expect ? Decision::yes : Decision::no));
    CHECK(leq(p, x, x) == Decision::yes);
  }
}

TEST_CASE("leq uses relations and reports unknown when pruned") {
  TypePresentation p;
  p.generators = {"a", "b"};
  p.unit = {1, 0};
  p.add_relation({{1, 0}, {0, 2}});  // a = 2b
  CHECK(p.relations.size() == 2);
  p.add_relation({{0, 2}, {1, 0}});
  CHECK(p.relations.size() == 2);
  CHECK(leq(p, {0, 1}, {1, 0}) == Decision::yes);
  CHECK(leq(p, {0, 3}, {1, 0}) == Decision::no);
  CHECK(equivalent(p, {2, 0}, {1, 2}) == Decision::yes);

  TypePresentation grow;
  grow.generators = {"u"};
  grow.unit = {1};
  grow.add_relation({{1}, {2}});  // u = 2u: every class is unbounded
  CHECK(leq(grow, {5}, {1}, 4) == Decision::unknown);
  CHECK(leq(grow, {5}, {1}, 8) == Decision::yes);
}

TEST_CASE("Tarski obstruction") {
  for (int n = 1; n <= 4; ++n) {
    const auto r = tarski_obstruction(present(FiniteBIM::symmetric(n)), 10);
    CHECK_FALSE(r.n);
    CHECK_FALSE(r.inconclusive);
    CHECK(r.tested_up_to == 10);
    // (k+1)m > km in N.
    for (std::uint64_t k = 1; k <= 10; ++k) {
      CHECK(leq(present(FiniteBIM::symmetric(n)), {(k + 1) * n}, {k * n}) == Decision::no);
    }
  }
  CHECK_FALSE(tarski_obstruction(present(FiniteBIM::semisimple({{2, 3}})), 10).n);

  TypePresentation p;
  p.generators = {"u"};
  p.unit = {1};
  p.add_relation({{1}, {2}});
  const auto r = tarski_obstruction(p, 10);
  REQUIRE(r.n);
  CHECK(*r.n == 1);
}

TEST_CASE("oplus examples") {
  GroundSet g3(3);
  const auto i3 = FiniteBIM::symmetric(3);
  CHECK_FALSE(oplus_partial(i3, sub(g3, {0, 1}), sub(g3, {1, 2})));
  const auto z = oplus_partial(i3, SubsetIdempotent::empty(g3), sub(g3, {1, 2}));
  REQUIRE(z);
  CHECK(*z == class_representative(i3, sub(g3, {1, 2})));

  GroundSet g4(4);
  const auto i4 = FiniteBIM::symmetric(4);
  const auto r = oplus_partial(i4, sub(g4, {0, 1}), sub(g4, {0, 1}));
  REQUIRE(r);
  CHECK(*r == i4.one());
}

TEST_CASE("oplus is commutative and associative where defined") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 8; ++t) {
    GroundSet g(4);
    const auto s = FiniteBIM::close(g, {support::random_pbij(rng, g)}, 100000);
    std::vector<SubsetIdempotent> reps;
    for (const auto& e : s.idempotents()) {
      if (class_representative(s, e) == e) reps.push_back(e);
    }
    for (const auto& a : reps) {
      for (const auto& b : reps) {
        CHECK(oplus_partial(s, a, b) == oplus_partial(s, b, a));
        for (const auto& c : reps) {
          const auto ab = oplus_partial(s, a, b);
          const auto bc = oplus_partial(s, b, c);
          const auto left = ab ? oplus_partial(s, *ab, c) : std::nullopt;
          const auto right = bc ? oplus_partial(s, a, *bc) : std::nullopt;
          // Definedness may differ: ⊕ is only partial inside S.
          if (left && right) CHECK(*left == *right);
        }
      }
    }
  }
}

TEST_CASE("presentation agrees with the rook-matrix oracle") {
  GroundSet g3(3);
  check_against_rook_oracle(FiniteBIM::symmetric(2), 3);
  check_against_rook_oracle(FiniteBIM::semisimple({{1, 2}}), 3);
  check_against_rook_oracle(FiniteBIM::close(g3, {PartialBijection(g3, {{0, 1}, {1, 2}, {2, 0}})}, 1000), 3);
  check_against_rook_oracle(FiniteBIM::close(g3, {PartialBijection(g3, {{0, 1}})}, 1000), 3);
  check_against_rook_oracle(FiniteBIM::symmetric(3), 2);
}

TEST_CASE("2a = 2b implies a = b") {
  std::vector<FiniteBIM> monoids{FiniteBIM::symmetric(3), FiniteBIM::semisimple({{1, 2}}),
                                 FiniteBIM::semisimple({{2, 2}})};
  for (const auto& s : monoids) {
    const auto p = present(s);
    const auto ms = support::multisets(s.idempotents(), 2);
    for (const auto& x : ms) {
      for (const auto& y : ms) {
        const auto a = sum_delta(p, x);
        const auto b = sum_delta(p, y);
        if (equivalent(p, scale(a, 2), scale(b, 2)) == Decision::yes) {
          CHECK(equivalent(p, a, b) == Decision::yes);
        }
      }
    }
  }
}
