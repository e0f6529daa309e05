#include <catch_amalgamated.hpp>

#include "imean/af_tower.hpp"
#include "imean/means.hpp"
#include "towers.hpp"

using namespace imean;

namespace {

AFTower uhf(std::int64_t k, std::size_t depth) {
  AFTower t;
  t.levels.push_back({1});
  for (std::size_t i = 0; i < depth; ++i) {
    t.maps.push_back({{k}});
    t.levels.push_back({t.levels.back()[0] * k});
  }
  return t;
}

Errc code_of(const AFTower& t) {
  try {
    validate_tower(t);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("tower accepted");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("tower validation examples") {
  CHECK(check_tower(uhf(2, 3)).valid);
  CHECK_NOTHROW(validate_tower(uhf(2, 3)));

  AFTower bad{{{1}, {1, 2}}, {{{1}, {1}}}};
  const auto r = check_tower(bad);
  CHECK_FALSE(r.valid);
  CHECK(r.code == Errc::DimensionMismatch);
  CHECK(r.level == 1);
  CHECK(code_of(bad) == Errc::DimensionMismatch);

  AFTower zero{{{1}, {1, 1}, {2}}, {{{1}, {1}}, {{2, 0}}}};
  const auto z = check_tower(zero);
  CHECK(z.code == Errc::ZeroColumn);
  CHECK(z.level == 1);
  CHECK(z.column == 1);

  CHECK(code_of(AFTower{{{2}, {4}}, {{{2}}}}) == Errc::BadBase);
  // Wrong matrix shape is a dimension failure too.
  CHECK(code_of(AFTower{{{1}, {2}}, {{{2, 1}}}}) == Errc::DimensionMismatch);
  CHECK(code_of(AFTower{{{1}, {2}}, {}}) == Errc::DimensionMismatch);
}

TEST_CASE("pull_back examples") {
  const auto t = uhf(2, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const Rational y = ratio(1, 1L << (i + 1));
    CHECK(pull_back(t, i, {y}) == RationalVector{ratio(1, 1L << i)});
  }
  AFTower id{{{1}, {1}}, {{{1}}}};
  CHECK(pull_back(id, 0, {Rational(1)}) == RationalVector{Rational(1)});
  try {
    pull_back(t, 0, {ratio(1, 3)});
    FAIL("non-normalized accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotNormalized);
  }
}

TEST_CASE("pull_back preserves normalization in both directions") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = support::random_tower(rng, 1 + trial % 5, 4, 3);
    REQUIRE(check_tower(t).valid);
    for (std::size_t i = 0; i < t.depth(); ++i) {
      const auto y = support::random_normalized(rng, t.levels[i + 1], false);
      const auto x = pull_back(t, i, y);
      CHECK(dot(t.levels[i], x) == 1);
      for (const auto& v : x) CHECK(v >= 0);
      // Scaling y off normalization moves mᵀ(Mᵀy) by the same factor.
      RationalVector y2 = y;
      for (auto& v : y2) v *= 2;
      CHECK(dot(t.levels[i], multiply_transpose(t.maps[i], y2)) == 2);
      CHECK_THROWS_AS(pull_back(t, i, y2), Error);
    }
  }
}

TEST_CASE("tower means") {
  const auto t = uhf(2, 3);
  const auto mu = tower_mean(t, 3, {ratio(1, 8)});
  const std::vector<RationalVector> expect{{1}, {ratio(1, 2)}, {ratio(1, 4)}, {ratio(1, 8)}};
  CHECK(mu.levels == expect);
  CHECK(check_tower_mean(t, mu));
  CHECK(tower_mean(t, 0, {Rational(1)}).levels == std::vector<RationalVector>{{1}});

  // Two blocks at the top: both seeds give valid means.
  AFTower two{{{1}, {1, 1}}, {{{1}, {1}}}};
  for (const auto& seed : {RationalVector{1, 0}, RationalVector{0, 1}, RationalVector{ratio(1, 3), ratio(2, 3)}}) {
    const auto m = tower_mean(two, 1, seed);
    CHECK(check_tower_mean(two, m));
    CHECK(m.levels[0] == RationalVector{1});
  }
  CHECK_THROWS_AS(tower_mean(two, 1, {1, 1}), Error);

  TowerMean broken = mu;
  broken.levels[1][0] = ratio(1, 3);
  CHECK_FALSE(check_tower_mean(t, broken));
}

TEST_CASE("random tower means re-verify and stay positive") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = support::random_tower(rng, 1 + trial % 5, 4, 3);
    const bool positive = trial % 2 == 0;
    const auto seed = support::random_normalized(rng, t.levels.back(), positive);
    const auto mu = tower_mean(t, t.depth(), seed);
    CHECK(check_tower_mean(t, mu));
    for (std::size_t i = 0; i < t.depth(); ++i) {
      CHECK(multiply_transpose(t.maps[i], mu.levels[i + 1]) == mu.levels[i]);
    }
    if (positive) {
      for (const auto& level : mu.levels) {
        for (const auto& v : level) CHECK(v > 0);
      }
    }
  }
}

TEST_CASE("UHF unique means") {
  const auto mu = uhf_unique_mean(uhf(2, 6), 6);
  for (std::size_t i = 0; i <= 6; ++i) CHECK(mu.levels[i] == RationalVector{ratio(1, 1L << i)});
  const auto six = uhf_unique_mean(uhf(6, 4), 4);
  long p = 1;
  for (std::size_t i = 0; i <= 4; ++i, p *= 6) CHECK(six.levels[i] == RationalVector{ratio(1, p)});
  try {
    uhf_unique_mean(AFTower{{{1}, {1, 1}}, {{{1}, {1}}}}, 1);
    FAIL("multi-block level accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotUHF);
  }
}

TEST_CASE("UHF mean agrees with solve on realized levels") {
  const auto t = uhf(2, 3);
  const auto mu = uhf_unique_mean(t, 3);
  for (std::size_t i = 0; i <= 3; ++i) {
    const auto s = realize_level(t, i, 8);
    const auto sol = solve(s);
    REQUIRE(sol.status == MeanStatus::unique);
    for (const auto& e : s.idempotents()) {
      CHECK(mean_of(s, *sol.witness, e) == mu.levels[i][0] * e.count());
    }
  }
  CHECK_THROWS_AS(realize_level(uhf(2, 4), 4, 8), Error);
}

TEST_CASE("realized levels match closure") {
  AFTower t{{{1}, {1, 2}}, {{{1}, {2}}}};
  const auto s = realize_level(t, 1, 16);
  CHECK(s == FiniteBIM::close(s.ground(), semisimple_generators(level_spec(t, 1)), 100000));
  CHECK(s.size() == 2 * 7);
}

TEST_CASE("embedding of I_2 into I_4") {
  const auto t = uhf(2, 2);
  const TowerEmbedding tau(t, 1);
  CHECK(tau.source().size() == 2);
  CHECK(tau.target().size() == 4);
  const auto lower = realize_level(t, 1, 16);
  const auto upper = realize_level(t, 2, 16);
  for (const auto& a : lower.atoms()) {
    const auto img = tau(a);
    CHECK(upper.is_idempotent(img));
    CHECK(upper.atoms_below(img).size() == 2);
  }
  const auto mu = uhf_unique_mean(t, 2);
  const auto r = verify_embedding(t, 1, lower, upper, &mu);
  CHECK(r.ok());
  REQUIRE(r.mean_compatible);
  CHECK(*r.mean_compatible);

  AFTower id{{{1}, {1}}, {{{1}}}};
  const TowerEmbedding one(id, 0);
  GroundSet g(1);
  CHECK(one(PartialBijection::identity(g)) == PartialBijection::identity(g));
}

TEST_CASE("random embeddings are mean-compatible morphisms") {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 15; ++trial) {
    const auto t = support::random_tower(rng, 2, 3, 2);
    const auto total = [&](std::size_t i) {
      std::int64_t s = 0;
      for (auto v : t.levels[i]) s += v;
      return s;
    };
    if (total(2) > 6) continue;
    ++checked;
    const auto seed = support::random_normalized(rng, t.levels[2], trial % 2 == 0);
    const auto mu = tower_mean(t, 2, seed);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto lower = realize_level(t, i, 16);
      const auto upper = realize_level(t, i + 1, 16);
      const auto r = verify_embedding(t, i, lower, upper, &mu);
      CHECK(r.ok());
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("a wrong mean is detected as incompatible") {
  const auto t = uhf(2, 2);
  TowerMean mu{{{1}, {ratio(1, 2)}, {ratio(1, 2)}}};
  const auto r = verify_embedding(t, 1, realize_level(t, 1, 16), realize_level(t, 2, 16), &mu);
  REQUIRE(r.mean_compatible);
  CHECK_FALSE(*r.mean_compatible);
  CHECK_FALSE(r.ok());
}
