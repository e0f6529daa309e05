#include <catch_amalgamated.hpp>

#include "affine_support.hpp"
#include "imean/typemonoid.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace imean;
using support::eval;
using support::kuratowski_oracle;
using support::pointwise_certificate;

namespace {

AffineMap lin(std::int64_t a, std::int64_t b) { return AffineMap::linear(a, b); }

// Literal reading of the property with oracle D-scans.
bool kuratowski_property_oracle(const FiniteBIM& s) {
  std::set<oracle::Map> maps;
  for (const auto& a : s.elements()) maps.insert(support::to_map(a));
  auto members = [](const SubsetIdempotent& e) {
    auto v = e.members();
    return std::set<int>(v.begin(), v.end());
  };
  auto d = [&](const SubsetIdempotent& x, const SubsetIdempotent& y) {
    return oracle::d_related(maps, members(x), members(y));
  };
  const auto& idem = s.idempotents();
  for (const auto& e1 : idem) {
    for (const auto& e2 : idem) {
      if ((e1.mask() & e2.mask()) != 0 || !d(e1, e2)) continue;
      for (const auto& f1 : idem) {
        for (const auto& f2 : idem) {
          if ((f1.mask() & f2.mask()) != 0 || !d(f1, f2)) continue;
          if (d(join(e1, e2), join(f1, f2)) && !d(e1, f2)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("detect the doubling example") {
  const auto cert = detect_weak({lin(2, 0), lin(2, 1)}, 1);
  REQUIRE(cert);
  CHECK(cert->kind == ParadoxKind::weak);
  CHECK(cert->a == lin(2, 0));
  CHECK(cert->b == lin(2, 1));
  CHECK(cert->a_word == std::vector<std::size_t>{0});
  CHECK(cert->b_word == std::vector<std::size_t>{1});
  CHECK(verify(*cert));
  CHECK(range(cert->a) == PeriodicSet::residue_class(2, 0));
  CHECK(range(cert->b) == PeriodicSet::residue_class(2, 1));
  CHECK(pointwise_certificate(cert->a, cert->b, true));
  CHECK(is_strong_pair(cert->a, cert->b));
}

TEST_CASE("detect the tripling example") {
  const auto cert = detect_weak({lin(3, 0), lin(3, 1)}, 1);
  REQUIRE(cert);
  CHECK(verify(*cert));
  CHECK_FALSE(is_strong_pair(cert->a, cert->b));
  CHECK(pointwise_certificate(cert->a, cert->b, false));
  CHECK_FALSE(pointwise_certificate(cert->a, cert->b, true));
}

TEST_CASE("detection absent") {
  CHECK_FALSE(detect_weak({AffineMap::identity()}, 4));
  CHECK_FALSE(detect_weak({lin(2, 0)}, 4));
  CHECK_FALSE(detect_weak({}, 3));
  // Longer words: a·b has range {2 mod 4}, disjoint from a² = {0 mod 4}.
  const auto cert = detect_weak({lin(2, 0), lin(2, 1)}, 2);
  REQUIRE(cert);
  CHECK(cert->a_word.size() == 1);
}

TEST_CASE("detection needs word length two") {
  // Only products of two generators have disjoint ranges.
  const std::vector<AffineMap> gens{lin(2, 0), AffineMap({AffinePiece{2, 0, 2, 1}, AffinePiece{2, 1, 2, 0}})};
  CHECK_FALSE(detect_weak(gens, 1));
  const auto cert = detect_weak(gens, 2);
  REQUIRE(cert);
  CHECK(verify(*cert));
  CHECK(cert->b_word.size() == 2);
  CHECK(pointwise_certificate(cert->a, cert->b, false));
}

TEST_CASE("bike amplification examples") {
  const auto amp = bike_amplify(lin(2, 0), {lin(2, 1)});
  CHECK(verify(amp.certificate));
  CHECK(amp.certificate.a == lin(2, 0));
  CHECK(range(amp.certificate.b) == PeriodicSet::residue_class(2, 1));
  CHECK(amp.f == PeriodicSet::residue_class(2, 1));
  CHECK(amp.family.size() == 2);

  const std::vector<AffineMap> pencil{AffineMap({AffinePiece{2, 0, 4, 1}}),
                                      AffineMap({AffinePiece{2, 1, 4, 3}})};
  const auto four = bike_amplify(lin(4, 0), pencil);
  CHECK(verify(four.certificate));
  CHECK(four.certificate.a == lin(16, 0));
  CHECK(orthogonal(range(four.certificate.a), range(four.certificate.b)));
  CHECK(pointwise_certificate(four.certificate.a, four.certificate.b, false));
  for (std::size_t i = 0; i < four.family.size(); ++i) {
    for (std::size_t j = i + 1; j < four.family.size(); ++j) CHECK(orthogonal(four.family[i], four.family[j]));
  }
}

TEST_CASE("bike amplification rejects bad pencils") {
  auto code = [](const AffineMap& a, const std::vector<AffineMap>& pencil) {
    try {
      bike_amplify(a, pencil);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  // Domains miss the odds.
  CHECK(code(lin(4, 0), {AffineMap({AffinePiece{2, 0, 4, 1}})}) == Errc::BadPencil);
  // Range meets r(a).
  CHECK(code(lin(2, 0), {lin(1, 0)}) == Errc::BadPencil);
  // a not total.
  CHECK(code(inverse(lin(2, 0)), {lin(2, 1)}) == Errc::BadPencil);
  CHECK(code(lin(2, 0), {}) == Errc::BadPencil);
}

TEST_CASE("bike amplification over a family of instances") {
  for (std::int64_t k = 2; k <= 6; ++k) {
    for (std::int64_t m = 1; m <= 4; ++m) {
      // Pencil element i sends (i mod m) onto a residue mod km outside kℕ.
      std::vector<AffineMap> pencil;
      std::int64_t r = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        while (r % k == 0) ++r;
        pencil.push_back(AffineMap({AffinePiece{m, i, k * m, r++}}));
      }
      const auto amp = bike_amplify(lin(k, 0), pencil);
      CHECK(verify(amp.certificate));
      CHECK(domain(amp.certificate.b).is_naturals());
      CHECK(pointwise_certificate(amp.certificate.a, amp.certificate.b, false));
      REQUIRE(amp.family.size() == static_cast<std::size_t>(m + 1));
      for (std::size_t i = 0; i < amp.family.size(); ++i) {
        for (std::size_t j = i + 1; j < amp.family.size(); ++j) CHECK(orthogonal(amp.family[i], amp.family[j]));
      }
    }
  }
}

TEST_CASE("arden upgrade") {
  const auto weak = *detect_weak({lin(2, 0), lin(2, 1)}, 1);
  const auto strong = arden_upgrade(weak, lin(2, 1));
  CHECK(strong.kind == ParadoxKind::strong);
  CHECK(verify(strong));
  CHECK(pointwise_certificate(strong.a, strong.b, true));

  const auto triple = *detect_weak({lin(3, 0), lin(3, 1)}, 1);
  const AffineMap c({AffinePiece{2, 0, 3, 1}, AffinePiece{2, 1, 3, 2}});
  const auto up = arden_upgrade(triple, c);
  CHECK(verify(up));
  CHECK(pointwise_certificate(up.a, up.b, true));

  auto code = [](const ParadoxCertificate& cert, const AffineMap& w) {
    try {
      arden_upgrade(cert, w);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code(triple, lin(2, 1)) == Errc::BadWitness);
  CHECK(code(triple, lin(3, 1)) == Errc::BadWitness);
  CHECK(code(weak, inverse(lin(2, 1))) == Errc::BadWitness);
  ParadoxCertificate bogus{ParadoxKind::weak, lin(2, 0), lin(1, 0), {}, {}};
  CHECK_FALSE(verify(bogus));
  CHECK(code(bogus, lin(2, 1)) == Errc::BadWitness);
}

TEST_CASE("Kuratowski two-point cases") {
  GroundSet g(2);
  const SubsetIdempotent m(g, Mask{1});
  const PartialBijection swap01(g, {{0, 1}});
  KuratowskiInput in{g, m, swap01, m, swap01, PartialBijection::identity(g)};
  const auto out = kuratowski_bijection(in);
  CHECK(out.bijection == swap01);
  REQUIRE(out.pieces.size() == 1);
  CHECK(out.pieces[0].word == std::vector<KLetter>{KLetter::psi, KLetter::alpha});
  CHECK(verify(in, out));

  in.alpha = PartialBijection(g, {{0, 1}, {1, 0}});
  const auto out2 = kuratowski_bijection(in);
  CHECK(out2.bijection == swap01);
  CHECK(out2.pieces[0].word == std::vector<KLetter>{KLetter::alpha});
}

TEST_CASE("Kuratowski input validation") {
  GroundSet g(2);
  const SubsetIdempotent m(g, Mask{1});
  const PartialBijection swap01(g, {{0, 1}});
  auto code = [](const KuratowskiInput& in) {
    try {
      kuratowski_bijection(in);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code({g, m, swap01, m, swap01, PartialBijection(g, {{0, 0}})}) == Errc::NotBijective);
  CHECK(code({g, m, PartialBijection(g, {{0, 0}}), m, swap01, PartialBijection::identity(g)}) ==
        Errc::NotBijective);
  CHECK(code({g, SubsetIdempotent::full(g), swap01, m, swap01, PartialBijection::identity(g)}) ==
        Errc::NotBijective);
  GroundSet g3(3);
  CHECK(code({g, m, swap01, SubsetIdempotent(g3, Mask{1}), PartialBijection(g3, {{0, 1}}),
              PartialBijection::identity(g)}) == Errc::PartitionMismatch);
}

TEST_CASE("Kuratowski random instances") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 300; ++t) {
    const auto in = support::random_kuratowski(rng, 1 + t % 5);
    const auto out = kuratowski_bijection(in);
    CHECK(verify(in, out));
    CHECK(kuratowski_oracle(in, out));
    for (const auto& piece : out.pieces) {
      for (auto l : piece.word) {
        CHECK((l == KLetter::alpha || l == KLetter::phi || l == KLetter::psi || l == KLetter::phi_inv ||
               l == KLetter::psi_inv || l == KLetter::alpha_inv));
      }
    }
    // Tampering with a piece is caught: images lie in Q, outside d(ψ).
    if (!out.pieces.empty()) {
      auto bad = out;
      bad.pieces[0].word.insert(bad.pieces[0].word.begin(), KLetter::psi);
      CHECK_FALSE(verify(in, bad));
      CHECK_FALSE(kuratowski_oracle(in, bad));
    }
  }
}

TEST_CASE("Kuratowski property") {
  for (int n = 1; n <= 4; ++n) CHECK(check_kuratowski_property(FiniteBIM::symmetric(n)));
  CHECK(check_kuratowski_property(FiniteBIM::semisimple({{1, 2}})));
  CHECK(check_kuratowski_property(FiniteBIM::semisimple({{2, 2}})));
  CHECK(check_kuratowski_property(FiniteBIM::semisimple({{1, 1, 2}})));
  std::mt19937_64 rng(62);
  for (int t = 0; t < 40; ++t) {
    GroundSet g(4);
    const auto s = FiniteBIM::close(g, {support::random_pbij(rng, g), support::random_pbij(rng, g)}, 100000);
    CHECK(check_kuratowski_property(s) == kuratowski_property_oracle(s));
  }
}
