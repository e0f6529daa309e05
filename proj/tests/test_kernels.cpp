#include <catch_amalgamated.hpp>

#include "imean/bim.hpp"
#include "imean/kernels.hpp"
#include "support.hpp"

using namespace imean;
namespace k = imean::kernels;

namespace {

std::vector<k::Isa> available() {
  std::vector<k::Isa> out;
  for (auto isa : {k::Isa::scalar, k::Isa::ssse3, k::Isa::avx2, k::Isa::neon}) {
    if (k::table_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

struct IsaGuard {
  k::Isa saved = k::active_isa();
  ~IsaGuard() { k::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("scalar table is always present and dispatch picks an available variant") {
  CHECK(k::table_for(k::Isa::scalar) != nullptr);
  CHECK(k::table_for(k::detected_isa()) != nullptr);
  CHECK(k::table_for(k::active_isa()) != nullptr);
  for (auto isa : {k::Isa::ssse3, k::Isa::avx2, k::Isa::neon}) {
    if (k::table_for(isa) == nullptr) {
      CHECK_THROWS_AS(k::set_active_isa(isa), Error);
    }
  }
}

TEST_CASE("every variant matches the scalar reference and the pointwise oracle") {
  std::mt19937_64 rng(11);
  const auto& ref = *k::table_for(k::Isa::scalar);
  for (auto isa : available()) {
    INFO("variant " << k::name(isa));
    const auto& tab = *k::table_for(isa);
    for (int n = 1; n <= kMaxGround; ++n) {
      GroundSet g(n);
      for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 16u, 33u}) {
        std::vector<Image> bs(len), out(len), expect(len);
        std::vector<PartialBijection> maps;
        for (auto& b : bs) {
          maps.push_back(support::random_pbij(rng, g));
          b = maps.back().image();
        }
        auto a = support::random_pbij(rng, g);

        tab.compose_left(a.image(), bs, out);
        ref.compose_left(a.image(), bs, expect);
        CHECK(out == expect);
        for (std::size_t i = 0; i < len; ++i) {
          CHECK(support::to_map(PartialBijection::from_image(g, out[i])) ==
                oracle::compose(support::to_map(a), support::to_map(maps[i])));
        }

        tab.compose_right(bs, a.image(), out);
        ref.compose_right(bs, a.image(), expect);
        CHECK(out == expect);
        for (std::size_t i = 0; i < len; ++i) {
          CHECK(support::to_map(PartialBijection::from_image(g, out[i])) ==
                oracle::compose(support::to_map(maps[i]), support::to_map(a)));
        }

        std::vector<Mask> masks(len), masks_ref(len);
        tab.domain_masks(bs, masks);
        ref.domain_masks(bs, masks_ref);
        CHECK(masks == masks_ref);
        for (std::size_t i = 0; i < len; ++i) CHECK(masks[i] == maps[i].domain_mask());
      }
    }
  }
}

TEST_CASE("closure is identical under every variant") {
  IsaGuard guard;
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    GroundSet g(4);
    std::vector<PartialBijection> gens{support::random_pbij(rng, g), support::random_pbij(rng, g)};
    std::optional<FiniteBIM> first;
    for (auto isa : available()) {
      k::set_active_isa(isa);
      auto s = FiniteBIM::close(g, gens, 1000);
      if (!first) {
        first = s;
      } else {
        CHECK(s == *first);
      }
    }
  }
}
