#include "imean/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace imean::kernels::detail {

namespace {

// tbl returns 0 for out-of-range indices; undefined slots come back via the
// sign bit of the index.
inline uint8x16_t shuffle_compose(uint8x16_t table, uint8x16_t idx) {
  const uint8x16_t undefined = vreinterpretq_u8_s8(vshrq_n_s8(vreinterpretq_s8_u8(idx), 7));
  return vorrq_u8(vqtbl1q_u8(table, idx), undefined);
}

void neon_compose_left(const Image& a, std::span<const Image> bs, std::span<Image> out) {
  const uint8x16_t table = vld1q_u8(a.data());
  for (std::size_t i = 0; i < bs.size(); ++i) {
    vst1q_u8(out[i].data(), shuffle_compose(table, vld1q_u8(bs[i].data())));
  }
}

void neon_compose_right(std::span<const Image> as, const Image& b, std::span<Image> out) {
  const uint8x16_t idx = vld1q_u8(b.data());
  for (std::size_t i = 0; i < as.size(); ++i) {
    vst1q_u8(out[i].data(), shuffle_compose(vld1q_u8(as[i].data()), idx));
  }
}

void neon_domain_masks(std::span<const Image> imgs, std::span<Mask> out) {
  static const uint8_t weights_data[16] = {1, 2, 4, 8, 16, 32, 64, 128,
                                           1, 2, 4, 8, 16, 32, 64, 128};
  const uint8x16_t weights = vld1q_u8(weights_data);
  const uint8x16_t undefined = vdupq_n_u8(kUndefined);
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const uint8x16_t defined = vmvnq_u8(vceqq_u8(vld1q_u8(imgs[i].data()), undefined));
    const uint8x16_t bits = vandq_u8(defined, weights);
    const Mask lo = vaddv_u8(vget_low_u8(bits));
    const Mask hi = vaddv_u8(vget_high_u8(bits));
    out[i] = lo | (hi << 8);
  }
}

}  // namespace

const KernelTable* neon_table() noexcept {
  static const KernelTable table{neon_compose_left, neon_compose_right, neon_domain_masks};
  return &table;
}

}  // namespace imean::kernels::detail

#else

namespace imean::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace imean::kernels::detail

#endif
