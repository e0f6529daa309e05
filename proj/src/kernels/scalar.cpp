#include "imean/kernels.hpp"

namespace imean::kernels::detail {

namespace {

inline Image compose_one(const Image& a, const Image& b) noexcept {
  Image out;
  for (int x = 0; x < kMaxGround; ++x) out[x] = b[x] == kUndefined ? kUndefined : a[b[x]];
  return out;
}

void compose_left(const Image& a, std::span<const Image> bs, std::span<Image> out) {
  for (std::size_t i = 0; i < bs.size(); ++i) out[i] = compose_one(a, bs[i]);
}

void compose_right(std::span<const Image> as, const Image& b, std::span<Image> out) {
  for (std::size_t i = 0; i < as.size(); ++i) out[i] = compose_one(as[i], b);
}

void domain_masks(std::span<const Image> imgs, std::span<Mask> out) {
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    Mask m = 0;
    for (int x = 0; x < kMaxGround; ++x) {
      if (imgs[i][x] != kUndefined) m |= Mask{1} << x;
    }
    out[i] = m;
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{compose_left, compose_right, domain_masks};
  return table;
}

}  // namespace imean::kernels::detail
