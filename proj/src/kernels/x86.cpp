#include "imean/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define IMEAN_TARGET_SSSE3 __attribute__((target("ssse3")))
#define IMEAN_TARGET_AVX2 __attribute__((target("avx2")))

namespace imean::kernels::detail {

namespace {

// pshufb yields 0 for indices with the high bit set; undefined slots (0xFF)
// are restored by OR-ing the sign mask of the index vector back in.
IMEAN_TARGET_SSSE3 inline __m128i shuffle_compose(__m128i table, __m128i idx) {
  const __m128i undefined = _mm_cmplt_epi8(idx, _mm_setzero_si128());
  return _mm_or_si128(_mm_shuffle_epi8(table, idx), undefined);
}

IMEAN_TARGET_AVX2 inline __m256i shuffle_compose(__m256i table, __m256i idx) {
  const __m256i undefined = _mm256_cmpgt_epi8(_mm256_setzero_si256(), idx);
  return _mm256_or_si256(_mm256_shuffle_epi8(table, idx), undefined);
}

inline const void* ptr(const Image& img) { return img.data(); }
inline void* ptr(Image& img) { return img.data(); }

IMEAN_TARGET_SSSE3 void ssse3_compose_left(const Image& a, std::span<const Image> bs,
                                           std::span<Image> out) {
  const __m128i table = _mm_loadu_si128(static_cast<const __m128i*>(ptr(a)));
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const __m128i idx = _mm_loadu_si128(static_cast<const __m128i*>(ptr(bs[i])));
    _mm_storeu_si128(static_cast<__m128i*>(ptr(out[i])), shuffle_compose(table, idx));
  }
}

IMEAN_TARGET_SSSE3 void ssse3_compose_right(std::span<const Image> as, const Image& b,
                                            std::span<Image> out) {
  const __m128i idx = _mm_loadu_si128(static_cast<const __m128i*>(ptr(b)));
  for (std::size_t i = 0; i < as.size(); ++i) {
    const __m128i table = _mm_loadu_si128(static_cast<const __m128i*>(ptr(as[i])));
    _mm_storeu_si128(static_cast<__m128i*>(ptr(out[i])), shuffle_compose(table, idx));
  }
}

IMEAN_TARGET_SSSE3 void ssse3_domain_masks(std::span<const Image> imgs, std::span<Mask> out) {
  const __m128i undefined = _mm_set1_epi8(static_cast<char>(kUndefined));
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    const __m128i v = _mm_loadu_si128(static_cast<const __m128i*>(ptr(imgs[i])));
    const int hits = _mm_movemask_epi8(_mm_cmpeq_epi8(v, undefined));
    out[i] = static_cast<Mask>(~hits & 0xFFFF);
  }
}

IMEAN_TARGET_AVX2 void avx2_compose_left(const Image& a, std::span<const Image> bs,
                                         std::span<Image> out) {
  const __m128i a128 = _mm_loadu_si128(static_cast<const __m128i*>(ptr(a)));
  const __m256i table = _mm256_broadcastsi128_si256(a128);
  std::size_t i = 0;
  for (; i + 2 <= bs.size(); i += 2) {
    const __m256i idx = _mm256_loadu_si256(static_cast<const __m256i*>(ptr(bs[i])));
    _mm256_storeu_si256(static_cast<__m256i*>(ptr(out[i])), shuffle_compose(table, idx));
  }
  if (i < bs.size()) {
    const __m128i idx = _mm_loadu_si128(static_cast<const __m128i*>(ptr(bs[i])));
    const __m128i res = _mm_or_si128(_mm_shuffle_epi8(a128, idx),
                                     _mm_cmplt_epi8(idx, _mm_setzero_si128()));
    _mm_storeu_si128(static_cast<__m128i*>(ptr(out[i])), res);
  }
}

IMEAN_TARGET_AVX2 void avx2_compose_right(std::span<const Image> as, const Image& b,
                                          std::span<Image> out) {
  const __m128i b128 = _mm_loadu_si128(static_cast<const __m128i*>(ptr(b)));
  const __m256i idx = _mm256_broadcastsi128_si256(b128);
  std::size_t i = 0;
  for (; i + 2 <= as.size(); i += 2) {
    const __m256i table = _mm256_loadu_si256(static_cast<const __m256i*>(ptr(as[i])));
    _mm256_storeu_si256(static_cast<__m256i*>(ptr(out[i])), shuffle_compose(table, idx));
  }
  if (i < as.size()) {
    const __m128i table = _mm_loadu_si128(static_cast<const __m128i*>(ptr(as[i])));
    const __m128i res = _mm_or_si128(_mm_shuffle_epi8(table, b128),
                                     _mm_cmplt_epi8(b128, _mm_setzero_si128()));
    _mm_storeu_si128(static_cast<__m128i*>(ptr(out[i])), res);
  }
}

IMEAN_TARGET_AVX2 void avx2_domain_masks(std::span<const Image> imgs, std::span<Mask> out) {
  const __m256i undefined = _mm256_set1_epi8(static_cast<char>(kUndefined));
  std::size_t i = 0;
  for (; i + 2 <= imgs.size(); i += 2) {
    const __m256i v = _mm256_loadu_si256(static_cast<const __m256i*>(ptr(imgs[i])));
    const auto hits = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, undefined)));
    out[i] = ~hits & 0xFFFFu;
    out[i + 1] = (~hits >> 16) & 0xFFFFu;
  }
  if (i < imgs.size()) {
    const __m128i v = _mm_loadu_si128(static_cast<const __m128i*>(ptr(imgs[i])));
    const int hits = _mm_movemask_epi8(_mm_cmpeq_epi8(v, _mm_set1_epi8(static_cast<char>(kUndefined))));
    out[i] = static_cast<Mask>(~hits & 0xFFFF);
  }
}

}  // namespace

const KernelTable* ssse3_table() noexcept {
  static const KernelTable table{ssse3_compose_left, ssse3_compose_right, ssse3_domain_masks};
  return __builtin_cpu_supports("ssse3") ? &table : nullptr;
}

const KernelTable* avx2_table() noexcept {
  static const KernelTable table{avx2_compose_left, avx2_compose_right, avx2_domain_masks};
  return __builtin_cpu_supports("avx2") ? &table : nullptr;
}

}  // namespace imean::kernels::detail

#else

namespace imean::kernels::detail {
const KernelTable* ssse3_table() noexcept { return nullptr; }
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace imean::kernels::detail

#endif
