#include <atomic>

#include "imean/kernels.hpp"

namespace imean::kernels {

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::ssse3: return "ssse3";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return &detail::scalar_table();
    case Isa::ssse3: return detail::ssse3_table();
    case Isa::avx2: return detail::avx2_table();
    case Isa::neon: return detail::neon_table();
  }
  return nullptr;
}

Isa detected_isa() noexcept {
  for (Isa isa : {Isa::avx2, Isa::neon, Isa::ssse3}) {
    if (table_for(isa) != nullptr) return isa;
  }
  return Isa::scalar;
}

namespace {

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

const KernelTable& current() noexcept { return *table_for(active().load(std::memory_order_relaxed)); }

}  // namespace

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (table_for(isa) == nullptr) {
    fail(Errc::InvalidArgument, "kernel variant " + std::string(name(isa)) + " unavailable");
  }
  active().store(isa, std::memory_order_relaxed);
}

void compose_left(const Image& a, std::span<const Image> bs, std::span<Image> out) {
  current().compose_left(a, bs, out);
}

void compose_right(std::span<const Image> as, const Image& b, std::span<Image> out) {
  current().compose_right(as, b, out);
}

void domain_masks(std::span<const Image> imgs, std::span<Mask> out) {
  current().domain_masks(imgs, out);
}

}  // namespace imean::kernels
