#pragma once

// Batch kernels over image tables. A partial bijection on at most 16 points is
// a 16-byte table, and composition is a byte shuffle of one table by another,
// so the closure loops in bim spend most of their time here.
//
// Every variant computes exactly what the scalar reference computes; the
// dispatcher picks the widest one the running CPU supports.

#include <span>
#include <string_view>

#include "imean/pbij.hpp"

namespace imean::kernels {

enum class Isa { scalar, ssse3, avx2, neon };

std::string_view name(Isa isa) noexcept;

struct KernelTable {
  // out[i] = a ∘ bs[i]
  void (*compose_left)(const Image& a, std::span<const Image> bs, std::span<Image> out);
  // out[i] = as[i] ∘ b
  void (*compose_right)(std::span<const Image> as, const Image& b, std::span<Image> out);
  // bit x of out[i] is set iff imgs[i][x] is defined
  void (*domain_masks)(std::span<const Image> imgs, std::span<Mask> out);
};

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

Isa detected_isa() noexcept;
Isa active_isa() noexcept;
// Throws InvalidArgument when the variant is unavailable.
void set_active_isa(Isa isa);

void compose_left(const Image& a, std::span<const Image> bs, std::span<Image> out);
void compose_right(std::span<const Image> as, const Image& b, std::span<Image> out);
void domain_masks(std::span<const Image> imgs, std::span<Mask> out);

namespace detail {
const KernelTable& scalar_table() noexcept;
const KernelTable* ssse3_table() noexcept;
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace imean::kernels
