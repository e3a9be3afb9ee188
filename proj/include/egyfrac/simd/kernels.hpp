#pragma once

// Data-parallel inner loops behind the subset-sum DPs and the exponential
// sums. Every kernel has a scalar reference and optional vector variants;
// variants must produce bit-identical output to the reference (no FMA
// contraction, same operation order per lane).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace egyfrac::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
/// Accepts "scalar", "avx2" and "auto" (best supported).
Isa parse_isa(std::string_view name);
bool isa_supported(Isa isa);
Isa best_isa();

/// One factor of a gathered product: entry j of the product is
/// table[(start + j * step) mod modulus]. For complex kernels `im` holds the
/// imaginary parts; real kernels ignore it. Requires start, step < modulus
/// and modulus < 2^31.
struct GatherFactor {
  const double* re = nullptr;
  const double* im = nullptr;
  std::uint32_t modulus = 1;
  std::uint32_t start = 0;
  std::uint32_t step = 0;
};

struct KernelTable {
  Isa isa;
  /// dst[i] = a[i] + b[i] (mod 2^64). dst may alias a or b exactly.
  void (*add_u64)(std::uint64_t* dst, const std::uint64_t* a,
                  const std::uint64_t* b, std::size_t n);
  /// Entries [offset, offset + count) of the complex product over factors,
  /// accumulated left to right from 1 + 0i.
  void (*complex_products)(std::span<const GatherFactor> factors,
                           std::uint64_t offset, std::size_t count,
                           double* out_re, double* out_im);
  /// Same for a real product, from 1.
  void (*real_products)(std::span<const GatherFactor> factors,
                        std::uint64_t offset, std::size_t count, double* out);
};

const KernelTable& kernels_for(Isa isa);

/// The table used by library code. Chosen on first use from
/// EGYFRAC_SIMD (scalar|avx2|auto), defaulting to the best supported ISA.
const KernelTable& active_kernels();
void set_active_isa(Isa isa);

namespace detail {
extern const KernelTable kScalarKernels;
#if defined(EGYFRAC_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace egyfrac::simd
