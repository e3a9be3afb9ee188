#include "egyfrac/simd/kernels.hpp"

namespace egyfrac::simd {

namespace {

void add_u64(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

std::uint32_t first_index(const GatherFactor& f, std::uint64_t offset) {
  const unsigned __int128 idx =
      static_cast<unsigned __int128>(offset) * f.step + f.start;
  return static_cast<std::uint32_t>(idx % f.modulus);
}

void complex_products(std::span<const GatherFactor> factors,
                      std::uint64_t offset, std::size_t count, double* out_re,
                      double* out_im) {
  for (std::size_t j = 0; j < count; ++j) {
    out_re[j] = 1.0;
    out_im[j] = 0.0;
  }
  for (const auto& f : factors) {
    std::uint32_t idx = first_index(f, offset);
    for (std::size_t j = 0; j < count; ++j) {
      const double ar = out_re[j];
      const double ai = out_im[j];
      const double tr = f.re[idx];
      const double ti = f.im[idx];
      out_re[j] = ar * tr - ai * ti;
      out_im[j] = ar * ti + ai * tr;
      idx += f.step;
      if (idx >= f.modulus) idx -= f.modulus;
    }
  }
}

void real_products(std::span<const GatherFactor> factors, std::uint64_t offset,
                   std::size_t count, double* out) {
  for (std::size_t j = 0; j < count; ++j) out[j] = 1.0;
  for (const auto& f : factors) {
    std::uint32_t idx = first_index(f, offset);
    for (std::size_t j = 0; j < count; ++j) {
      out[j] = out[j] * f.re[idx];
      idx += f.step;
      if (idx >= f.modulus) idx -= f.modulus;
    }
  }
}

}  // namespace

namespace detail {
const KernelTable kScalarKernels{Isa::scalar, &add_u64, &complex_products,
                                 &real_products};
}  // namespace detail

}  // namespace egyfrac::simd
