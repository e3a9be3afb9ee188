// Compiled with -mavx2 only; reached through the dispatcher after a cpuid
// check, never called directly.

#include <immintrin.h>

#include <vector>

#include "egyfrac/simd/kernels.hpp"

namespace egyfrac::simd {

namespace {

void add_u64(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
             std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i + 4));
    const __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i + 4));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(a0, b0));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), _mm256_add_epi64(a1, b1));
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

constexpr std::uint32_t kMaxVectorModulus = 1u << 30;

// Per-factor lane state: the four table indices for the current block and
// the per-block advance.
struct LaneIndex {
  __m128i idx;
  __m128i advance;
  __m128i modulus_minus_one;
  __m128i modulus;
};

bool vectorizable(std::span<const GatherFactor> factors) {
  for (const auto& f : factors) {
    if (f.modulus >= kMaxVectorModulus) return false;
  }
  return true;
}

std::vector<LaneIndex> make_lanes(std::span<const GatherFactor> factors,
                                  std::uint64_t offset) {
  std::vector<LaneIndex> lanes;
  lanes.reserve(factors.size());
  for (const auto& f : factors) {
    alignas(16) std::uint32_t idx[4];
    for (std::uint32_t lane = 0; lane < 4; ++lane) {
      const unsigned __int128 v =
          static_cast<unsigned __int128>(offset + lane) * f.step + f.start;
      idx[lane] = static_cast<std::uint32_t>(v % f.modulus);
    }
    const auto adv = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(f.step) * 4) % f.modulus);
    lanes.push_back({_mm_load_si128(reinterpret_cast<const __m128i*>(idx)),
                     _mm_set1_epi32(static_cast<int>(adv)),
                     _mm_set1_epi32(static_cast<int>(f.modulus - 1)),
                     _mm_set1_epi32(static_cast<int>(f.modulus))});
  }
  return lanes;
}

inline void advance(LaneIndex& l) {
  __m128i next = _mm_add_epi32(l.idx, l.advance);
  const __m128i wrap = _mm_cmpgt_epi32(next, l.modulus_minus_one);
  next = _mm_sub_epi32(next, _mm_and_si128(wrap, l.modulus));
  l.idx = next;
}

void complex_products(std::span<const GatherFactor> factors,
                      std::uint64_t offset, std::size_t count, double* out_re,
                      double* out_im) {
  if (!vectorizable(factors)) {
    detail::kScalarKernels.complex_products(factors, offset, count, out_re, out_im);
    return;
  }
  const std::size_t blocks = count / 4;
  auto lanes = make_lanes(factors, offset);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t b = 0; b < blocks; ++b) {
    __m256d ar = one;
    __m256d ai = zero;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const __m256d tr = _mm256_i32gather_pd(factors[i].re, lanes[i].idx, 8);
      const __m256d ti = _mm256_i32gather_pd(factors[i].im, lanes[i].idx, 8);
      const __m256d nr = _mm256_sub_pd(_mm256_mul_pd(ar, tr), _mm256_mul_pd(ai, ti));
      const __m256d ni = _mm256_add_pd(_mm256_mul_pd(ar, ti), _mm256_mul_pd(ai, tr));
      ar = nr;
      ai = ni;
      advance(lanes[i]);
    }
    _mm256_storeu_pd(out_re + 4 * b, ar);
    _mm256_storeu_pd(out_im + 4 * b, ai);
  }
  const std::size_t done = blocks * 4;
  if (done < count) {
    detail::kScalarKernels.complex_products(factors, offset + done, count - done,
                                            out_re + done, out_im + done);
  }
}

void real_products(std::span<const GatherFactor> factors, std::uint64_t offset,
                   std::size_t count, double* out) {
  if (!vectorizable(factors)) {
    detail::kScalarKernels.real_products(factors, offset, count, out);
    return;
  }
  const std::size_t blocks = count / 4;
  auto lanes = make_lanes(factors, offset);
  for (std::size_t b = 0; b < blocks; ++b) {
    __m256d acc = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      acc = _mm256_mul_pd(acc, _mm256_i32gather_pd(factors[i].re, lanes[i].idx, 8));
      advance(lanes[i]);
    }
    _mm256_storeu_pd(out + 4 * b, acc);
  }
  const std::size_t done = blocks * 4;
  if (done < count) {
    detail::kScalarKernels.real_products(factors, offset + done, count - done,
                                         out + done);
  }
}

}  // namespace

namespace detail {
const KernelTable kAvx2Kernels{Isa::avx2, &add_u64, &complex_products,
                               &real_products};
}  // namespace detail

}  // namespace egyfrac::simd
