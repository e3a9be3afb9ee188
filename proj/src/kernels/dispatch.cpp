#include <atomic>
#include <cstdlib>
#include <string>

#include "egyfrac/errors.hpp"
#include "egyfrac/simd/kernels.hpp"

namespace egyfrac::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "auto") return best_isa();
  throw ParseError("unknown SIMD target '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(EGYFRAC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("SIMD target " + std::string(isa_name(isa)) +
                      " is not supported on this machine");
  }
#if defined(EGYFRAC_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::kAvx2Kernels;
#endif
  return detail::kScalarKernels;
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("EGYFRAC_SIMD")) {
    const Isa requested = parse_isa(env);
    if (isa_supported(requested)) return requested;
  }
  return best_isa();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels_for(initial_isa())};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() { return *active_slot().load(); }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa)); }

}  // namespace egyfrac::simd
