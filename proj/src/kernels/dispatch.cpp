#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gridmaint/kernels/pb_convolve.hpp"

namespace gridmaint::kernels {

namespace {

std::atomic<ConvolveFn> g_active{nullptr};

Isa from_env(Isa fallback) {
  const char* e = std::getenv("GRIDMAINT_KERNEL");
  if (!e) return fallback;
  if (std::strcmp(e, "scalar") == 0) return Isa::Scalar;
  if (std::strcmp(e, "avx2") == 0 && isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (std::strcmp(e, "neon") == 0 && isa_supported(Isa::Neon)) return Isa::Neon;
  return fallback;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  Isa best = Isa::Scalar;
  if (isa_supported(Isa::Avx2)) best = Isa::Avx2;
  else if (isa_supported(Isa::Neon)) best = Isa::Neon;
  return from_env(best);
}

ConvolveFn convolve_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      return pb_convolve_avx2;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return pb_convolve_neon;
#endif
    default:
      return pb_convolve_scalar;
  }
}

ConvolveFn active_convolve() {
  ConvolveFn f = g_active.load(std::memory_order_acquire);
  if (!f) {
    f = convolve_for(detect_isa());
    g_active.store(f, std::memory_order_release);
  }
  return f;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool force_isa(Isa isa) {
  if (!isa_supported(isa)) return false;
  g_active.store(convolve_for(isa), std::memory_order_release);
  return true;
}

void reset_isa() { g_active.store(nullptr, std::memory_order_release); }

}  // namespace gridmaint::kernels
