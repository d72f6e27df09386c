#pragma once

// One Poisson-Binomial convolution step: out[j] = in[j](1-p) + in[j-1]p for
// j = 0..n, with in[-1] = in[n] = 0. `in` holds n values, `out` n+1.
// The vector variants use separate multiply and add (no FMA) so they round
// exactly like the scalar reference.

#include <cstddef>
#include <string>

namespace gridmaint::kernels {

using ConvolveFn = void (*)(const double* in, double* out, std::size_t n, double p);

void pb_convolve_scalar(const double* in, double* out, std::size_t n, double p);
#if defined(__x86_64__) || defined(_M_X64)
void pb_convolve_avx2(const double* in, double* out, std::size_t n, double p);
#endif
#if defined(__aarch64__)
void pb_convolve_neon(const double* in, double* out, std::size_t n, double p);
#endif

enum class Isa { Scalar, Avx2, Neon };

// Best variant the running CPU supports; GRIDMAINT_KERNEL=scalar|avx2|neon overrides.
Isa detect_isa();
bool isa_supported(Isa isa);
ConvolveFn convolve_for(Isa isa);
ConvolveFn active_convolve();
const char* isa_name(Isa isa);

// Pins the dispatch (tests); returns false if the CPU lacks the ISA.
bool force_isa(Isa isa);
void reset_isa();

}  // namespace gridmaint::kernels
