#include "gridmaint/kernels/pb_convolve.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace gridmaint::kernels {

__attribute__((target("avx2"))) void pb_convolve_avx2(const double* in, double* out, std::size_t n, double p) {
  const double q = 1.0 - p;
  if (n == 0) {
    out[0] = 0.0;
    return;
  }
  out[0] = in[0] * q;
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vp = _mm256_set1_pd(p);
  std::size_t j = 1;
  for (; j + 4 <= n; j += 4) {
    const __m256d cur = _mm256_loadu_pd(in + j);
    const __m256d prev = _mm256_loadu_pd(in + j - 1);
    _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_mul_pd(cur, vq), _mm256_mul_pd(prev, vp)));
  }
  for (; j < n; ++j) out[j] = in[j] * q + in[j - 1] * p;
  out[n] = in[n - 1] * p;
}

}  // namespace gridmaint::kernels
#endif
