#include "gridmaint/kernels/pb_convolve.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace gridmaint::kernels {

void pb_convolve_neon(const double* in, double* out, std::size_t n, double p) {
  const double q = 1.0 - p;
  if (n == 0) {
    out[0] = 0.0;
    return;
  }
  out[0] = in[0] * q;
  const float64x2_t vq = vdupq_n_f64(q);
  const float64x2_t vp = vdupq_n_f64(p);
  std::size_t j = 1;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t cur = vld1q_f64(in + j);
    const float64x2_t prev = vld1q_f64(in + j - 1);
    vst1q_f64(out + j, vaddq_f64(vmulq_f64(cur, vq), vmulq_f64(prev, vp)));
  }
  for (; j < n; ++j) out[j] = in[j] * q + in[j - 1] * p;
  out[n] = in[n - 1] * p;
}

}  // namespace gridmaint::kernels
#endif
