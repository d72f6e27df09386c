#include "gridmaint/kernels/pb_convolve.hpp"

namespace gridmaint::kernels {

void pb_convolve_scalar(const double* in, double* out, std::size_t n, double p) {
  const double q = 1.0 - p;
  if (n == 0) {
    out[0] = 0.0;
    return;
  }
  out[0] = in[0] * q;
  for (std::size_t j = 1; j < n; ++j) out[j] = in[j] * q + in[j - 1] * p;
  out[n] = in[n - 1] * p;
}

}  // namespace gridmaint::kernels
