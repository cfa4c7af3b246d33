#include "qladder/kernels.hpp"

namespace qladder::kernels {

void phase_sum_scalar(const double* w, const double* c, const double* s,
                      std::size_t rows, std::size_t cols, double* out_re,
                      double* out_im) {
  for (std::size_t n = 0; n < rows; ++n) {
    const double* row = w + n * cols;
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      re += row[k] * c[k];
      im += row[k] * s[k];
    }
    out_re[n] = re;
    out_im[n] = im;
  }
}

namespace {

using Fn = void (*)(const double*, const double*, const double*, std::size_t,
                    std::size_t, double*, double*);

Fn pick() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return phase_sum_avx2;
#endif
  return phase_sum_scalar;
}

const Fn dispatch = pick();

}  // namespace

void phase_sum(const double* w, const double* c, const double* s,
               std::size_t rows, std::size_t cols, double* out_re,
               double* out_im) {
  dispatch(w, c, s, rows, cols, out_re, out_im);
}

const char* active_backend() {
  return dispatch == phase_sum_scalar ? "scalar" : "avx2";
}

}  // namespace qladder::kernels
