#if defined(__x86_64__)

#include <immintrin.h>

#include "qladder/kernels.hpp"

namespace qladder::kernels {

void phase_sum_avx2(const double* w, const double* c, const double* s,
                    std::size_t rows, std::size_t cols, double* out_re,
                    double* out_im) {
  for (std::size_t n = 0; n < rows; ++n) {
    const double* row = w + n * cols;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= cols; k += 4) {
      const __m256d wv = _mm256_loadu_pd(row + k);
      acc_re = _mm256_fmadd_pd(wv, _mm256_loadu_pd(c + k), acc_re);
      acc_im = _mm256_fmadd_pd(wv, _mm256_loadu_pd(s + k), acc_im);
    }
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, acc_re);
    double re = tmp[0] + tmp[1] + tmp[2] + tmp[3];
    _mm256_store_pd(tmp, acc_im);
    double im = tmp[0] + tmp[1] + tmp[2] + tmp[3];
    for (; k < cols; ++k) {
      re += row[k] * c[k];
      im += row[k] * s[k];
    }
    out_re[n] = re;
    out_im[n] = im;
  }
}

}  // namespace qladder::kernels

#endif  // __x86_64__
