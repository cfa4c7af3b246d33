#pragma once

#include <cstddef>

namespace qladder::kernels {

/// Weighted phase sum: for each row n of the rows x cols matrix w,
///   out_re[n] = sum_k w[n*cols + k] * c[k]
///   out_im[n] = sum_k w[n*cols + k] * s[k]
/// This is the inner loop of the spectral amplitude assembly, with
/// c[k] = cos(Lambda_k t) and s[k] = sin(Lambda_k t).
void phase_sum_scalar(const double* w, const double* c, const double* s,
                      std::size_t rows, std::size_t cols, double* out_re,
                      double* out_im);

#if defined(__x86_64__)
void phase_sum_avx2(const double* w, const double* c, const double* s,
                    std::size_t rows, std::size_t cols, double* out_re,
                    double* out_im);
#endif

/// Dispatched variant: picks the widest kernel the CPU supports.
void phase_sum(const double* w, const double* c, const double* s,
               std::size_t rows, std::size_t cols, double* out_re,
               double* out_im);

/// Name of the backend phase_sum dispatches to ("scalar" or "avx2").
const char* active_backend();

}  // namespace qladder::kernels
