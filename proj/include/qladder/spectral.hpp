#pragma once

#include <span>
#include <string>
#include <vector>

#include "qladder/systems.hpp"
#include "qladder/types.hpp"

namespace qladder::spectral {

struct SymTridiagonal {
  std::vector<double> diag;  // size m
  std::vector<double> off;   // size m-1, off[i] couples i and i+1
};

/// Eigenvalues Lambda_k (ascending, distinct), weights sigma_k, and the
/// table p_n(Lambda_k) of the truncated orthonormal polynomials
/// (p_0 = 1, sum_k sigma_k = 1).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
  std::vector<std::vector<double>> poly_table;  // [n][k]

  std::size_t size() const { return eigenvalues.size(); }
};

/// Off-diagonal (n-1, n) = f_n, diagonal = -s_n. Requires a closed spec.
SymTridiagonal build_jacobi_matrix(const SystemSpec& spec);

/// Golub-Welsch route: eigenvalues of the matrix are the Lambda_k,
/// sigma_k is the squared first component of the k-th unit eigenvector,
/// p_n(Lambda_k) = v_{n,k} / v_{0,k}. Requires nonzero off-diagonals.
SpectralDecomposition decompose(const SymTridiagonal& matrix);

/// a_n(t) = e^{i s_n t} sum_k sigma_k p_n(Lambda_k) e^{i Lambda_k t};
/// pass empty phases for a resonant ladder.
AmplitudeTrajectory spectral_amplitudes(const SpectralDecomposition& decomp,
                                        const TimeGrid& times,
                                        std::span<const double> phases = {});

struct CommonPolynomialReport {
  std::vector<double> reference_roots;  // ascending
  double max_residual = 0.0;
  std::string route;  // "chebyshev-u" or "recurrence-roots"
};

/// Compares the eigenvalues against independently computed roots of the
/// degree-(N+1) polynomial generated by the same recurrence: closed-form
/// Chebyshev-U roots for equal-Rabi ladders, bracketing/bisection on the
/// recurrence-evaluated polynomial otherwise.
CommonPolynomialReport check_common_polynomial_map(
    const SpectralDecomposition& decomp, const SystemSpec& spec);

}  // namespace qladder::spectral
