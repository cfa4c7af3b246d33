#pragma once

#include <vector>

#include "qladder/types.hpp"

namespace qladder::specfun {

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
/// Throws std::overflow_error if the product leaves double range.
double pochhammer(double a, int n);

/// Confluent hypergeometric function 1F1(a; b; z), ascending series with
/// compensated summation in extended precision. Valid for |z| <= 200;
/// b must not be zero or a negative integer.
Complex kummer_1f1(double a, double b, Complex z);

/// Bessel function of the first kind J_nu(x) for integer or half-integer
/// nu >= 0 and x >= 0. Half-integer orders go through the spherical Bessel
/// functions (Miller downward recurrence); integer orders use the ascending
/// series for x < nu and downward recurrence otherwise.
double bessel_j(double nu, double x);

/// Spherical Bessel functions j_0(x) ... j_nmax(x) in one downward pass.
std::vector<double> sph_bessel_array(int nmax, double x);

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre_p(int n, double x);

/// Krawtchouk polynomial of a discrete variable j in {0,...,M}:
///   k_m^(p)(j, M) = (-p)^m binomial(M,m) 2F1(-m, -j; -M; 1/p),
/// so that k_0 = 1 and k_1(j) = j - pM. Orthogonal with weight
/// binomial(M,j) p^j (1-p)^(M-j).
double krawtchouk_poly(int m, int j, int M, double p);

/// Binomial coefficient; exact for n <= 60, log-gamma based beyond.
double binomial(int n, int k);

}  // namespace qladder::specfun
