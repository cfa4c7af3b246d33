#include "qladder/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace qladder::specfun {

namespace {

bool is_integral(double x) { return x == std::floor(x); }

}  // namespace

double pochhammer(double a, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be nonnegative");
  double p = 1.0;
  for (int k = 0; k < n; ++k) {
    p *= a + static_cast<double>(k);
    if (!std::isfinite(p))
      throw std::overflow_error("pochhammer: product out of double range");
  }
  return p;
}

Complex kummer_1f1(double a, double b, Complex z) {
  if (b <= 0.0 && is_integral(b))
    throw std::domain_error("kummer_1f1: b must not be zero or a negative integer");
  if (std::abs(z) > 200.0)
    throw std::domain_error("kummer_1f1: |z| exceeds the series validity bound 200");

  using CLD = std::complex<long double>;
  const CLD zl(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
  constexpr int kTermCap = 10000;
  constexpr long double kRelTol = 1e-13L;

  CLD sum(0.0L, 0.0L), comp(0.0L, 0.0L);  // Kahan compensation
  CLD term(1.0L, 0.0L);
  int small_in_a_row = 0;
  for (int k = 0; k < kTermCap; ++k) {
    CLD y = term - comp;
    CLD t = sum + y;
    comp = (t - sum) - y;
    sum = t;

    if (std::abs(term) <= kRelTol * std::abs(sum)) {
      if (++small_in_a_row >= 2)
        return Complex(static_cast<double>(sum.real()),
                       static_cast<double>(sum.imag()));
    } else {
      small_in_a_row = 0;
    }
    term *= (static_cast<long double>(a) + k) * zl /
            ((static_cast<long double>(b) + k) * (k + 1.0L));
  }
  throw EvaluationError("kummer_1f1: no convergence within 10000 terms; |last term| = " +
                        std::to_string(static_cast<double>(std::abs(term))) +
                        ", |partial sum| = " +
                        std::to_string(static_cast<double>(std::abs(sum))));
}

std::vector<double> sph_bessel_array(int nmax, double x) {
  std::vector<double> j(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 0.25) {
    // Ascending series: j_n = x^n/(2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...)
    double dfact = 1.0;  // (2n+1)!!
    for (int n = 0; n <= nmax; ++n) {
      if (n > 0) dfact *= 2.0 * n + 1.0;
      double lead = std::pow(x, n) / dfact;
      double term = 1.0, sum = 1.0;
      for (int k = 1; k <= 12; ++k) {
        term *= -0.5 * x * x / (k * (2.0 * n + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      j[n] = lead * sum;
    }
    return j;
  }

  const int start = std::max(nmax, static_cast<int>(std::ceil(x))) + 40;
  double jp = 0.0;     // j_{l+1}
  double jc = 1e-300;  // j_l, arbitrary seed
  double raw1 = 0.0;   // unnormalized j_1
  std::vector<double> raw(static_cast<std::size_t>(nmax) + 1, 0.0);
  for (int l = start; l >= 0; --l) {
    if (l <= nmax) raw[l] = jc;
    if (l == 1) raw1 = jc;
    double jm = (2.0 * l + 1.0) / x * jc - jp;  // j_{l-1}
    jp = jc;
    jc = jm;
    if (std::abs(jc) > 1e250) {  // rescale to dodge overflow
      jc *= 1e-250;
      jp *= 1e-250;
      raw1 *= 1e-250;
      for (double& v : raw) v *= 1e-250;
    }
  }
  // Normalize against whichever of j_0, j_1 is better conditioned
  // (j_0 = sin x / x vanishes at multiples of pi).
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double ratio = std::abs(j0) >= std::abs(j1) ? j0 / raw[0] : j1 / raw1;
  for (int n = 0; n <= nmax; ++n) j[n] = raw[n] * ratio;
  return j;
}

namespace {

double bessel_j_int(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < n) {
    // Ascending series sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!)
    double term = std::pow(0.5 * x, n);
    for (int k = 1; k <= n; ++k) term /= k;
    double sum = term;
    for (int k = 1; k <= 64; ++k) {
      term *= -0.25 * x * x / (k * (n + k));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Miller downward recurrence, normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1.
  const int start = 2 * ((std::max(n, static_cast<int>(x)) + 41) / 2);
  double jp = 0.0, jc = 1e-300;
  double target = 0.0, norm = 0.0;
  for (int l = start; l >= 1; --l) {
    double jm = (2.0 * l) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      target *= 1e-250;
      norm *= 1e-250;
    }
    if (l - 1 == n) target = jc;       // jc now holds J_{l-1}
    if ((l - 1) % 2 == 0) norm += ((l - 1) == 0 ? 1.0 : 2.0) * jc;
  }
  return target / norm;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0)
    throw std::domain_error("bessel_j: requires nu >= 0 and x >= 0");
  if (is_integral(nu)) return bessel_j_int(static_cast<int>(nu), x);
  if (is_integral(2.0 * nu)) {
    const int n = static_cast<int>(nu - 0.5);
    if (x == 0.0) return 0.0;
    const double jn = sph_bessel_array(n, x)[n];
    return std::sqrt(2.0 * x / M_PI) * jn;
  }
  throw std::domain_error("bessel_j: order must be an integer or half-integer");
}

double legendre_p(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_p: n must be nonnegative");
  double pm = 1.0, pc = x;
  if (n == 0) return pm;
  for (int k = 1; k < n; ++k) {
    double pn = ((2.0 * k + 1.0) * x * pc - k * pm) / (k + 1.0);
    pm = pc;
    pc = pn;
  }
  return pc;
}

double krawtchouk_poly(int m, int j, int M, double p) {
  if (m < 0 || m > M || j < 0 || j > M)
    throw std::domain_error("krawtchouk_poly: indices must lie in [0, M]");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("krawtchouk_poly: requires 0 < p < 1");
  // Terminating 2F1(-m, -j; -M; 1/p).
  double sum = 0.0, term = 1.0;
  for (int i = 0; i <= m; ++i) {
    sum += term;
    if (i < m)
      term *= (i - m) * (i - j) / ((i - static_cast<double>(M)) * (i + 1.0) * p);
  }
  double pref = std::pow(-p, m) * binomial(M, m);
  return pref * sum;
}

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw std::domain_error("binomial: requires 0 <= k <= n");
  if (n <= 60) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

}  // namespace qladder::specfun
