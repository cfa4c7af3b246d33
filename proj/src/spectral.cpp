#include "qladder/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qladder/kernels.hpp"

namespace qladder::spectral {

SymTridiagonal build_jacobi_matrix(const SystemSpec& spec) {
  if (!spec.closed)
    throw std::domain_error(
        "build_jacobi_matrix: requires a closed (finite) ladder");
  SymTridiagonal m;
  m.diag.resize(spec.level_count);
  for (std::size_t n = 0; n < spec.level_count; ++n) m.diag[n] = -spec.phases[n];
  m.off = spec.couplings;
  return m;
}

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix, with eigenvector
// accumulation. Ported from the classic Algol tql2 procedure (Bowdler,
// Martin, Reinsch, Wilkinson) as in EISPACK/JAMA.
void tql2(std::vector<double>& d, std::vector<double>& e,
          std::vector<std::vector<double>>& z) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0, tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 50)
          throw EvaluationError("tql2: more than 50 QL iterations");
        // Wilkinson shift.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        double el1 = e[l + 1], s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * h;
            z[k][i] = c * z[k][i] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

SpectralDecomposition decompose(const SymTridiagonal& matrix) {
  const std::size_t m = matrix.diag.size();
  if (m == 0) throw std::domain_error("decompose: empty matrix");
  if (matrix.off.size() + 1 != m)
    throw std::domain_error("decompose: off-diagonal size mismatch");
  for (double e : matrix.off)
    if (e == 0.0)
      throw std::domain_error(
          "decompose: zero off-diagonal decouples the ladder; split it first");

  std::vector<double> d = matrix.diag;
  std::vector<double> e(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) e[i] = matrix.off[i - 1];
  std::vector<std::vector<double>> z(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) z[i][i] = 1.0;
  if (m > 1) tql2(d, e, z);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  SpectralDecomposition out;
  out.eigenvalues.resize(m);
  out.weights.resize(m);
  out.poly_table.assign(m, std::vector<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t c = order[k];
    out.eigenvalues[k] = d[c];
    double v0 = z[0][c];
    const double sign = v0 < 0.0 ? -1.0 : 1.0;  // fix v_{0,k} > 0
    v0 *= sign;
    out.weights[k] = v0 * v0;
    for (std::size_t n = 0; n < m; ++n)
      out.poly_table[n][k] = sign * z[n][c] / v0;
  }
  return out;
}

AmplitudeTrajectory spectral_amplitudes(const SpectralDecomposition& decomp,
                                        const TimeGrid& times,
                                        std::span<const double> phases) {
  const std::size_t m = decomp.size();
  if (!phases.empty() && phases.size() != m)
    throw std::domain_error("spectral_amplitudes: phase sequence size mismatch");

  // w[n][k] = sigma_k p_n(Lambda_k), flattened for the phase-sum kernel.
  std::vector<double> w(m * m);
  for (std::size_t n = 0; n < m; ++n)
    for (std::size_t k = 0; k < m; ++k)
      w[n * m + k] = decomp.weights[k] * decomp.poly_table[n][k];

  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes.resize(times.size());
  std::vector<double> c(m), s(m), re(m), im(m);
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times.points[ti];
    for (std::size_t k = 0; k < m; ++k) {
      c[k] = std::cos(decomp.eigenvalues[k] * t);
      s[k] = std::sin(decomp.eigenvalues[k] * t);
    }
    kernels::phase_sum(w.data(), c.data(), s.data(), m, m, re.data(), im.data());
    auto& row = traj.amplitudes[ti];
    row.resize(m);
    for (std::size_t n = 0; n < m; ++n) {
      Complex a(re[n], im[n]);
      if (!phases.empty()) {
        const double ph = phases[n] * t;
        a *= Complex(std::cos(ph), std::sin(ph));
      }
      row[n] = a;
    }
  }
  return traj;
}

namespace {

bool is_equal_rabi_resonant(const SystemSpec& spec) {
  for (double f : spec.couplings)
    if (std::abs(f - 1.0) > 1e-12) return false;
  for (std::size_t n = 1; n < spec.level_count; ++n)
    if (std::abs(spec.detuning(n)) > 1e-12) return false;
  return true;
}

// Evaluates the degree-(N+1) polynomial q(x) = (x + s_N) p_N - f_N p_{N-1}
// whose roots are the eigenvalues, via the three-term recurrence. The
// returned value is scaled by an arbitrary positive factor (sign exact).
double char_poly(const SystemSpec& spec, double x) {
  double pm = 0.0, pc = 1.0;
  const std::size_t top = spec.level_count - 1;
  for (std::size_t n = 0; n < top; ++n) {
    double pn = ((x + spec.phases[n]) * pc - spec.coupling(n) * pm) /
                spec.coupling(n + 1);
    pm = pc;
    pc = pn;
    const double mag = std::max(std::abs(pm), std::abs(pc));
    if (mag > 1e100) {
      pm /= mag;
      pc /= mag;
    }
  }
  return (x + spec.phases[top]) * pc - spec.coupling(top) * pm;
}

}  // namespace

CommonPolynomialReport check_common_polynomial_map(
    const SpectralDecomposition& decomp, const SystemSpec& spec) {
  if (!spec.closed)
    throw std::domain_error(
        "check_common_polynomial_map: requires a closed ladder");
  const std::size_t m = decomp.size();
  if (m != spec.level_count)
    throw std::domain_error("check_common_polynomial_map: size mismatch");

  CommonPolynomialReport rep;
  if (is_equal_rabi_resonant(spec)) {
    // Equal-Rabi ladder = Chebyshev-U system, Lambda_k = 2 cos(k pi/(N+2)).
    rep.route = "chebyshev-u";
    rep.reference_roots.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      rep.reference_roots[i] =
          2.0 * std::cos(static_cast<double>(m - i) * M_PI /
                         static_cast<double>(m + 1));
  } else {
    rep.route = "recurrence-roots";
    // Bracket every sign change of the recurrence-evaluated polynomial
    // inside a Gershgorin interval, then bisect.
    double lo = -spec.phases[0], hi = -spec.phases[0];
    for (std::size_t n = 0; n < spec.level_count; ++n) {
      const double rad = spec.coupling(n) + spec.coupling(n + 1);
      lo = std::min(lo, -spec.phases[n] - rad);
      hi = std::max(hi, -spec.phases[n] + rad);
    }
    lo -= 0.5;
    hi += 0.5;
    const std::size_t scan = 200 * m + 500;
    double xa = lo, qa = char_poly(spec, xa);
    for (std::size_t i = 1; i <= scan; ++i) {
      const double xb = lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(scan);
      const double qb = char_poly(spec, xb);
      if ((qa < 0.0) != (qb < 0.0)) {
        double a = xa, b = xb, fa = qa;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a + b);
          if (mid == a || mid == b) break;
          const double fm = char_poly(spec, mid);
          if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        rep.reference_roots.push_back(0.5 * (a + b));
      }
      xa = xb;
      qa = qb;
    }
    if (rep.reference_roots.size() != m)
      throw EvaluationError(
          "check_common_polynomial_map: root scan found " +
          std::to_string(rep.reference_roots.size()) + " of " +
          std::to_string(m) + " roots");
  }

  rep.max_residual = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    rep.max_residual = std::max(
        rep.max_residual, std::abs(decomp.eigenvalues[k] - rep.reference_roots[k]));
  return rep;
}

}  // namespace qladder::spectral
