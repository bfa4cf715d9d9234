#include <cmath>
#include <stdexcept>

#include "slet/engine.hpp"

namespace slet {

// Second- and third-order Rayleigh-Schrodinger corrections for
//   H = -d^2/dx^2 + w^2 x^2/4
//       + g  (eps1 x + eps3 x^3)   + g^2 (eps2 x^2 + eps4 x^4)
//       + g^3 (d1 x + d3 x^3 + d5 x^5) + g^4 (d2 x^2 + d4 x^4 + d6 x^6),
// E_n(g) = (n+1/2) w + alpha1 g^2 + alpha2 g^4 + O(g^6), with every coupling
// scaled by w^(j/2) for the x^j it multiplies. The polynomial-in-n
// coefficients are exact (oscillator matrix elements, rational arithmetic);
// the diagonalization oracle cross-checks them at test time.
std::pair<double, std::optional<double>> anharmonic_corrections(
    const CoefficientSet& coeffs, double w, int n_r) {
  if (!(w > 0.0))
    throw std::domain_error("anharmonic corrections need w > 0");

  const double n = static_cast<double>(n_r);
  const double sw = std::sqrt(w);
  const double e1 = coeffs.eps1 / sw;
  const double e2 = coeffs.eps2 / w;
  const double e3 = coeffs.eps3 / (w * sw);
  const double e4 = coeffs.eps4 / (w * w);

  const double p1 = 1.0 + 2.0 * n;
  const double p2 = 1.0 + 2.0 * n + 2.0 * n * n;
  const double p3 = 11.0 + 30.0 * n + 30.0 * n * n;

  const double alpha1 =
      p1 * e2 + 3.0 * p2 * e4 -
      (e1 * e1 + 6.0 * p1 * e1 * e3 + p3 * e3 * e3) / w;

  if (!coeffs.delta1 || !coeffs.delta2) return {alpha1, std::nullopt};

  const double d1 = *coeffs.delta1 / sw;
  const double d2 = *coeffs.delta2 / w;
  const double d3 = coeffs.delta3 / (w * sw);
  const double d4 = coeffs.delta4 / (w * w);
  const double d5 = coeffs.delta5 / (w * w * sw);
  const double d6 = coeffs.delta6 / (w * w * w);

  const double q6 = 3.0 + 8.0 * n + 6.0 * n * n + 4.0 * n * n * n;
  const double q44 = 21.0 + 59.0 * n + 51.0 * n * n + 34.0 * n * n * n;
  const double q35 = 13.0 + 40.0 * n + 42.0 * n * n + 28.0 * n * n * n;
  const double q134 = 31.0 + 78.0 * n + 78.0 * n * n;
  const double q334 = 57.0 + 189.0 * n + 225.0 * n * n + 150.0 * n * n * n;
  const double q3333 = 31.0 + 109.0 * n + 141.0 * n * n + 94.0 * n * n * n;

  const double first = p1 * d2 + 3.0 * p2 * d4 + 5.0 * q6 * d6;
  const double second =
      2.0 * e1 * d1 + 6.0 * p1 * (e1 * d3 + e3 * d1) + 2.0 * p3 * e3 * d3 +
      30.0 * p2 * e1 * d5 + 10.0 * q35 * e3 * d5 + p1 * e2 * e2 +
      12.0 * p2 * e2 * e4 + 2.0 * q44 * e4 * e4;
  const double third =
      4.0 * e1 * e1 * e2 + 36.0 * p1 * e1 * e2 * e3 + 8.0 * p3 * e2 * e3 * e3 +
      24.0 * p1 * e1 * e1 * e4 + 8.0 * q134 * e1 * e3 * e4 +
      12.0 * q334 * e3 * e3 * e4;
  const double fourth =
      8.0 * e1 * e1 * e1 * e3 + 108.0 * p1 * e1 * e1 * e3 * e3 +
      48.0 * p3 * e1 * e3 * e3 * e3 + 30.0 * q3333 * e3 * e3 * e3 * e3;

  const double alpha2 =
      first - second / w + third / (w * w) - fourth / (w * w * w);
  return {alpha1, alpha2};
}

}  // namespace slet
