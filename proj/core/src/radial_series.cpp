#include "slet/radial_series.hpp"

#include <cstddef>

namespace slet::series {

namespace {

// Binomial coefficients C(n,k) for n,k <= kSeriesOrder.
constexpr auto kBinomial = [] {
  std::array<std::array<double, kSeriesOrder + 1>, kSeriesOrder + 1> b{};
  for (std::size_t n = 0; n <= kSeriesOrder; ++n) {
    b[n][0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
      b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : 0.0);
  }
  return b;
}();

}  // namespace

RadialSeries add(const RadialSeries& a, const RadialSeries& b) {
  RadialSeries out{a.r, {}};
  for (std::size_t n = 0; n <= kSeriesOrder; ++n) out.d[n] = a.d[n] + b.d[n];
  return out;
}

RadialSeries sub(const RadialSeries& a, const RadialSeries& b) {
  RadialSeries out{a.r, {}};
  for (std::size_t n = 0; n <= kSeriesOrder; ++n) out.d[n] = a.d[n] - b.d[n];
  return out;
}

RadialSeries scale(const RadialSeries& a, double s) {
  RadialSeries out{a.r, {}};
  for (std::size_t n = 0; n <= kSeriesOrder; ++n) out.d[n] = a.d[n] * s;
  return out;
}

RadialSeries mul(const RadialSeries& a, const RadialSeries& b) {
  RadialSeries out{a.r, {}};
  for (std::size_t n = 0; n <= kSeriesOrder; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
      acc += kBinomial[n][k] * a.d[k] * b.d[n - k];
    out.d[n] = acc;
  }
  return out;
}

RadialSeries derivative_shift(const RadialSeries& a, int k) {
  RadialSeries out{a.r, {}};
  for (int n = 0; n + k <= kSeriesOrder; ++n)
    out.d[static_cast<std::size_t>(n)] = a.d[static_cast<std::size_t>(n + k)];
  return out;
}

RadialSeries inverse_power(double r, int p) {
  // d^n/dr^n r^(-p) = (-1)^n p(p+1)...(p+n-1) r^(-p-n)
  RadialSeries out{r, {}};
  double coeff = 1.0;
  double rpow = 1.0;
  for (int i = 0; i < p; ++i) rpow *= r;
  rpow = 1.0 / rpow;
  for (int n = 0; n <= kSeriesOrder; ++n) {
    out.d[static_cast<std::size_t>(n)] = coeff * rpow;
    coeff *= -static_cast<double>(p + n);
    rpow /= r;
  }
  return out;
}

RadialSeries constant(double r, double c) {
  RadialSeries out{r, {}};
  out.d[0] = c;
  return out;
}

}  // namespace slet::series
