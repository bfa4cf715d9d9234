#pragma once

#include <array>
#include <cstddef>

namespace slet {

/// Highest derivative order carried by a RadialSeries (orders 0..8).
inline constexpr int kSeriesOrder = 8;

/// Value and radial derivatives of a function f at a point r > 0:
/// d[0] = f(r), d[n] = d^n f / dr^n. Truncated Taylor data.
struct RadialSeries {
  double r = 0.0;
  std::array<double, kSeriesOrder + 1> d{};

  double value() const { return d[0]; }
  double deriv(int n) const { return d[static_cast<std::size_t>(n)]; }
};

namespace series {

RadialSeries add(const RadialSeries& a, const RadialSeries& b);
RadialSeries sub(const RadialSeries& a, const RadialSeries& b);
RadialSeries scale(const RadialSeries& a, double s);

/// Leibniz product: (fg)^(n) = sum_k C(n,k) f^(k) g^(n-k).
RadialSeries mul(const RadialSeries& a, const RadialSeries& b);

/// Series of f^(k): d[n] = a.d[n+k], entries beyond the carried order zero.
RadialSeries derivative_shift(const RadialSeries& a, int k);

/// Exact series of r^(-p) at r > 0 for integer p >= 1.
RadialSeries inverse_power(double r, int p);

/// Series of the constant c (all derivatives zero).
RadialSeries constant(double r, double c);

}  // namespace series

}  // namespace slet
