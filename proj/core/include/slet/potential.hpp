#pragma once

#include <array>
#include <functional>

#include "slet/radial_series.hpp"

namespace slet {

enum class PotentialKind {
  CoulombVector,     // V(r) = -coupling/r,        S(r) = 0
  LinearScalar,      // V(r) = 0,                  S(r) = strength*r
  PowerLawEqualMix,  // V(r) = S(r) = strength*r^exponent + offset
  Custom,            // user-supplied truncated-Taylor evaluators
};

/// Declarative description of the scalar S(r) and 4-vector V(r) interaction.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::CoulombVector;

  double coupling = 0.0;  // CoulombVector: dimensionless, 0 < coupling < 1
  double strength = 0.0;  // LinearScalar / PowerLawEqualMix: A > 0
  double exponent = 0.0;  // PowerLawEqualMix: nu > 0
  double offset = 0.0;    // PowerLawEqualMix: constant added to both V and S

  /// Custom kind: value + derivatives 1..8 at r. Closed-form evaluators are
  /// expected; numerical differentiation at orders 6..8 is too ill-conditioned
  /// to feed the coefficient ladder.
  using SeriesFn = std::function<std::array<double, kSeriesOrder + 1>(double)>;
  SeriesFn custom_vector;
  SeriesFn custom_scalar;

  /// Throws std::invalid_argument on parameter/kind violations.
  void validate() const;

  static PotentialSpec coulomb_vector(double coupling);
  static PotentialSpec linear_scalar(double strength);
  static PotentialSpec power_law_equal_mix(double strength, double exponent,
                                           double offset);
  static PotentialSpec custom(SeriesFn vector_part, SeriesFn scalar_part);
};

/// V(r) and derivatives 1..8. Throws std::domain_error for r <= 0.
RadialSeries eval_vector_series(const PotentialSpec& spec, double r);

/// S(r) and derivatives 1..8. Throws std::domain_error for r <= 0.
RadialSeries eval_scalar_series(const PotentialSpec& spec, double r);

/// y(r) = V(r) - S(r), component-wise difference of the two series.
RadialSeries eval_y_series(const PotentialSpec& spec, double r);

/// Characteristic length used to bracket root searches.
double length_scale(const PotentialSpec& spec, double mass);

}  // namespace slet
