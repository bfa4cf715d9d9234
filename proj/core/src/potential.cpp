#include "slet/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slet {

namespace {

void require_positive_radius(double r) {
  if (!(r > 0.0))
    throw std::domain_error("potential series requested at r = " +
                            std::to_string(r) + "; need r > 0");
}

RadialSeries zero_series(double r) { return RadialSeries{r, {}}; }

RadialSeries coulomb_series(double coupling, double r) {
  // f = -a/r, f^(n) = -a (-1)^n n! r^(-n-1)
  RadialSeries out{r, {}};
  double term = -coupling / r;
  for (int n = 0; n <= kSeriesOrder; ++n) {
    out.d[static_cast<std::size_t>(n)] = term;
    term *= -static_cast<double>(n + 1) / r;
  }
  return out;
}

RadialSeries linear_series(double strength, double r) {
  RadialSeries out{r, {}};
  out.d[0] = strength * r;
  out.d[1] = strength;
  return out;
}

RadialSeries power_law_series(double strength, double exponent, double offset,
                              double r) {
  // f = A r^nu + V0, f^(n) = A nu(nu-1)...(nu-n+1) r^(nu-n)
  RadialSeries out{r, {}};
  double term = strength * std::pow(r, exponent);
  out.d[0] = term + offset;
  for (int n = 1; n <= kSeriesOrder; ++n) {
    term *= (exponent - static_cast<double>(n - 1)) / r;
    out.d[static_cast<std::size_t>(n)] = term;
  }
  return out;
}

RadialSeries custom_series(const PotentialSpec::SeriesFn& fn, double r) {
  RadialSeries out{r, {}};
  if (fn) out.d = fn(r);
  return out;
}

}  // namespace

void PotentialSpec::validate() const {
  switch (kind) {
    case PotentialKind::CoulombVector:
      if (!(coupling > 0.0 && coupling < 1.0))
        throw std::invalid_argument(
            "CoulombVector needs 0 < coupling < 1 for bound states");
      return;
    case PotentialKind::LinearScalar:
      if (!(strength > 0.0))
        throw std::invalid_argument("LinearScalar needs strength > 0");
      return;
    case PotentialKind::PowerLawEqualMix:
      if (!(strength > 0.0))
        throw std::invalid_argument("PowerLawEqualMix needs strength > 0");
      if (!(exponent > 0.0))
        throw std::invalid_argument("PowerLawEqualMix needs exponent > 0");
      return;
    case PotentialKind::Custom:
      if (!custom_vector && !custom_scalar)
        throw std::invalid_argument(
            "Custom potential needs at least one series evaluator");
      return;
  }
  throw std::invalid_argument("unknown potential kind");
}

PotentialSpec PotentialSpec::coulomb_vector(double coupling) {
  PotentialSpec s;
  s.kind = PotentialKind::CoulombVector;
  s.coupling = coupling;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::linear_scalar(double strength) {
  PotentialSpec s;
  s.kind = PotentialKind::LinearScalar;
  s.strength = strength;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::power_law_equal_mix(double strength,
                                                 double exponent,
                                                 double offset) {
  PotentialSpec s;
  s.kind = PotentialKind::PowerLawEqualMix;
  s.strength = strength;
  s.exponent = exponent;
  s.offset = offset;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::custom(SeriesFn vector_part, SeriesFn scalar_part) {
  PotentialSpec s;
  s.kind = PotentialKind::Custom;
  s.custom_vector = std::move(vector_part);
  s.custom_scalar = std::move(scalar_part);
  s.validate();
  return s;
}

RadialSeries eval_vector_series(const PotentialSpec& spec, double r) {
  require_positive_radius(r);
  switch (spec.kind) {
    case PotentialKind::CoulombVector:
      return coulomb_series(spec.coupling, r);
    case PotentialKind::LinearScalar:
      return zero_series(r);
    case PotentialKind::PowerLawEqualMix:
      return power_law_series(spec.strength, spec.exponent, spec.offset, r);
    case PotentialKind::Custom:
      return custom_series(spec.custom_vector, r);
  }
  throw std::invalid_argument("unknown potential kind");
}

RadialSeries eval_scalar_series(const PotentialSpec& spec, double r) {
  require_positive_radius(r);
  switch (spec.kind) {
    case PotentialKind::CoulombVector:
      return zero_series(r);
    case PotentialKind::LinearScalar:
      return linear_series(spec.strength, r);
    case PotentialKind::PowerLawEqualMix:
      return power_law_series(spec.strength, spec.exponent, spec.offset, r);
    case PotentialKind::Custom:
      return custom_series(spec.custom_scalar, r);
  }
  throw std::invalid_argument("unknown potential kind");
}

RadialSeries eval_y_series(const PotentialSpec& spec, double r) {
  return series::sub(eval_vector_series(spec, r), eval_scalar_series(spec, r));
}

double length_scale(const PotentialSpec& spec, double mass) {
  switch (spec.kind) {
    case PotentialKind::CoulombVector:
      return 1.0 / mass;
    case PotentialKind::LinearScalar:
      return 1.0 / std::sqrt(spec.strength);
    case PotentialKind::PowerLawEqualMix:
      return std::pow(spec.strength, -1.0 / (spec.exponent + 1.0));
    case PotentialKind::Custom:
      return 1.0 / mass;
  }
  return 1.0 / mass;
}

}  // namespace slet
