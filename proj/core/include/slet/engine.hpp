#pragma once

#include <optional>

#include "slet/potential.hpp"
#include "slet/radial_series.hpp"
#include "slet/state.hpp"

namespace slet {

/// Converged expansion point (r0, beta, w) for one state.
///
/// lbar = l - beta is the shifted angular momentum, Q = lbar^2. The point
/// satisfies the minimum condition residual |2(l-beta)^2 - b - sqrt(b^2-4c)|
/// < tol * 2(l-beta)^2 and d^2E0/dr0^2 > 0.
struct ExpansionPoint {
  double r0 = 0.0;
  double beta = 0.0;
  double w = 0.0;  // oscillator frequency of the effective 1D problem
  double lbar = 0.0;
  double Q = 0.0;
  int iterations = 0;
};

/// Anharmonic coefficients of the effective shifted oscillator.
///
/// eps1..eps4 and delta3..delta6 depend only on the expansion point;
/// delta1/delta2 additionally contain E2 and are absent until the second
/// ladder phase. alpha2 requires the full delta set.
struct CoefficientSet {
  double eps1 = 0.0, eps2 = 0.0, eps3 = 0.0, eps4 = 0.0;
  double delta3 = 0.0, delta4 = 0.0, delta5 = 0.0, delta6 = 0.0;
  std::optional<double> delta1, delta2;
  double alpha1 = 0.0;
  std::optional<double> alpha2;
};

/// Energy series for one converged state. total = e0 + e2_term + e3_term,
/// binding = total - mass. e1_residual is |E1|/|E0| with the converged shift
/// (zero by construction, kept as a diagnostic).
struct EnergyBreakdown {
  double e0 = 0.0;
  double e2_term = 0.0;  // E2 / lbar^2
  double e3_term = 0.0;  // E3 / lbar^3
  double total = 0.0;
  double binding = 0.0;
  double e1_residual = 0.0;
  double r0 = 0.0, beta = 0.0, w = 0.0;  // copied for diagnostics
};

struct SolveOptions {
  double r0_rel_tol = 1e-12;
  int max_iterations = 200;
  double damping = 0.5;          // beta update: beta <- (1-damping)*old + damping*new
  double bracket_lo = 1e-6;      // times length_scale()
  double bracket_hi = 1e6;       // times length_scale()
  int scan_per_decade = 40;
};

/// gamma(r) = -V^2 + (m+S)^2 + U and derivatives to order 6 (entries 7..8
/// are zero). U(r) = (lambda/4m)[y'' - 2 kappa y'/r + 3 y'^2/4m], y = V - S.
RadialSeries gamma_series(const PotentialSpec& spec, const StateSpec& state,
                          double r);

/// E0 = V(r0) + sqrt(V(r0)^2 + Q/r0^2 + gamma(r0)), the particle branch.
/// Throws std::domain_error when the radicand is negative ("no bound
/// expansion at this r0").
double leading_energy(const PotentialSpec& spec, const StateSpec& state,
                      double r0, double Q);

/// Diagnostics of the minimum condition at a trial radius: the quadratic
/// auxiliaries b, c, their discriminant, and the root function
/// b + sqrt(max(disc,0)) - 2*lbar^2.
struct RootFunction {
  double b = 0.0;
  double c = 0.0;
  double discriminant = 0.0;
  double value = 0.0;
  bool valid = false;  // discriminant >= 0 after roundoff clamp
};
RootFunction expansion_point_equation(const PotentialSpec& spec,
                                      const StateSpec& state, double r,
                                      double lbar);

/// Coupled fixed point for (r0, beta, w): root-solve the minimum condition
/// at fixed beta, update w and beta, damped, until |dr0|/r0 < tol.
/// Throws std::runtime_error when no bracket holds a root or the iteration
/// fails to converge; std::domain_error when w^2 <= 0 or the curvature check
/// d^2E0/dr0^2 > 0 fails.
ExpansionPoint solve_expansion_point(const PotentialSpec& spec,
                                     const StateSpec& state,
                                     const SolveOptions& opts = {});

/// Anharmonic coefficient ladder at a converged point. With e2 absent only
/// eps1..4 / delta3..6 / alpha1 are produced; passing e2 fills delta1, delta2
/// and alpha2.
CoefficientSet coefficient_ladder(const PotentialSpec& spec,
                                  const StateSpec& state,
                                  const ExpansionPoint& pt, double e0,
                                  std::optional<double> e2 = std::nullopt);

/// Second- and third-order perturbation corrections of the effective
/// one-dimensional anharmonic oscillator. alpha1 needs the eps set; alpha2
/// additionally needs delta1..delta6 and is absent when they are.
/// Throws std::domain_error for w <= 0.
std::pair<double, std::optional<double>> anharmonic_corrections(
    const CoefficientSet& coeffs, double w, int n_r);

/// Assembles E2, E3 and the total energy from a converged point and a full
/// coefficient set; evaluates the (identically cancelling) first-order term
/// as a residual diagnostic. Throws std::domain_error when E0 = V(r0).
EnergyBreakdown energy_series(const PotentialSpec& spec, const StateSpec& state,
                              const ExpansionPoint& pt,
                              const CoefficientSet& coeffs);

/// Full pipeline for one state: expansion point, two-phase ladder, energy.
struct SolveResult {
  ExpansionPoint point;
  CoefficientSet coeffs;
  EnergyBreakdown energy;
};
SolveResult solve_state(const PotentialSpec& spec, const StateSpec& state,
                        const SolveOptions& opts = {});

}  // namespace slet
