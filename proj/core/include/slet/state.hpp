#pragma once

namespace slet {

/// Quantum numbers and equation selector for one bound state.
///
/// lambda = 0 selects the Klein-Gordon equation (the spin-dependent effective
/// term is switched off), lambda = 1 the Dirac equation. kappa is the Dirac
/// quantum number: kappa = -(l+1) for j = l+1/2, kappa = l for j = l-1/2,
/// and kappa(kappa+1) = l(l+1) always.
struct StateSpec {
  int n_r = 0;     // radial quantum number, >= 0
  int l = 0;       // orbital angular momentum, >= 0
  int kappa = -1;  // Dirac quantum number, != 0
  int lambda = 0;  // 0 = Klein-Gordon, 1 = Dirac
  double mass = 1.0;

  /// Throws std::invalid_argument on violations (kappa(kappa+1) != l(l+1),
  /// lambda outside {0,1}, mass <= 0, negative quantum numbers).
  void validate() const;
};

}  // namespace slet
