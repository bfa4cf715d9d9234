#pragma once

#include <span>
#include <vector>

#include "slet/engine.hpp"
#include "slet/potential.hpp"
#include "slet/state.hpp"

namespace slet::oracle {

/// Exact Dirac-Coulomb energy (Sommerfeld form):
/// E = m [1 + a^2/(n_r + sqrt(k^2 - a^2))^2]^(-1/2).
/// Throws std::domain_error for k^2 <= a^2 or the forbidden (n_r=0, k>0).
double exact_coulomb_dirac(int n_r, int kappa, double coupling, double mass);

/// Exact Klein-Gordon-Coulomb energy:
/// E = m [1 + a^2/(n_r + 1/2 + sqrt((l+1/2)^2 - a^2))^2]^(-1/2).
/// Throws std::domain_error for (l+1/2)^2 <= a^2.
double exact_coulomb_kg(int n_r, int l, double coupling, double mass);

/// exact_coulomb_dirac for a state labelled by the node count n_r of the
/// reduced radial equation: the Sommerfeld formula's radial quantum number is
/// n_r + 1 when kappa > 0 (principal N = n~ + |kappa| vs N = n_r + l + 1).
double exact_coulomb_dirac_state(int n_r, int l, int two_j, double coupling,
                                 double mass);

/// Parameters of the shooting integrator. Zeros mean "choose automatically
/// from the potential and state".
struct ShootingConfig {
  double r_min = 0.0;
  double r_max = 0.0;
  int steps = 200000;     // grid points, >= 1e4
  double e_lo = 0.0;      // energy bracket; both zero = auto
  double e_hi = 0.0;
  double rel_tol = 1e-13; // bisection width, relative
};

/// Eigenvalue of the reduced radial equation
///   -R'' + [l(l+1)/r^2 + U(r) + (m+S)^2 - (E-V)^2] R = 0
/// by two-sided Numerov integration (outward from R ~ r^(l+1), inward from
/// WKB decay), log-derivative matching and node counting. Independent of the
/// expansion machinery; uses the same approximated U so it validates the
/// expansion, not the 1/xi_2 approximation.
/// Throws std::runtime_error when the bracket does not isolate the state.
double shoot_energy(const PotentialSpec& spec, const StateSpec& state,
                    const ShootingConfig& cfg = {});

/// Estimates of the oscillator corrections obtained by diagonalizing the
/// effective 1D Hamiltonian at several lbar values and fitting the inverse
/// powers of lbar.
struct AnharmonicFit {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double max_residual = 0.0;  // worst absolute fit residual across samples
};

/// Numerical cross-check of the closed-form alpha1/alpha2: builds
/// H(lbar) = -d^2/dx^2 + w^2 x^2/4 + sum_k lbar^(-k/2) (coupling terms),
/// diagonalizes in an oscillator basis (>= 200 states, perturbative state
/// selected by overlap), and least-squares fits mu(lbar) - (n_r+1/2) w
/// against 1/lbar..1/lbar^4. The coefficient set must carry delta1/delta2.
/// Throws std::invalid_argument when fewer than 4 samples are given and
/// std::runtime_error when the fit is ill-conditioned.
AnharmonicFit anharmonic_fit(const CoefficientSet& couplings, double w,
                             int n_r,
                             std::span<const double> lbar_samples = {},
                             int basis_size = 240);

}  // namespace slet::oracle
