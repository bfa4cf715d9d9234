#include "slet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace slet {

void StateSpec::validate() const {
  if (n_r < 0) throw std::invalid_argument("n_r must be >= 0");
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  if (kappa == 0) throw std::invalid_argument("kappa must be nonzero");
  if (kappa * (kappa + 1) != l * (l + 1))
    throw std::invalid_argument("kappa(kappa+1) = l(l+1) violated: kappa=" +
                                std::to_string(kappa) +
                                ", l=" + std::to_string(l));
  if (lambda != 0 && lambda != 1)
    throw std::invalid_argument("lambda must be 0 (KG) or 1 (Dirac)");
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
}

RadialSeries gamma_series(const PotentialSpec& spec, const StateSpec& state,
                          double r) {
  const RadialSeries vec = eval_vector_series(spec, r);
  const RadialSeries sca = eval_scalar_series(spec, r);

  // (m + S)^2 - V^2
  RadialSeries mass_r = sca;
  mass_r.d[0] += state.mass;
  RadialSeries gamma =
      series::sub(series::mul(mass_r, mass_r), series::mul(vec, vec));

  if (state.lambda == 1) {
    const RadialSeries y = series::sub(vec, sca);
    const RadialSeries yp = series::derivative_shift(y, 1);
    const RadialSeries ypp = series::derivative_shift(y, 2);
    const RadialSeries inv_r = series::inverse_power(r, 1);
    // U = (1/4m) [y'' - 2 kappa y'/r + (3/4m) y'^2]
    RadialSeries u = ypp;
    u = series::add(u, series::scale(series::mul(yp, inv_r),
                                     -2.0 * static_cast<double>(state.kappa)));
    u = series::add(
        u, series::scale(series::mul(yp, yp), 3.0 / (4.0 * state.mass)));
    u = series::scale(u, 1.0 / (4.0 * state.mass));
    gamma = series::add(gamma, u);
  }

  // derivative shifts above truncate orders 7..8; keep the carried range honest
  gamma.d[7] = 0.0;
  gamma.d[8] = 0.0;
  return gamma;
}

double leading_energy(const PotentialSpec& spec, const StateSpec& state,
                      double r0, double Q) {
  const double v = eval_vector_series(spec, r0).d[0];
  const double g = gamma_series(spec, state, r0).d[0];
  double radicand = v * v + Q / (r0 * r0) + g;
  const double scale = std::abs(v * v) + std::abs(Q) / (r0 * r0) + std::abs(g);
  if (radicand < 0.0) {
    if (radicand > -1e-14 * scale)
      radicand = 0.0;
    else
      throw std::domain_error("no bound expansion at r0 = " +
                              std::to_string(r0) + ": negative radicand");
  }
  return v + std::sqrt(radicand);
}

RootFunction expansion_point_equation(const PotentialSpec& spec,
                                      const StateSpec& state, double r,
                                      double lbar) {
  const RadialSeries vec = eval_vector_series(spec, r);
  const RadialSeries gam = gamma_series(spec, state, r);
  const double v = vec.d[0], vp = vec.d[1];
  const double g = gam.d[0], gp = gam.d[1];
  const double r3 = r * r * r;

  RootFunction out;
  out.b = r3 * (2.0 * v * vp + gp + r * vp * vp);
  out.c = (r3 * r3 / 4.0) * (gp * gp + 4.0 * v * vp * gp - 4.0 * g * vp * vp);

  // b^2 - 4c written in its factored form r^6 V'^2 [(2V + rV')^2 + 2r g' + 4g]:
  // identically zero for pure scalar potentials with no cancellation noise.
  const double sum = 2.0 * v + r * vp;
  double bracket = sum * sum + 2.0 * r * gp + 4.0 * g;
  const double bracket_scale =
      sum * sum + std::abs(2.0 * r * gp) + std::abs(4.0 * g) + 1e-300;
  if (bracket < 0.0 && bracket > -1e-12 * bracket_scale) bracket = 0.0;
  out.discriminant = r3 * r3 * vp * vp * bracket;
  out.valid = bracket >= 0.0 || vp == 0.0;
  out.value = out.valid
                  ? out.b + r3 * std::abs(vp) * std::sqrt(std::max(bracket, 0.0)) -
                        2.0 * lbar * lbar
                  : 0.0;
  return out;
}

namespace {

struct Candidate {
  double r0;
  double e0;
};

double refine_root(const PotentialSpec& spec, const StateSpec& state,
                   double lbar, double lo, double hi, double f_lo,
                   double f_hi) {
  // bisection to near machine precision, then a short secant polish
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const RootFunction rf = expansion_point_equation(spec, state, mid, lbar);
    if (!rf.valid) break;
    if ((rf.value < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = rf.value;
    } else {
      hi = mid;
      f_hi = rf.value;
    }
  }
  if (f_hi != f_lo) {
    const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (secant > lo && secant < hi) return secant;
  }
  return 0.5 * (lo + hi);
}

double curvature_of_e0(const PotentialSpec& spec, const StateSpec& state,
                       double r0, double Q) {
  const double h = 1e-4 * r0;
  const double em = leading_energy(spec, state, r0 - h, Q);
  const double e0 = leading_energy(spec, state, r0, Q);
  const double ep = leading_energy(spec, state, r0 + h, Q);
  return (ep - 2.0 * e0 + em) / (h * h);
}

std::vector<double> scan_roots(const PotentialSpec& spec,
                               const StateSpec& state, double lbar, double lo,
                               double hi, int per_decade) {
  std::vector<double> roots;
  const double decades = std::log10(hi / lo);
  const int n = std::max(2, static_cast<int>(decades * per_decade) + 1);
  const double step = std::pow(hi / lo, 1.0 / (n - 1));

  double x_prev = 0.0, f_prev = 0.0;
  bool prev_valid = false;
  double x = lo;
  for (int i = 0; i < n; ++i, x *= step) {
    RootFunction rf;
    try {
      rf = expansion_point_equation(spec, state, x, lbar);
    } catch (const std::domain_error&) {
      prev_valid = false;
      continue;
    }
    if (rf.valid) {
      if (prev_valid && (rf.value < 0.0) != (f_prev < 0.0))
        roots.push_back(
            refine_root(spec, state, lbar, x_prev, x, f_prev, rf.value));
      x_prev = x;
      f_prev = rf.value;
      prev_valid = true;
    } else {
      prev_valid = false;
    }
  }
  return roots;
}

// Root of the minimum condition at fixed shift: smallest-E0 candidate with
// positive curvature. hint > 0 narrows the scan around a previous root.
double solve_r0(const PotentialSpec& spec, const StateSpec& state, double lbar,
                const SolveOptions& opts, double hint) {
  const double scale = length_scale(spec, state.mass);
  std::vector<double> roots;
  if (hint > 0.0)
    roots = scan_roots(spec, state, lbar, hint / 4.0, hint * 4.0, 64);
  if (roots.empty())
    roots = scan_roots(spec, state, lbar, opts.bracket_lo * scale,
                       opts.bracket_hi * scale, opts.scan_per_decade);
  if (roots.empty())
    throw std::runtime_error(
        "no sign change of the minimum condition on the bracket (no bound "
        "state or invalid expansion)");

  const double Q = lbar * lbar;
  std::vector<Candidate> good;
  for (double r0 : roots) {
    try {
      const double e0 = leading_energy(spec, state, r0, Q);
      if (curvature_of_e0(spec, state, r0, Q) > 0.0) good.push_back({r0, e0});
    } catch (const std::domain_error&) {
      continue;
    }
  }
  if (good.empty())
    throw std::runtime_error(
        "no expansion radius with d2E0/dr0^2 > 0 among the candidate roots");
  return std::min_element(good.begin(), good.end(),
                          [](const Candidate& a, const Candidate& b) {
                            return a.e0 < b.e0;
                          })
      ->r0;
}

}  // namespace

ExpansionPoint solve_expansion_point(const PotentialSpec& spec,
                                     const StateSpec& state,
                                     const SolveOptions& opts) {
  spec.validate();
  state.validate();

  double beta = -0.5;
  double r0 = 0.0, w = 0.0;
  bool converged = false;
  int used = 0;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    used = iter;
    const double lbar = static_cast<double>(state.l) - beta;
    const double r0_new = solve_r0(spec, state, lbar, opts, r0);
    const double Q = lbar * lbar;
    const double e0 = leading_energy(spec, state, r0_new, Q);

    const RadialSeries vec = eval_vector_series(spec, r0_new);
    const RadialSeries gam = gamma_series(spec, state, r0_new);
    const double r4 = r0_new * r0_new * r0_new * r0_new;
    const double w2 =
        12.0 + 2.0 * r4 * gam.d[2] / Q + 4.0 * r4 * vec.d[2] * e0 / Q;
    if (!(w2 > 0.0))
      throw std::domain_error(
          "imaginary oscillator frequency (w^2 <= 0): state rejected");
    w = std::sqrt(w2);

    const double beta_target =
        -(1.0 + (static_cast<double>(state.n_r) + 0.5) * w) / 2.0;
    const double beta_next = beta + opts.damping * (beta_target - beta);

    const bool r0_done =
        r0 > 0.0 && std::abs(r0_new - r0) <= opts.r0_rel_tol * r0_new;
    const bool beta_done =
        std::abs(beta_next - beta) <= opts.r0_rel_tol * std::max(1.0, std::abs(beta));
    r0 = r0_new;
    beta = beta_next;
    if (r0_done && beta_done) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    const double lbar = static_cast<double>(state.l) - beta;
    const RootFunction rf = expansion_point_equation(spec, state, r0, lbar);
    throw std::runtime_error(
        "expansion point fixed point did not converge in " +
        std::to_string(opts.max_iterations) +
        " iterations; residual = " + std::to_string(rf.value));
  }

  ExpansionPoint pt;
  pt.r0 = r0;
  pt.beta = beta;
  pt.w = w;
  pt.lbar = static_cast<double>(state.l) - beta;
  pt.Q = pt.lbar * pt.lbar;
  pt.iterations = used;

  if (curvature_of_e0(spec, state, pt.r0, pt.Q) <= 0.0)
    throw std::runtime_error(
        "converged expansion point is not a minimum of E0");
  return pt;
}

CoefficientSet coefficient_ladder(const PotentialSpec& spec,
                                  const StateSpec& state,
                                  const ExpansionPoint& pt, double e0,
                                  std::optional<double> e2) {
  const RadialSeries vec = eval_vector_series(spec, pt.r0);
  const RadialSeries gam = gamma_series(spec, state, pt.r0);
  const double r0 = pt.r0, Q = pt.Q, beta = pt.beta;
  const double shift = 2.0 * beta + 1.0;

  const double r2 = r0 * r0;
  const double r3 = r2 * r0, r4 = r3 * r0, r5 = r4 * r0, r6 = r5 * r0;
  const double r7 = r6 * r0, r8 = r7 * r0;

  CoefficientSet cs;
  cs.eps1 = -2.0 * shift;
  cs.eps2 = 3.0 * shift;
  cs.eps3 = -4.0 + (r5 / (6.0 * Q)) * (gam.d[3] + 2.0 * vec.d[3] * e0);
  cs.eps4 = 5.0 + (r6 / (24.0 * Q)) * (gam.d[4] + 2.0 * vec.d[4] * e0);
  cs.delta3 = -4.0 * shift;
  cs.delta4 = 5.0 * shift;
  cs.delta5 = -6.0 + (r7 / (120.0 * Q)) * (gam.d[5] + 2.0 * vec.d[5] * e0);
  cs.delta6 = 7.0 + (r8 / (720.0 * Q)) * (gam.d[6] + 2.0 * vec.d[6] * e0);
  if (e2) {
    cs.delta1 = -2.0 * beta * (beta + 1.0) + 2.0 * r3 * vec.d[1] * (*e2) / Q;
    cs.delta2 = 3.0 * beta * (beta + 1.0) + r4 * vec.d[2] * (*e2) / Q;
  }

  const auto [a1, a2] = anharmonic_corrections(cs, pt.w, state.n_r);
  cs.alpha1 = a1;
  cs.alpha2 = a2;
  return cs;
}

EnergyBreakdown energy_series(const PotentialSpec& spec, const StateSpec& state,
                              const ExpansionPoint& pt,
                              const CoefficientSet& coeffs) {
  if (!coeffs.alpha2)
    throw std::invalid_argument(
        "energy_series needs a full coefficient set (alpha2 missing: run the "
        "ladder with E2)");

  const double e0 = leading_energy(spec, state, pt.r0, pt.Q);
  const double v0 = eval_vector_series(spec, pt.r0).d[0];
  const double gap = e0 - v0;
  if (std::abs(gap) < 1e-300 * std::max(1.0, std::abs(e0)))
    throw std::domain_error("degenerate expansion: E0 = V(r0)");
  const double denom = 2.0 * pt.r0 * pt.r0 * gap;

  EnergyBreakdown eb;
  eb.e0 = e0;
  eb.e2_term = (pt.beta * (pt.beta + 1.0) + coeffs.alpha1) / denom;
  eb.e3_term = *coeffs.alpha2 / (pt.lbar * denom);
  eb.total = eb.e0 + eb.e2_term + eb.e3_term;
  eb.binding = eb.total - state.mass;

  const double e1 = pt.Q / denom *
                    (2.0 * pt.beta + 1.0 +
                     (static_cast<double>(state.n_r) + 0.5) * pt.w);
  eb.e1_residual = std::abs(e1) / std::abs(e0);

  eb.r0 = pt.r0;
  eb.beta = pt.beta;
  eb.w = pt.w;
  return eb;
}

SolveResult solve_state(const PotentialSpec& spec, const StateSpec& state,
                        const SolveOptions& opts) {
  SolveResult res;
  res.point = solve_expansion_point(spec, state, opts);

  const double e0 = leading_energy(spec, state, res.point.r0, res.point.Q);
  const double v0 = eval_vector_series(spec, res.point.r0).d[0];
  const double denom = 2.0 * res.point.r0 * res.point.r0 * (e0 - v0);

  // eps's -> alpha1 -> E2 -> delta's -> alpha2 -> E3: the only acyclic order
  const CoefficientSet phase1 =
      coefficient_ladder(spec, state, res.point, e0);
  const double e2 =
      res.point.Q * (res.point.beta * (res.point.beta + 1.0) + phase1.alpha1) /
      denom;
  res.coeffs = coefficient_ladder(spec, state, res.point, e0, e2);
  res.energy = energy_series(spec, state, res.point, res.coeffs);
  return res;
}

}  // namespace slet
