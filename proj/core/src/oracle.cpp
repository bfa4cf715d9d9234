#include "slet/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace slet::oracle {

double exact_coulomb_dirac(int n_r, int kappa, double coupling, double mass) {
  if (n_r < 0) throw std::domain_error("n_r must be >= 0");
  if (kappa == 0) throw std::domain_error("kappa must be nonzero");
  if (n_r == 0 && kappa > 0)
    throw std::domain_error("forbidden state: n_r = 0 with kappa > 0");
  const double k2 = static_cast<double>(kappa) * kappa;
  if (!(k2 > coupling * coupling))
    throw std::domain_error("coupling too strong: kappa^2 <= coupling^2");
  const double nu =
      static_cast<double>(n_r) + std::sqrt(k2 - coupling * coupling);
  return mass / std::sqrt(1.0 + coupling * coupling / (nu * nu));
}

double exact_coulomb_kg(int n_r, int l, double coupling, double mass) {
  if (n_r < 0 || l < 0) throw std::domain_error("quantum numbers must be >= 0");
  const double lh = static_cast<double>(l) + 0.5;
  if (!(lh * lh > coupling * coupling))
    throw std::domain_error("coupling too strong: (l+1/2)^2 <= coupling^2");
  const double nu = static_cast<double>(n_r) + 0.5 +
                    std::sqrt(lh * lh - coupling * coupling);
  return mass / std::sqrt(1.0 + coupling * coupling / (nu * nu));
}

double exact_coulomb_dirac_state(int n_r, int l, int two_j, double coupling,
                                 double mass) {
  const int kappa = two_j == 2 * l + 1 ? -(l + 1) : l;
  return exact_coulomb_dirac(kappa > 0 ? n_r + 1 : n_r, kappa, coupling, mass);
}

namespace {

// Radial grid with the E-independent pieces of
// f(r; E) = l(l+1)/r^2 + U(r) + (m+S)^2 - (E-V)^2 = a(r) - (E - v(r))^2.
struct ShootingGrid {
  double r_min = 0.0;
  double h = 0.0;
  int n = 0;
  std::vector<double> a;  // centrifugal + U + (m+S)^2
  std::vector<double> v;  // vector potential
  double r(int i) const { return r_min + h * i; }
};

double u_term(const PotentialSpec& spec, const StateSpec& state, double r) {
  if (state.lambda == 0) return 0.0;
  const RadialSeries y = eval_y_series(spec, r);
  return (y.d[2] - 2.0 * state.kappa * y.d[1] / r +
          3.0 * y.d[1] * y.d[1] / (4.0 * state.mass)) /
         (4.0 * state.mass);
}

ShootingGrid build_grid(const PotentialSpec& spec, const StateSpec& state,
                        double r_min, double r_max, int steps) {
  ShootingGrid g;
  g.n = steps + 1;
  g.r_min = r_min;
  g.h = (r_max - r_min) / steps;
  g.a.resize(g.n);
  g.v.resize(g.n);
  const double ll = static_cast<double>(state.l) * (state.l + 1);
  for (int i = 0; i < g.n; ++i) {
    const double r = g.r(i);
    const double s = eval_scalar_series(spec, r).d[0];
    const double mr = state.mass + s;
    g.v[i] = eval_vector_series(spec, r).d[0];
    g.a[i] = ll / (r * r) + u_term(spec, state, r) + mr * mr;
  }
  return g;
}

struct SweepResult {
  int nodes = 0;
  // solution values at the matching point and one step beyond (sign-fixed so
  // the value at the matching index is positive)
  double at_match = 0.0;
  double past_match = 0.0;
};

constexpr double kRescale = 1e250;

// Numerov for u'' = f u with f_i = a_i - (E - v_i)^2.
SweepResult sweep_outward(const ShootingGrid& g, double E, int l, int i_match) {
  const double h2 = g.h * g.h / 12.0;
  auto f = [&](int i) { return g.a[i] - (E - g.v[i]) * (E - g.v[i]); };

  SweepResult out;
  double um = std::pow(g.r(0), l + 1);
  double u0 = std::pow(g.r(1), l + 1);
  double fm = f(0), f0 = f(1);
  for (int i = 1; i < i_match + 1; ++i) {
    const double fp = f(i + 1);
    const double up =
        ((2.0 + 10.0 * h2 * f0) * u0 - (1.0 - h2 * fm) * um) / (1.0 - h2 * fp);
    if (u0 != 0.0 && up != 0.0 && (u0 < 0.0) != (up < 0.0) && i + 1 <= i_match)
      ++out.nodes;
    um = u0;
    u0 = up;
    fm = f0;
    f0 = fp;
    if (std::abs(u0) > kRescale) {
      u0 /= kRescale;
      um /= kRescale;
    }
  }
  // loop ends with u0 = u(i_match + 1), um = u(i_match)
  const double sign = um >= 0.0 ? 1.0 : -1.0;
  out.at_match = um * sign;
  out.past_match = u0 * sign;
  return out;
}

SweepResult sweep_inward(const ShootingGrid& g, double E, int i_match) {
  const double h2 = g.h * g.h / 12.0;
  auto f = [&](int i) { return g.a[i] - (E - g.v[i]) * (E - g.v[i]); };

  const int last = g.n - 1;
  const double k_last = std::sqrt(std::max(f(last), 0.0));
  const double k_prev = std::sqrt(std::max(f(last - 1), 0.0));
  SweepResult out;
  double up = 1e-250;
  double u0 = up * std::exp(0.5 * g.h * (k_last + k_prev));
  double fp = f(last), f0 = f(last - 1);
  for (int i = last - 1; i > i_match; --i) {
    const double fm = f(i - 1);
    const double um =
        ((2.0 + 10.0 * h2 * f0) * u0 - (1.0 - h2 * fp) * up) / (1.0 - h2 * fm);
    if (u0 != 0.0 && um != 0.0 && (u0 < 0.0) != (um < 0.0) && i - 1 > i_match)
      ++out.nodes;
    up = u0;
    u0 = um;
    fp = f0;
    f0 = fm;
    if (std::abs(u0) > kRescale) {
      u0 /= kRescale;
      up /= kRescale;
    }
  }
  // loop ends with u0 = u(i_match), up = u(i_match + 1)
  const double sign = u0 >= 0.0 ? 1.0 : -1.0;
  out.at_match = u0 * sign;
  out.past_match = up * sign;
  return out;
}

// Number of eigenvalues below E: combined node count plus the log-derivative
// mismatch indicator at the matching point.
int count_below(const ShootingGrid& g, const StateSpec& state, double E) {
  auto f = [&](int i) { return g.a[i] - (E - g.v[i]) * (E - g.v[i]); };
  int i_match = 1;
  double f_min = f(1);
  for (int i = 2; i < g.n - 2; ++i)
    if (f(i) < f_min) {
      f_min = f(i);
      i_match = i;
    }

  const SweepResult out = sweep_outward(g, E, state.l, i_match);
  const SweepResult in = sweep_inward(g, E, i_match);
  const double mismatch =
      out.past_match * in.at_match - in.past_match * out.at_match;
  return out.nodes + in.nodes + (mismatch < 0.0 ? 1 : 0);
}

double wkb_kappa(const ShootingGrid&, const PotentialSpec& spec,
                 const StateSpec& state, double r, double E) {
  const double s = eval_scalar_series(spec, r).d[0];
  const double v = eval_vector_series(spec, r).d[0];
  const double mr = state.mass + s;
  const double ll = static_cast<double>(state.l) * (state.l + 1);
  const double f = ll / (r * r) + u_term(spec, state, r) + mr * mr -
                   (E - v) * (E - v);
  return std::sqrt(std::max(f, 0.0));
}

// Outer turning point for energy E by coarse geometric scan + bisection.
double outer_turning_point(const PotentialSpec& spec, const StateSpec& state,
                           double E, double scale) {
  auto forbidden = [&](double r) {
    return wkb_kappa({}, spec, state, r, E) > 0.0;
  };
  double r_hi = scale;
  int guard = 0;
  while (!forbidden(r_hi) && guard++ < 400) r_hi *= 1.2;
  double r_lo = r_hi / 1.2;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (r_lo + r_hi);
    (forbidden(mid) ? r_hi : r_lo) = mid;
  }
  return r_hi;
}

// r_max where the accumulated WKB decay phase beyond the turning point
// reaches ~40 (truncation error ~ e^-80).
double auto_r_max(const PotentialSpec& spec, const StateSpec& state, double E,
                  double scale) {
  const double rt = outer_turning_point(spec, state, E, scale);
  double phase = 0.0;
  double r = rt;
  double k_prev = 0.0;
  const double dr = std::max(rt, scale) / 200.0;
  int guard = 0;
  while (phase < 40.0 && guard++ < 1000000) {
    const double k_next = wkb_kappa({}, spec, state, r + dr, E);
    phase += 0.5 * (k_prev + k_next) * dr;
    k_prev = k_next;
    r += dr;
  }
  return r;
}

struct EnergyBracket {
  double lo = 0.0, hi = 0.0;
};

EnergyBracket auto_bracket(const PotentialSpec& spec, const StateSpec& state) {
  EnergyBracket b;
  if (spec.kind == PotentialKind::CoulombVector) {
    // hydrogen-like estimate: midpoints toward the neighbouring principal
    // levels, so neither end sits on an eigenvalue
    const double N = state.n_r + state.l + 1;
    const double a2 = spec.coupling * spec.coupling;
    const double w_n = -a2 / (2.0 * N * N);
    const double w_prev = N > 1 ? -a2 / (2.0 * (N - 1) * (N - 1)) : 4.0 * w_n;
    const double w_next = -a2 / (2.0 * (N + 1) * (N + 1));
    b.lo = state.mass * (1.0 + 0.5 * (w_n + w_prev));
    b.hi = state.mass * (1.0 + 0.5 * (w_n + w_next));
  } else {
    // confining: start from the potential's energy scale and let the caller
    // grow the top until the node count brackets the target
    const double escale = 1.0 / length_scale(spec, state.mass);
    b.lo = 0.05 * state.mass;
    b.hi = state.mass +
           escale * (0.5 + 0.35 * (2.0 * state.n_r + state.l));
  }
  return b;
}

// Step count that keeps the Numerov factors (1 - h^2 f/12) positive and the
// oscillations resolved: h^2 max|f| / 12 <= 0.05.
int stable_steps(const PotentialSpec& spec, const StateSpec& state,
                 double r_min, double r_max, double e_lo, double e_hi) {
  const int probe = 2000;
  const double ll = static_cast<double>(state.l) * (state.l + 1);
  double f_max = 0.0;
  for (int i = 0; i <= probe; ++i) {
    const double r = r_min + (r_max - r_min) * i / probe;
    const double s = eval_scalar_series(spec, r).d[0];
    const double v = eval_vector_series(spec, r).d[0];
    const double a =
        ll / (r * r) + u_term(spec, state, r) + (state.mass + s) * (state.mass + s);
    f_max = std::max({f_max, std::abs(a - (e_lo - v) * (e_lo - v)),
                      std::abs(a - (e_hi - v) * (e_hi - v))});
  }
  const double h = std::sqrt(0.6 / std::max(f_max, 1e-300));
  const double needed = (r_max - r_min) / h;
  if (needed > 4e6) return -1;  // domain unresolvable at sane cost
  return static_cast<int>(needed) + 1;
}

}  // namespace

double shoot_energy(const PotentialSpec& spec, const StateSpec& state,
                    const ShootingConfig& cfg) {
  spec.validate();
  state.validate();
  if (cfg.steps < 10000)
    throw std::invalid_argument("shooting needs at least 1e4 steps");

  EnergyBracket bracket;
  if (cfg.e_lo == 0.0 && cfg.e_hi == 0.0)
    bracket = auto_bracket(spec, state);
  else
    bracket = {cfg.e_lo, cfg.e_hi};
  if (!(bracket.hi > bracket.lo))
    throw std::invalid_argument("empty shooting energy bracket");

  const double scale = length_scale(spec, state.mass);
  const int target = state.n_r;

  std::string history;
  for (int attempt = 0;; ++attempt) {
    const double r_max = cfg.r_max > 0.0
                             ? cfg.r_max
                             : auto_r_max(spec, state, bracket.hi, scale);
    double h_trial = r_max / cfg.steps;
    double r_min = cfg.r_min > 0.0 ? cfg.r_min : (state.l + 2) * h_trial;
    int steps = cfg.steps;
    const int needed = stable_steps(spec, state, r_min, r_max, bracket.lo,
                                    bracket.hi);
    if (needed < 0) {
      // top of the bracket pushes the domain beyond sane resolution
      if (attempt >= 25)
        throw std::runtime_error(
            "shooting domain unresolvable for the requested bracket:" +
            history);
      bracket.hi = state.mass + 0.5 * (bracket.hi - state.mass);
      continue;
    }
    if (needed > steps) {
      steps = needed;
      h_trial = r_max / steps;
      if (cfg.r_min <= 0.0) r_min = (state.l + 2) * h_trial;
    }
    ShootingGrid grid = build_grid(spec, state, r_min, r_max, steps);

    const int k_lo = count_below(grid, state, bracket.lo);
    const int k_hi = count_below(grid, state, bracket.hi);
    history += " [" + std::to_string(bracket.lo) + "," +
               std::to_string(bracket.hi) + "]->(" + std::to_string(k_lo) +
               "," + std::to_string(k_hi) + ") rmax=" + std::to_string(r_max);
    if (k_lo <= target && k_hi >= target + 1) {
      double lo = bracket.lo, hi = bracket.hi;
      while (hi - lo > cfg.rel_tol * std::abs(hi)) {
        const double mid = 0.5 * (lo + hi);
        (count_below(grid, state, mid) >= target + 1 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    if (attempt >= 25)
      throw std::runtime_error(
          "shooting bracket does not isolate the target state (want " +
          std::to_string(target) + "):" + history);
    // grow the bracket and retry
    if (k_lo > target) bracket.lo = std::max(1e-8 * state.mass, bracket.lo * 0.5);
    if (k_hi < target + 1) {
      if (spec.kind == PotentialKind::CoulombVector)
        bracket.hi = state.mass - 0.25 * (state.mass - bracket.hi);
      else
        bracket.hi = state.mass + (bracket.hi - state.mass) * 1.6 + 0.1;
    }
  }
}

AnharmonicFit anharmonic_fit(const CoefficientSet& couplings, double w,
                             int n_r, std::span<const double> lbar_samples,
                             int basis_size) {
  if (!(w > 0.0)) throw std::domain_error("anharmonic_fit needs w > 0");
  if (!couplings.delta1 || !couplings.delta2)
    throw std::invalid_argument("anharmonic_fit needs the full delta set");

  static constexpr double kDefault[] = {200.0, 320.0, 520.0, 840.0,
                                        1360.0, 2200.0, 3600.0};
  if (lbar_samples.empty()) lbar_samples = kDefault;
  if (lbar_samples.size() < 4)
    throw std::invalid_argument("anharmonic_fit needs >= 4 lbar samples");

  const int N = std::max(basis_size, 200);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i)
    X(i, i + 1) = X(i + 1, i) = std::sqrt((i + 1.0) / w);
  std::vector<Eigen::MatrixXd> xp(7);
  xp[0] = Eigen::MatrixXd::Identity(N, N);
  for (int j = 1; j <= 6; ++j) xp[j] = xp[j - 1] * X;

  Eigen::MatrixXd H0 = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) H0(i, i) = (i + 0.5) * w;

  const auto n_samples = static_cast<int>(lbar_samples.size());
  Eigen::VectorXd y(n_samples);
  Eigen::MatrixXd A(n_samples, 4);
  for (int s = 0; s < n_samples; ++s) {
    const double lbar = lbar_samples[s];
    const double g = 1.0 / std::sqrt(lbar);
    Eigen::MatrixXd H = H0;
    H += g * (couplings.eps1 * xp[1] + couplings.eps3 * xp[3]);
    H += g * g * (couplings.eps2 * xp[2] + couplings.eps4 * xp[4]);
    H += g * g * g *
         (*couplings.delta1 * xp[1] + couplings.delta3 * xp[3] +
          couplings.delta5 * xp[5]);
    H += g * g * g * g *
         (*couplings.delta2 * xp[2] + couplings.delta4 * xp[4] +
          couplings.delta6 * xp[6]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    // perturbative level: eigenvector with the largest overlap on |n_r>
    int best = 0;
    double best_overlap = -1.0;
    for (int i = 0; i < N; ++i) {
      const double overlap = std::abs(es.eigenvectors()(n_r, i));
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = i;
      }
    }
    y(s) = es.eigenvalues()(best) - (n_r + 0.5) * w;
    A(s, 0) = 1.0 / lbar;
    A(s, 1) = 1.0 / (lbar * lbar);
    A(s, 2) = 1.0 / (lbar * lbar * lbar);
    A(s, 3) = 1.0 / (lbar * lbar * lbar * lbar);
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) /
                      svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e14))
    throw std::runtime_error("ill-conditioned anharmonic fit (cond = " +
                             std::to_string(cond) + ")");
  const Eigen::VectorXd coef = svd.solve(y);

  AnharmonicFit fit;
  fit.alpha1 = coef(0);
  fit.alpha2 = coef(1);
  fit.max_residual = (A * coef - y).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace slet::oracle
