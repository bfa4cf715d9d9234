#include "slet/spectra.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

namespace slet {

int kappa_of(int l, int two_j) {
  if (two_j < 1 || two_j % 2 == 0)
    throw std::invalid_argument("j must be a positive half-integer");
  if (two_j == 2 * l + 1) return -(l + 1);
  if (two_j == 2 * l - 1) {
    if (l == 0)
      throw std::invalid_argument("l = 0 admits no j = l - 1/2 state");
    return l;
  }
  throw std::invalid_argument("j must be l + 1/2 or l - 1/2");
}

StateSpec kg_state(int n_r, int l, double mass) {
  StateSpec s;
  s.n_r = n_r;
  s.l = l;
  s.kappa = -(l + 1);  // any kappa with kappa(kappa+1) = l(l+1); inert at lambda=0
  s.lambda = 0;
  s.mass = mass;
  s.validate();
  return s;
}

StateSpec dirac_state(int n_r, int l, int two_j, double mass) {
  StateSpec s;
  s.n_r = n_r;
  s.l = l;
  s.kappa = kappa_of(l, two_j);
  s.lambda = 1;
  s.mass = mass;
  s.validate();
  return s;
}

double observable(const ParticleSystem& system, const PotentialSpec& spec,
                  const EnergyBreakdown& breakdown) {
  switch (system.rule) {
    case MassRule::Binding:
      return breakdown.binding;
    case MassRule::TwiceE:
      return 2.0 * breakdown.total;
    case MassRule::EPlusSpectator:
      if (!system.spectator_mass)
        throw std::invalid_argument("mass rule needs a spectator mass");
      return breakdown.total + *system.spectator_mass;
    case MassRule::ScaledEpsilon: {
      const double e = breakdown.total;
      const double m = system.mass;
      const double nu = spec.exponent;
      const double base =
          (e + m) * std::pow(2.0 * spec.strength, -2.0 / nu);
      return (e - m - 2.0 * spec.offset) * std::pow(base, nu / (nu + 2.0));
    }
  }
  throw std::invalid_argument("unknown mass rule");
}

namespace {

std::vector<std::array<int, 3>> coulomb_kg_states() {
  // 1s 2s 2P 3s 3P 3d 4s 4P 4d 4f; N = n_r + l + 1
  return {{0, 0, -1}, {1, 0, -1}, {0, 1, -1}, {2, 0, -1}, {1, 1, -1},
          {0, 2, -1}, {3, 0, -1}, {2, 1, -1}, {1, 2, -1}, {0, 3, -1}};
}

std::vector<std::array<int, 3>> coulomb_dirac_states() {
  return {{0, 0, 1},  {1, 0, 1},  {0, 1, 1},  {0, 1, 3},
          {2, 0, 1},  {1, 1, 1},  {1, 1, 3},  {0, 2, 3},
          {0, 2, 5},  {3, 0, 1},  {2, 1, 1},  {2, 1, 3},
          {1, 2, 3},  {1, 2, 5},  {0, 3, 5},  {0, 3, 7}};
}

std::vector<std::array<int, 3>> grid_states(int nr_max, int l_min, int l_max,
                                            int j_offset) {
  // j_offset: -1 spin-0 rows, 0 j = l - 1/2, +1 j = l + 1/2
  std::vector<std::array<int, 3>> out;
  for (int n_r = 0; n_r <= nr_max; ++n_r)
    for (int l = l_min; l <= l_max; ++l) {
      const int two_j = j_offset < 0 ? -1 : (j_offset > 0 ? 2 * l + 1 : 2 * l - 1);
      out.push_back({n_r, l, two_j});
    }
  return out;
}

std::vector<std::array<int, 3>> power_law_states() {
  return {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {3, 0, 1},
          {4, 0, 1}, {0, 1, 3}, {1, 1, 3}, {0, 2, 5}};
}

PotentialSpec power_law_potential() {
  // A = a^(nu+1), a = 1.709, nu = 0.1, V0 = -2.028 GeV
  return PotentialSpec::power_law_equal_mix(std::pow(1.709, 1.1), 0.1, -2.028);
}

constexpr double kPionMeV = 139.577;      // pion rest energy, MeV
constexpr double kElectronMeV = 0.5110041;
constexpr double kFineStructure = 1.0 / 137.03602;
constexpr double kCharmMass = 1.6179;     // GeV
constexpr double kBottomMass = 5.0114;
constexpr double kStrangeMass = 0.325;
constexpr double kDownMass = 0.01;

std::vector<TablePreset> make_presets() {
  std::vector<TablePreset> t(9);

  t[0].id = TableId::T1;
  t[0].name = "t1";
  t[0].description = "spin-0 pion, Coulomb 4-vector potential (binding, keV)";
  t[0].potential = PotentialSpec::coulomb_vector(kFineStructure);
  t[0].system = {"pi", 1.0, MassRule::Binding, {}};
  t[0].lambda = 0;
  t[0].states = coulomb_kg_states();
  t[0].scale = kPionMeV * 1e3;  // internal m = 1 -> keV
  t[0].unit = "keV";
  t[0].golden_file = "table1.csv";
  t[0].tolerance = 2e-5;

  t[1].id = TableId::T2;
  t[1].name = "t2";
  t[1].description = "electron, Coulomb 4-vector potential (binding, eV)";
  t[1].potential = PotentialSpec::coulomb_vector(kFineStructure);
  t[1].system = {"e", 1.0, MassRule::Binding, {}};
  t[1].lambda = 1;
  t[1].states = coulomb_dirac_states();
  t[1].scale = kElectronMeV * 1e6;  // internal m = 1 -> eV
  t[1].unit = "eV";
  t[1].golden_file = "table2.csv";
  t[1].tolerance = 1e-4;

  t[2].id = TableId::T3;
  t[2].name = "t3";
  t[2].description = "psi family, scalar linear potential, spin-0 (M = 2E, GeV)";
  t[2].potential = PotentialSpec::linear_scalar(0.137);
  t[2].system = {"c", 1.12, MassRule::TwiceE, {}};
  t[2].lambda = 0;
  t[2].states = grid_states(4, 0, 3, -1);
  t[2].scale = 1.0;
  t[2].unit = "GeV";
  t[2].golden_file = "table3.csv";
  t[2].tolerance = 1e-3;

  t[3].id = TableId::T4;
  t[3].name = "t4";
  t[3].description =
      "J/psi family, scalar linear potential, j = l + 1/2 (M = 2E, GeV)";
  t[3].potential = PotentialSpec::linear_scalar(0.137);
  t[3].system = {"c", 1.12, MassRule::TwiceE, {}};
  t[3].lambda = 1;
  t[3].states = grid_states(4, 0, 3, +1);
  t[3].scale = 1.0;
  t[3].unit = "GeV";
  t[3].golden_file = "table4.csv";
  t[3].tolerance = 1e-3;

  t[4].id = TableId::T5;
  t[4].name = "t5";
  t[4].description =
      "J/psi family, scalar linear potential, j = l - 1/2 (M = 2E, GeV)";
  t[4].potential = PotentialSpec::linear_scalar(0.137);
  t[4].system = {"c", 1.12, MassRule::TwiceE, {}};
  t[4].lambda = 1;
  t[4].states = grid_states(4, 1, 4, 0);
  t[4].scale = 1.0;
  t[4].unit = "GeV";
  t[4].golden_file = "table5.csv";
  t[4].tolerance = 1e-3;

  t[5].id = TableId::T6;
  t[5].name = "t6";
  t[5].description =
      "c cbar, equally mixed power-law potential (scaled eigenvalue)";
  t[5].potential = power_law_potential();
  t[5].system = {"c", kCharmMass, MassRule::ScaledEpsilon, {}};
  t[5].lambda = 1;
  t[5].states = power_law_states();
  t[5].scale = 1.0;
  t[5].unit = "";
  t[5].golden_file = "table6.csv";
  t[5].tolerance = 2e-4;

  t[6].id = TableId::T7;
  t[6].name = "t7";
  t[6].description = "b bbar, equally mixed power-law potential (M = 2E, GeV)";
  t[6].potential = power_law_potential();
  t[6].system = {"b", kBottomMass, MassRule::TwiceE, {}};
  t[6].lambda = 1;
  t[6].states = power_law_states();
  t[6].scale = 1.0;
  t[6].unit = "GeV";
  t[6].golden_file = "table7.csv";
  t[6].tolerance = 5e-4;

  t[7].id = TableId::T8;
  t[7].name = "t8";
  t[7].description = "s sbar, equally mixed power-law potential (M = 2E, GeV)";
  t[7].potential = power_law_potential();
  t[7].system = {"s", kStrangeMass, MassRule::TwiceE, {}};
  t[7].lambda = 1;
  t[7].states = power_law_states();
  t[7].scale = 1.0;
  t[7].unit = "GeV";
  t[7].golden_file = "table8.csv";
  t[7].tolerance = 5e-4;

  t[8].id = TableId::T9;
  t[8].name = "t9";
  t[8].description =
      "c dbar, equally mixed power-law potential (M = E_d + m_c, GeV)";
  t[8].potential = power_law_potential();
  t[8].system = {"d", kDownMass, MassRule::EPlusSpectator, kCharmMass};
  t[8].lambda = 1;
  t[8].states = power_law_states();
  t[8].scale = 1.0;
  t[8].unit = "GeV";
  t[8].golden_file = "table9.csv";
  t[8].tolerance = 5e-4;

  return t;
}

const std::vector<TablePreset>& presets() {
  static const std::vector<TablePreset> p = make_presets();
  return p;
}

SpectrumRow compute_row(const TablePreset& preset, const std::array<int, 3>& st) {
  SpectrumRow row;
  row.n_r = st[0];
  row.l = st[1];
  if (st[2] >= 0) row.two_j = st[2];
  row.unit = preset.unit;
  try {
    const StateSpec state =
        st[2] >= 0 ? dirac_state(st[0], st[1], st[2], preset.system.mass)
                   : kg_state(st[0], st[1], preset.system.mass);
    const SolveResult res = solve_state(preset.potential, state);
    row.breakdown = res.energy;
    row.value = observable(preset.system, preset.potential, res.energy) *
                preset.scale;
    row.w0 = (res.energy.e0 - state.mass) * preset.scale;
    row.w2 = (res.energy.e0 + res.energy.e2_term - state.mass) * preset.scale;
    row.w3 = res.energy.binding * preset.scale;
    row.converged = true;
  } catch (const std::exception& ex) {
    row.converged = false;
    row.diagnostic = ex.what();
  }
  return row;
}

}  // namespace

const TablePreset& table_preset(TableId id) {
  return presets()[static_cast<std::size_t>(id)];
}

std::optional<TableId> parse_table_id(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p.id;
  return std::nullopt;
}

unsigned thread_cap() {
  const char* env = std::getenv("SLET_THREADS");
  if (env) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
    if (v < 0) return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<SpectrumRow> run_table(TableId id) {
  const TablePreset& preset = table_preset(id);
  const std::size_t n = preset.states.size();
  std::vector<SpectrumRow> rows(n);

  const unsigned cap = thread_cap();
  if (cap <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      rows[i] = compute_row(preset, preset.states[i]);
    return rows;
  }

  std::vector<std::future<SpectrumRow>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    futures.push_back(std::async(std::launch::deferred | std::launch::async,
                                 compute_row, std::cref(preset),
                                 std::cref(preset.states[i])));
  for (std::size_t i = 0; i < n; ++i) rows[i] = futures[i].get();
  return rows;
}

}  // namespace slet
