#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slet/engine.hpp"
#include "slet/potential.hpp"
#include "slet/state.hpp"

namespace slet {

/// How a single-particle eigenvalue maps to the reported observable.
enum class MassRule {
  Binding,         // W = E - m
  TwiceE,          // M = 2E (self-conjugate meson)
  EPlusSpectator,  // M = E + spectator mass
  ScaledEpsilon,   // dimensionless scaled eigenvalue of the power-law problem
};

struct ParticleSystem {
  std::string label;
  double mass = 1.0;                    // constituent / particle mass
  MassRule rule = MassRule::Binding;
  std::optional<double> spectator_mass; // required iff rule == EPlusSpectator
};

/// One computed table row. `value` is the observable after the mass rule and
/// unit scale; w0/w2/w3 are the successively corrected binding energies in
/// output units (diagnostics for the Coulomb tables).
struct SpectrumRow {
  int n_r = 0;
  int l = 0;
  std::optional<int> two_j;  // 2j for Dirac rows
  double value = 0.0;
  std::string unit;
  double w0 = 0.0, w2 = 0.0, w3 = 0.0;
  EnergyBreakdown breakdown;
  bool converged = false;
  std::string diagnostic;  // non-empty when converged == false
};

/// kappa from (l, 2j): -(l+1) for j = l+1/2, l for j = l-1/2.
/// Throws std::invalid_argument for invalid pairs (including l=0, j=l-1/2).
int kappa_of(int l, int two_j);

/// Klein-Gordon state: lambda = 0, kappa chosen consistently (inert).
StateSpec kg_state(int n_r, int l, double mass);

/// Dirac state: lambda = 1, kappa from (l, 2j).
StateSpec dirac_state(int n_r, int l, int two_j, double mass);

/// Observable per the system's mass rule. The potential supplies the
/// strength/exponent/offset entering the scaled-epsilon rule.
/// Throws std::invalid_argument when a required spectator mass is missing.
double observable(const ParticleSystem& system, const PotentialSpec& spec,
                  const EnergyBreakdown& breakdown);

enum class TableId { T1, T2, T3, T4, T5, T6, T7, T8, T9 };

/// Everything needed to (re)produce one of the published tables.
struct TablePreset {
  TableId id;
  std::string name;         // "t1".."t9"
  std::string description;
  PotentialSpec potential;
  ParticleSystem system;
  int lambda = 0;
  // (n_r, l, 2j) triples in table row order; two_j < 0 for spin-0 rows.
  std::vector<std::array<int, 3>> states;
  double scale = 1.0;       // internal energy unit -> output unit
  std::string unit;
  std::string golden_file;  // fixture filename under the golden data dir
  double tolerance = 0.0;   // comparison tolerance in output units
};

const TablePreset& table_preset(TableId id);
std::optional<TableId> parse_table_id(const std::string& name);

/// Computes every row of a preset. Rows that fail to converge carry a
/// diagnostic instead of aborting the batch. Row order is deterministic;
/// computation may fan out across threads (SLET_THREADS caps it, 0 = auto).
std::vector<SpectrumRow> run_table(TableId id);

/// Thread cap from the SLET_THREADS environment variable (0 or unset = auto).
unsigned thread_cap();

}  // namespace slet
