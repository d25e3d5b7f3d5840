#pragma once

#include <optional>
#include <string>

#include "vacforce/forces.hpp"
#include "vacforce/table.hpp"

namespace vacforce {

enum class ScenarioKind {
  SlabForce,
  AtomForce,
  MediumAtomForce,
  AtomAtom,
  Asymptotics,
};

enum class OutputUnits { Natural, SI };

enum class AsymptoticLaw {
  AtomShort,
  AtomLarge,
  MediumAtomShort,
  MediumAtomLarge,
};

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  bool log_spacing = true;
};

struct PairSpec {
  bool medium_embedded = false;  // false: embedded-embedded
  AtomSpecies a;                 // medium atom when medium_embedded
  AtomSpecies b;
  Medium host;                   // embedded-embedded only
};

// A fully resolved, validated scenario. resolved_json is a canonical
// re-serialization (defaults filled in) that parses back to the same
// scenario; it is echoed into every result table.
struct ScenarioConfig {
  double omega_ref = 1.0;  // rad/s, used only for SI output
  OutputUnits output = OutputUnits::Natural;
  QuadratureSpec quadrature;
  ScenarioKind kind = ScenarioKind::AtomForce;
  Formulation formulation = Formulation::Lorentz;

  Medium medium = Medium::vacuum();
  std::optional<Mirror> mirror1;
  std::optional<double> d1;
  std::optional<Mirror> mirror2;
  SweepSpec sweep;

  std::optional<AtomSpecies> atom;
  std::optional<SlabConfig> slab;
  std::optional<MediumAtom> medium_atom;
  std::optional<PairSpec> pair;
  std::optional<AsymptoticLaw> law;

  std::string resolved_json;
};

// Parses and validates a JSON scenario document. Unknown keys, dangling
// material references, and invalid geometry raise ConfigError naming the
// offending path. No force computation happens before validation passes.
ScenarioConfig parse_config(const std::string& text);

// Runs the configured sweep, one row per point in sweep order. Rows that
// fail to converge are flagged, never dropped. Values are stored in the
// declared output units.
ResultTable run_sweep(const ScenarioConfig& config);

// Human-readable description of the config document schema.
std::string config_schema_text();

}  // namespace vacforce
