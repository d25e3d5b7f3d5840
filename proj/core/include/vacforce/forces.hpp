#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vacforce/dispersion.hpp"
#include "vacforce/quadrature.hpp"
#include "vacforce/stratified.hpp"

namespace vacforce {

// Sign convention used by every force in this module: a positive value
// means the force points from mirror 1 toward mirror 2, i.e. in the
// direction of decreasing d2. For a semi-infinite cavity (mirror 1
// removed) a positive value is attraction toward the remaining mirror.
// Under this convention an electric atom in vacuum in front of an ideal
// conducting mirror feels a positive force.

// Lorentz: the full force including medium screening factors 1/eps, mu
// and the medium-assisted term. Minkowski: the traditional stress-tensor
// result, obtained by dropping both.
enum class Formulation { Lorentz, Minkowski };

enum class IdealMirrorKind { Conducting, Permeable };
enum class AsymptoticRegime { Short, Large };

struct CavityConfig {
  Medium medium;
  std::optional<Mirror> mirror1;  // absent = semi-infinite cavity, z = d2
  Mirror mirror2 = Mirror::ideal_conducting();
  double d1 = 1.0;
  double d2 = 1.0;

  static CavityConfig semi_infinite(Medium medium, Mirror mirror, double z);
  static CavityConfig two_mirror(Medium medium, Mirror mirror1, double d1,
                                 Mirror mirror2, double d2);
  bool is_semi_infinite() const { return !mirror1.has_value(); }
};

struct Dopant {
  AtomSpecies species;
  double number_density = 0.0;
};

struct SlabConfig {
  Medium medium;  // eps_s, mu_s of the slab as a whole
  double d_s = 0.0;
  std::optional<Dopant> dopant;
};

// A constituent atom of the cavity medium, with the density that realizes
// n^2 = 1 + 4 pi N (alpha_e + alpha_m) to dilute-medium accuracy.
struct MediumAtom {
  AtomSpecies species;
  double number_density = 0.0;
};

struct PolarizationSplit {
  double tm = 0.0;
  double te = 0.0;
  double sum() const { return tm + te; }
};

struct ForceResult {
  double total = 0.0;
  double screened = 0.0;  // medium-screened part f^(1)
  double assisted = 0.0;  // medium-assisted part f^(2); zero for n == 1
  PolarizationSplit screened_parts;
  PolarizationSplit assisted_parts;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Cavity response function for polarization q at (xi, k):
//   (r2 e^{-2 kappa d2} - r1 e^{-2 kappa d1}) /
//   (1 - r1 r2 e^{-2 kappa (d1 + d2)})
// Reduces to R^q e^{-2 kappa z} for a semi-infinite cavity.
double cavity_response(Polarization q, const CavityConfig& cavity, double xi,
                       double k);

// Force per unit area on a slab of thickness d_s inside the cavity, with
// the screened/assisted and per-polarization breakdown. Requires both
// mirrors.
ForceResult slab_force(const CavityConfig& cavity, const SlabConfig& slab,
                       const QuadratureSpec& spec);

// Force on a single atom embedded in the cavity medium.
ForceResult atom_force(const CavityConfig& cavity, const AtomSpecies& atom,
                       Formulation formulation, const QuadratureSpec& spec);

// Force per constituent atom of the cavity medium, derived from the force
// on a thin layer of the medium itself. Requires the dilute-medium
// consistency |n^2 - 1 - 4 pi N (alpha_e + alpha_m)| < 1e-6 on a sampled
// frequency grid. Depends on the polarizabilities only through their sum.
ForceResult medium_atom_force(const CavityConfig& cavity,
                              const MediumAtom& medium_atom,
                              const QuadratureSpec& spec);

// Leading short-distance (1/z^4) atom-mirror force for a semi-infinite
// cavity. Single-medium mirrors use the closed elementary form; layered
// mirrors use the nonretarded u-integral.
double atom_force_short(const Mirror& mirror, const Medium& cavity_medium,
                        const AtomSpecies& atom, double z,
                        const QuadratureSpec& spec);

// Leading large-distance (1/z^5) atom-mirror force, evaluated with static
// response values and static-p mirror reflections.
double atom_force_large(const Mirror& mirror, const Medium& cavity_medium,
                        const AtomSpecies& atom, double z,
                        Formulation formulation, const QuadratureSpec& spec);

// Exact closed form of the large-distance force at an ideal mirror.
// Conducting mirrors take the upper sign, permeable mirrors the lower.
double ideal_mirror_closed_form(const AtomSpecies& atom,
                                const Medium& cavity_medium, double z,
                                Formulation formulation, IdealMirrorKind kind);

// Asymptotic medium-atom force: 1/z^2 at short distances (requires a
// dispersive mirror for UV convergence) and 1/z^5 at large distances.
double medium_atom_asymptotics(const Mirror& mirror,
                               const MediumAtom& medium_atom, double z,
                               AsymptoticRegime regime,
                               const QuadratureSpec& spec);

// van der Waals-London force between atoms A and B embedded in a host
// medium:
//   f = (18 hbar / pi r^7) int dxi [alpha^A_e alpha^B_e / eps^3
//                                   + alpha^A_m alpha^B_m / mu]
double atom_atom_embedded(const AtomSpecies& a, const AtomSpecies& b,
                          const Medium& host, double r,
                          const QuadratureSpec& spec);

// Force between a constituent atom of the medium and an embedded atom:
//   f = (2 hbar / pi c^2 r^5) int dxi xi^2 (alpha^M_e + alpha^M_m)
//                                          (alpha^B_e - alpha^B_m)
double atom_atom_medium_embedded(const AtomSpecies& medium_atom,
                                 const AtomSpecies& embedded, double r,
                                 const QuadratureSpec& spec);

// eps = eps_host + 4 pi N alpha_e, mu = mu_host + 4 pi N alpha_m. The
// host responses must be oscillator-based (or vacuum) so the sum is again
// a Drude-Lorentz model.
Medium doped_medium(const Medium& host, const AtomSpecies& dopant,
                    double number_density);

struct ThinSlabPoint {
  double d_s = 0.0;
  double slab_force_total = 0.0;  // full slab-force evaluation
  double predicted_total = 0.0;   // f_M + N d_s f_a decomposition
  double per_atom_estimate = 0.0; // (f - f_M)/(N d_s); 0 when N = 0
};

// Consistency report between the full slab force and its thin-slab
// decomposition into a medium-layer force plus N d_s times the per-atom
// force, Richardson-extrapolated over a geometric d_s ladder of ratio 2.
struct ThinSlabReport {
  std::vector<ThinSlabPoint> points;  // coarse -> fine
  double medium_layer_slope = 0.0;    // f_M / d_s
  double reference = 0.0;   // per-atom force (N > 0) or f_M/d_s (N = 0)
  double extrapolated = 0.0;
  double discrepancy = 0.0;  // relative to reference when it is nonzero
  bool monotone = true;
  bool converged = true;
  std::string diagnostic;  // empty when the ladder behaved
};

ThinSlabReport thin_slab_decomposition_check(const CavityConfig& cavity,
                                             const SlabConfig& slab,
                                             const QuadratureSpec& spec);

}  // namespace vacforce
