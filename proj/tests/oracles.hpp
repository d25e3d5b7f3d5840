#pragma once

#include <functional>

#include "vacforce/forces.hpp"

// Independent reference integrators backed by GSL. The library's own
// quadrature never appears on these paths, so agreement is a genuine
// cross-check and not a tautology.
namespace oracle {

// Adaptive QAGIU over [lower, inf).
double integrate_to_infinity(const std::function<double(double)>& f,
                             double lower, double rel_tol);

// Direct transcription of the slab-force formula, integrating k then xi
// on the raw (xi, k) variables (the library integrates per component over
// (xi, kappa)).
double slab_force_direct(const vacforce::CavityConfig& cavity,
                         const vacforce::SlabConfig& slab, double rel_tol);

}  // namespace oracle
