#pragma once

#include <vector>

#include "vacforce/dispersion.hpp"

namespace vacforce {

// TM (p) and TE (s) field modes of the planar geometry.
enum class Polarization { TM, TE };

constexpr double polarization_delta(Polarization q) {
  return q == Polarization::TM ? +1.0 : -1.0;
}

struct Layer {
  Medium medium;
  double thickness = 0.0;  // > 0, in units of c/omega_ref
};

// A cavity wall: an ideal reflector or a finite layer stack over a
// terminating half-space.
class Mirror {
 public:
  enum class Kind { IdealConducting, IdealPermeable, Stack };

  static Mirror ideal_conducting();
  static Mirror ideal_permeable();
  static Mirror half_space(Medium medium);
  static Mirror stack(std::vector<Layer> layers, Medium half_space);

  Kind kind() const { return kind_; }
  bool ideal() const { return kind_ != Kind::Stack; }
  const std::vector<Layer>& layers() const { return layers_; }
  const Medium& terminating_medium() const { return half_space_; }
  // The medium first seen from the cavity side (Stack only).
  const Medium& outermost_medium() const;

  double max_frequency() const;
  // False when any constituent response is a Constant != 1.
  bool uv_transparent() const;

 private:
  explicit Mirror(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<Layer> layers_;
  Medium half_space_;
};

// kappa = sqrt(n^2(i xi) xi^2 + k^2), the perpendicular wave vector in
// the given medium (c = 1). Requires xi, k >= 0 and not both zero.
double perpendicular_wavevector(const Medium& medium, double xi, double k);

// Single-interface Fresnel reflection from the cavity medium into
// `other`: rho^q = (kappa - gamma^q kappa_s) / (kappa + gamma^q kappa_s)
// with gamma^p = eps/eps_s and gamma^s = mu/mu_s.
double interface_reflection(Polarization q, const Medium& cavity,
                            const Medium& other, double xi, double k);

// Whole-slab Fresnel coefficients for a layer of thickness d_s embedded
// in the cavity medium:
//   r^q = rho^q (1 - e^{-2 kappa_s d_s}) / (1 - rho^q^2 e^{-2 kappa_s d_s})
//   t^q = (1 - rho^q^2) e^{-kappa_s d_s} / (1 - rho^q^2 e^{-2 kappa_s d_s})
struct SlabCoefficients {
  double r = 0.0;
  double t = 1.0;
  double r_sq_minus_t_sq() const { return r * r - t * t; }
  // Always positive for passive slabs.
  double one_plus_r_sq_minus_t_sq() const {
    const double s = 1.0 + r;
    return s * s - t * t;
  }
};
SlabCoefficients slab_coefficients(Polarization q, const Medium& cavity,
                                   const Medium& slab, double d_s, double xi,
                                   double k);

// Mirror reflection coefficients seen from the cavity. Ideal variants
// give +Delta_q (conducting) and -Delta_q (permeable) in every mode.
// Stacks compose interface coefficients recursively from the terminating
// half-space outward:
//   r = (rho + r' e^{-2 kappa' t}) / (1 + rho r' e^{-2 kappa' t}).
double mirror_reflection(const Mirror& mirror, Polarization q,
                         const Medium& cavity, double xi, double k);

// Nonretarded limit: kappa = k in the cavity and in every layer.
double mirror_reflection_nonretarded(const Mirror& mirror, Polarization q,
                                     const Medium& cavity, double xi, double k);

// Static long-wavelength form: kappa_l -> n (xi/c) s_l with
// s_l = sqrt(p^2 - 1 + n_l^2/n^2) at static response values, p >= 1.
// Layer propagation factors tend to 1 in this limit.
double mirror_reflection_static_p(const Mirror& mirror, Polarization q,
                                  const Medium& cavity, double p);

}  // namespace vacforce
