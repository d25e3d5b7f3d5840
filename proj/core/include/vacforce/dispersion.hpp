#pragma once

#include <vector>

namespace vacforce {

// Natural units throughout the library: hbar = c = 1. Frequencies are
// measured in a caller-chosen reference scale omega_ref, lengths in
// c/omega_ref, polarizabilities in (c/omega_ref)^3. Conversion to SI
// happens only at the output layer.

// One oscillator of a Drude-Lorentz response: strength omega_p^2,
// resonance omega_0, damping gamma. omega_0 = 0 gives a Drude pole,
// gamma = 0 an undamped resonance.
struct ResponseOscillator {
  double omega_p_sq = 0.0;
  double omega_0 = 0.0;
  double gamma = 0.0;
};

// Permittivity or permeability on the imaginary frequency axis, where a
// causal passive response is real, >= 1, and non-increasing in xi.
class ResponseModel {
 public:
  enum class Kind { Constant, Plasma, Drude, DrudeLorentz };

  // Default = vacuum.
  ResponseModel() : kind_(Kind::Constant), value_(1.0) {}

  static ResponseModel constant(double value);
  static ResponseModel plasma(double omega_p);
  static ResponseModel drude(double omega_p, double gamma);
  static ResponseModel drude_lorentz(std::vector<ResponseOscillator> oscillators);

  // Value at frequency i*xi, xi >= 0.
  //   Constant:      value
  //   otherwise:     1 + sum_j omega_pj^2 / (omega_0j^2 + xi^2 + gamma_j xi)
  double eval(double xi) const;

  // The susceptibility eval(xi) - 1, computed without forming the
  // near-unity sum. Differences of responses built from this stay
  // accurate deep in the transparent tail, where eval() itself has
  // rounded the small part away.
  double eval_minus_one(double xi) const;

  // xi -> 0 limit. +infinity for models with a zero-frequency pole
  // (Plasma, Drude, any oscillator with omega_0 = 0).
  double static_value() const;

  // True when eval(xi) -> 1 as xi -> infinity. Constant models with
  // value != 1 are the only violators; operations whose integrals would
  // UV-diverge with such models reject them.
  bool uv_transparent() const;

  // Largest resonance or plasma frequency appearing in the model;
  // 0 for Constant.
  double max_frequency() const;

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  const std::vector<ResponseOscillator>& oscillators() const { return oscillators_; }

 private:
  Kind kind_;
  double value_ = 1.0;                           // Constant only
  std::vector<ResponseOscillator> oscillators_;  // all other kinds
};

// One atomic polarizability oscillator: static weight alpha_0 (volume
// units) at resonance omega_0.
struct PolarizabilityOscillator {
  double alpha_0 = 0.0;
  double omega_0 = 0.0;
};

// alpha(i xi) = sum_j alpha_j omega_j^2 / (omega_j^2 + xi^2).
// The empty model evaluates to zero everywhere.
class PolarizabilityModel {
 public:
  PolarizabilityModel() = default;
  explicit PolarizabilityModel(std::vector<PolarizabilityOscillator> oscillators);
  static PolarizabilityModel single(double alpha_0, double omega_0);

  double eval(double xi) const;
  double static_value() const;  // sum of the weights
  bool empty() const { return oscillators_.empty(); }
  double max_frequency() const;
  const std::vector<PolarizabilityOscillator>& oscillators() const { return oscillators_; }

 private:
  std::vector<PolarizabilityOscillator> oscillators_;
};

struct Medium {
  ResponseModel epsilon;
  ResponseModel mu;

  static Medium vacuum() { return Medium{}; }

  // n^2(i xi) = epsilon(i xi) * mu(i xi) >= 1.
  double index_sq(double xi) const { return epsilon.eval(xi) * mu.eval(xi); }
  double max_frequency() const;
  bool uv_transparent() const { return epsilon.uv_transparent() && mu.uv_transparent(); }
  bool is_vacuum() const;
};

struct AtomSpecies {
  PolarizabilityModel alpha_e;
  PolarizabilityModel alpha_m;

  double max_frequency() const;
};

}  // namespace vacforce
