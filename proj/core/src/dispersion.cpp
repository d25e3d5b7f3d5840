#include "vacforce/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace vacforce {

namespace {

void require_nonnegative_frequency(double xi) {
  if (!(xi >= 0.0)) {
    throw std::domain_error("imaginary frequency xi must be >= 0");
  }
}

}  // namespace

ResponseModel ResponseModel::constant(double value) {
  if (!(value >= 1.0)) {
    throw std::invalid_argument("constant response value must be >= 1");
  }
  ResponseModel m;
  m.kind_ = Kind::Constant;
  m.value_ = value;
  return m;
}

ResponseModel ResponseModel::plasma(double omega_p) {
  if (!(omega_p >= 0.0)) {
    throw std::invalid_argument("plasma frequency must be >= 0");
  }
  ResponseModel m;
  m.kind_ = Kind::Plasma;
  m.oscillators_ = {{omega_p * omega_p, 0.0, 0.0}};
  return m;
}

ResponseModel ResponseModel::drude(double omega_p, double gamma) {
  if (!(omega_p >= 0.0) || !(gamma >= 0.0)) {
    throw std::invalid_argument("Drude parameters must be >= 0");
  }
  ResponseModel m;
  m.kind_ = Kind::Drude;
  m.oscillators_ = {{omega_p * omega_p, 0.0, gamma}};
  return m;
}

ResponseModel ResponseModel::drude_lorentz(std::vector<ResponseOscillator> oscillators) {
  for (const auto& o : oscillators) {
    if (!(o.omega_p_sq >= 0.0) || !(o.omega_0 >= 0.0) || !(o.gamma >= 0.0)) {
      throw std::invalid_argument("Drude-Lorentz oscillator parameters must be >= 0");
    }
  }
  ResponseModel m;
  m.kind_ = Kind::DrudeLorentz;
  m.oscillators_ = std::move(oscillators);
  return m;
}

double ResponseModel::eval(double xi) const {
  return 1.0 + eval_minus_one(xi);
}

double ResponseModel::eval_minus_one(double xi) const {
  require_nonnegative_frequency(xi);
  if (kind_ == Kind::Constant) {
    return value_ - 1.0;
  }
  double v = 0.0;
  for (const auto& o : oscillators_) {
    v += o.omega_p_sq / (o.omega_0 * o.omega_0 + xi * xi + o.gamma * xi);
  }
  return v;
}

double ResponseModel::static_value() const {
  if (kind_ == Kind::Constant) {
    return value_;
  }
  double v = 1.0;
  for (const auto& o : oscillators_) {
    if (o.omega_p_sq == 0.0) continue;
    if (o.omega_0 == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    v += o.omega_p_sq / (o.omega_0 * o.omega_0);
  }
  return v;
}

bool ResponseModel::uv_transparent() const {
  return kind_ != Kind::Constant || value_ == 1.0;
}

double ResponseModel::max_frequency() const {
  double f = 0.0;
  for (const auto& o : oscillators_) {
    f = std::max(f, o.omega_0);
    f = std::max(f, std::sqrt(o.omega_p_sq));
  }
  return f;
}

PolarizabilityModel::PolarizabilityModel(std::vector<PolarizabilityOscillator> oscillators)
    : oscillators_(std::move(oscillators)) {
  for (const auto& o : oscillators_) {
    if (!(o.alpha_0 >= 0.0)) {
      throw std::invalid_argument("polarizability weight must be >= 0");
    }
    if (!(o.omega_0 > 0.0)) {
      throw std::invalid_argument("polarizability resonance must be > 0");
    }
  }
}

PolarizabilityModel PolarizabilityModel::single(double alpha_0, double omega_0) {
  return PolarizabilityModel({{alpha_0, omega_0}});
}

double PolarizabilityModel::eval(double xi) const {
  require_nonnegative_frequency(xi);
  double v = 0.0;
  for (const auto& o : oscillators_) {
    const double w2 = o.omega_0 * o.omega_0;
    v += o.alpha_0 * w2 / (w2 + xi * xi);
  }
  return v;
}

double PolarizabilityModel::static_value() const {
  double v = 0.0;
  for (const auto& o : oscillators_) v += o.alpha_0;
  return v;
}

double PolarizabilityModel::max_frequency() const {
  double f = 0.0;
  for (const auto& o : oscillators_) f = std::max(f, o.omega_0);
  return f;
}

double Medium::max_frequency() const {
  return std::max(epsilon.max_frequency(), mu.max_frequency());
}

bool Medium::is_vacuum() const {
  return epsilon.kind() == ResponseModel::Kind::Constant && epsilon.constant_value() == 1.0 &&
         mu.kind() == ResponseModel::Kind::Constant && mu.constant_value() == 1.0;
}

double AtomSpecies::max_frequency() const {
  return std::max(alpha_e.max_frequency(), alpha_m.max_frequency());
}

}  // namespace vacforce
