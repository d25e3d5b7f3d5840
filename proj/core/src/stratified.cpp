#include "vacforce/stratified.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace vacforce {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ReflectionMode { Retarded, Nonretarded, StaticP };

// (a - b)/(a + b) with the conducting/permeable limits taken exactly when
// one side diverges (plasma-like static values).
double balanced_ratio(double a, double b) {
  if (std::isinf(b)) return std::isinf(a) ? 0.0 : -1.0;
  if (std::isinf(a)) return 1.0;
  return (a - b) / (a + b);
}

struct ModeContext {
  ReflectionMode mode;
  double xi = 0.0;
  double k = 0.0;
  double p = 1.0;
  double cavity_index_sq = 1.0;  // static n^2, StaticP only
};

double response_at(const ResponseModel& model, const ModeContext& ctx) {
  return ctx.mode == ReflectionMode::StaticP ? model.static_value()
                                             : model.eval(ctx.xi);
}

// Perpendicular wave vector of `m` in the given mode. In StaticP mode the
// common factor n xi / c is dropped; ratios and the unit propagation
// factors are unaffected.
double mode_kappa(const Medium& m, const ModeContext& ctx) {
  switch (ctx.mode) {
    case ReflectionMode::Retarded:
      return perpendicular_wavevector(m, ctx.xi, ctx.k);
    case ReflectionMode::Nonretarded:
      return ctx.k;
    case ReflectionMode::StaticP: {
      const double eps0 = m.epsilon.static_value();
      const double mu0 = m.mu.static_value();
      if (std::isinf(eps0) || std::isinf(mu0)) return kInf;
      return std::sqrt(ctx.p * ctx.p - 1.0 + eps0 * mu0 / ctx.cavity_index_sq);
    }
  }
  return 0.0;
}

// (kappa_a - gamma kappa_b)/(kappa_a + gamma kappa_b) evaluated as
// (kappa_a^2 - gamma^2 kappa_b^2)/(kappa_a + gamma kappa_b)^2, with the
// numerator expanded in susceptibility differences. The direct form loses
// all significant digits for nearly index-matched interfaces (dilute
// contrast, transparent high-frequency tail); this one stays smooth
// there, which the adaptive quadrature depends on.
double stable_interface(Polarization q, double chi_ea, double chi_ma,
                        double chi_eb, double chi_mb, double xi_sq,
                        double k_sq) {
  const double eps_a = 1.0 + chi_ea;
  const double mu_a = 1.0 + chi_ma;
  const double eps_b = 1.0 + chi_eb;
  const double mu_b = 1.0 + chi_mb;
  const double kappa_a = std::sqrt(eps_a * mu_a * xi_sq + k_sq);
  const double kappa_b = std::sqrt(eps_b * mu_b * xi_sq + k_sq);
  // mu_a eps_b - eps_a mu_b without forming the near-unity products
  const double cross = (chi_eb - chi_ea) + (chi_ma - chi_mb) +
                       (chi_ma * chi_eb - chi_ea * chi_mb);
  double gamma;
  double num;
  if (q == Polarization::TM) {
    gamma = eps_a / eps_b;
    num = gamma * cross * xi_sq +
          (eps_b + eps_a) / (eps_b * eps_b) * (chi_eb - chi_ea) * k_sq;
  } else {
    gamma = mu_a / mu_b;
    num = -gamma * cross * xi_sq +
          (mu_b + mu_a) / (mu_b * mu_b) * (chi_mb - chi_ma) * k_sq;
  }
  const double den = kappa_a + gamma * kappa_b;
  return num / (den * den);
}

// Fresnel coefficient at the interface from medium a into medium b.
double mode_interface(Polarization q, const Medium& a, const Medium& b,
                      const ModeContext& ctx) {
  if (ctx.mode != ReflectionMode::StaticP) {
    const double chi_ea = a.epsilon.eval_minus_one(ctx.xi);
    const double chi_ma = a.mu.eval_minus_one(ctx.xi);
    const double chi_eb = b.epsilon.eval_minus_one(ctx.xi);
    const double chi_mb = b.mu.eval_minus_one(ctx.xi);
    if (std::isfinite(chi_ea) && std::isfinite(chi_ma) &&
        std::isfinite(chi_eb) && std::isfinite(chi_mb)) {
      // Nonretarded: kappa_l = k everywhere, so k^2 cancels from the
      // ratio; any positive stand-in works.
      const double xi_sq =
          ctx.mode == ReflectionMode::Retarded ? ctx.xi * ctx.xi : 0.0;
      const double k_sq =
          ctx.mode == ReflectionMode::Retarded ? ctx.k * ctx.k : 1.0;
      return stable_interface(q, chi_ea, chi_ma, chi_eb, chi_mb, xi_sq, k_sq);
    }
  }
  const double ra = q == Polarization::TM ? response_at(a.epsilon, ctx)
                                          : response_at(a.mu, ctx);
  const double rb = q == Polarization::TM ? response_at(b.epsilon, ctx)
                                          : response_at(b.mu, ctx);
  const double kappa_a = mode_kappa(a, ctx);
  const double kappa_b = mode_kappa(b, ctx);
  const double gamma = std::isinf(rb) ? 0.0 : ra / rb;
  const double scaled_b = gamma == 0.0 ? 0.0 : gamma * kappa_b;
  return balanced_ratio(kappa_a, scaled_b);
}

double layer_propagation(const Layer& layer, const ModeContext& ctx) {
  if (ctx.mode == ReflectionMode::StaticP) return 1.0;
  const double kappa = mode_kappa(layer.medium, ctx);
  return std::exp(-2.0 * kappa * layer.thickness);
}

double stack_reflection(const Mirror& mirror, Polarization q,
                        const Medium& cavity, const ModeContext& ctx) {
  const auto& layers = mirror.layers();
  const Medium* above = layers.empty() ? &cavity : &layers.back().medium;
  double r = mode_interface(q, *above, mirror.terminating_medium(), ctx);
  for (std::size_t i = layers.size(); i-- > 0;) {
    const Medium& upper = i == 0 ? cavity : layers[i - 1].medium;
    const double rho = mode_interface(q, upper, layers[i].medium, ctx);
    const double e = layer_propagation(layers[i], ctx);
    r = (rho + r * e) / (1.0 + rho * r * e);
  }
  return r;
}

double reflect(const Mirror& mirror, Polarization q, const Medium& cavity,
               const ModeContext& ctx) {
  switch (mirror.kind()) {
    case Mirror::Kind::IdealConducting:
      return polarization_delta(q);
    case Mirror::Kind::IdealPermeable:
      return -polarization_delta(q);
    case Mirror::Kind::Stack:
      return stack_reflection(mirror, q, cavity, ctx);
  }
  return 0.0;
}

}  // namespace

Mirror Mirror::ideal_conducting() { return Mirror(Kind::IdealConducting); }

Mirror Mirror::ideal_permeable() { return Mirror(Kind::IdealPermeable); }

Mirror Mirror::half_space(Medium medium) {
  return stack({}, std::move(medium));
}

Mirror Mirror::stack(std::vector<Layer> layers, Medium half_space) {
  for (const auto& layer : layers) {
    if (!(layer.thickness > 0.0) || !std::isfinite(layer.thickness)) {
      throw std::invalid_argument("layer thickness must be positive and finite");
    }
  }
  Mirror m(Kind::Stack);
  m.layers_ = std::move(layers);
  m.half_space_ = std::move(half_space);
  return m;
}

const Medium& Mirror::outermost_medium() const {
  if (kind_ != Kind::Stack) {
    throw std::logic_error("ideal mirrors have no constituent medium");
  }
  return layers_.empty() ? half_space_ : layers_.front().medium;
}

double Mirror::max_frequency() const {
  if (kind_ != Kind::Stack) return 0.0;
  double f = half_space_.max_frequency();
  for (const auto& layer : layers_) {
    f = std::max(f, layer.medium.max_frequency());
  }
  return f;
}

bool Mirror::uv_transparent() const {
  if (kind_ != Kind::Stack) return true;
  bool ok = half_space_.uv_transparent();
  for (const auto& layer : layers_) {
    ok = ok && layer.medium.uv_transparent();
  }
  return ok;
}

double perpendicular_wavevector(const Medium& medium, double xi, double k) {
  if (!(xi >= 0.0) || !(k >= 0.0)) {
    throw std::domain_error("xi and k must be >= 0");
  }
  if (xi == 0.0 && k == 0.0) {
    throw std::domain_error("(xi, k) = (0, 0) is degenerate");
  }
  if (xi == 0.0) {
    // n^2 xi^2 -> 0 for media with finite static response.
    if (!std::isfinite(medium.index_sq(0.0))) {
      throw std::domain_error(
          "static response diverges; evaluate at xi > 0 instead");
    }
    return k;
  }
  return std::sqrt(medium.index_sq(xi) * xi * xi + k * k);
}

double interface_reflection(Polarization q, const Medium& cavity,
                            const Medium& other, double xi, double k) {
  ModeContext ctx{ReflectionMode::Retarded, xi, k, 1.0, 1.0};
  // Trigger the shared (xi, k) domain checks.
  perpendicular_wavevector(cavity, xi, k);
  return mode_interface(q, cavity, other, ctx);
}

SlabCoefficients slab_coefficients(Polarization q, const Medium& cavity,
                                   const Medium& slab, double d_s, double xi,
                                   double k) {
  if (!(d_s >= 0.0)) {
    throw std::invalid_argument("slab thickness must be >= 0");
  }
  if (d_s == 0.0) return SlabCoefficients{0.0, 1.0};

  const double rho = interface_reflection(q, cavity, slab, xi, k);
  const double kappa_s = perpendicular_wavevector(slab, xi, k);
  const double e1 = std::exp(-kappa_s * d_s);
  const double e2 = e1 * e1;
  const double den = 1.0 - rho * rho * e2;
  SlabCoefficients c;
  c.r = rho * (1.0 - e2) / den;
  c.t = (1.0 - rho * rho) * e1 / den;
  return c;
}

double mirror_reflection(const Mirror& mirror, Polarization q,
                         const Medium& cavity, double xi, double k) {
  perpendicular_wavevector(cavity, xi, k);
  ModeContext ctx{ReflectionMode::Retarded, xi, k, 1.0, 1.0};
  return reflect(mirror, q, cavity, ctx);
}

double mirror_reflection_nonretarded(const Mirror& mirror, Polarization q,
                                     const Medium& cavity, double xi, double k) {
  if (!(xi >= 0.0) || !(k > 0.0)) {
    throw std::domain_error("nonretarded reflection needs xi >= 0 and k > 0");
  }
  ModeContext ctx{ReflectionMode::Nonretarded, xi, k, 1.0, 1.0};
  return reflect(mirror, q, cavity, ctx);
}

double mirror_reflection_static_p(const Mirror& mirror, Polarization q,
                                  const Medium& cavity, double p) {
  if (!(p >= 1.0)) {
    throw std::domain_error("static-p reflection needs p >= 1");
  }
  ModeContext ctx{ReflectionMode::StaticP, 0.0, 0.0, p, 1.0};
  ctx.cavity_index_sq = cavity.epsilon.static_value() * cavity.mu.static_value();
  if (!std::isfinite(ctx.cavity_index_sq)) {
    throw std::domain_error("cavity medium must have finite static response");
  }
  return reflect(mirror, q, cavity, ctx);
}

}  // namespace vacforce
