#include "vacforce/forces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vacforce/errors.hpp"

namespace vacforce {

namespace {

constexpr double kPi = std::numbers::pi;

// Per-xi context shared by every (xi, kappa) integrand. kappa_min is the
// lower limit of the kappa integral, n(i xi) xi.
struct XiContext {
  double xi = 0.0;
  double eps = 1.0;
  double mu = 1.0;
  double n_sq = 1.0;
  double n_sq_minus_one = 0.0;  // chi_e + chi_m + chi_e chi_m, kept exact
  double kappa_min = 0.0;
};

double in_plane_wavenumber(const XiContext& ctx, double kappa) {
  const double k_sq = kappa * kappa - ctx.kappa_min * ctx.kappa_min;
  return k_sq > 0.0 ? std::sqrt(k_sq) : 0.0;
}

// Mirror reflections and round-trip exponentials of the cavity at one
// quadrature point.
struct CavityFields {
  double r1 = 0.0;
  double r2 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;

  double response_numerator() const { return r2 * e2 - r1 * e1; }
  double response_denominator() const { return 1.0 - r1 * r2 * e1 * e2; }
  double response() const { return response_numerator() / response_denominator(); }
};

CavityFields cavity_fields(Polarization q, const CavityConfig& cavity,
                           double xi, double k, double kappa) {
  CavityFields f;
  f.r2 = mirror_reflection(cavity.mirror2, q, cavity.medium, xi, k);
  f.e2 = std::exp(-2.0 * kappa * cavity.d2);
  if (cavity.mirror1) {
    f.r1 = mirror_reflection(*cavity.mirror1, q, cavity.medium, xi, k);
    f.e1 = std::exp(-2.0 * kappa * cavity.d1);
  }
  return f;
}

using ComponentFn = std::function<double(const XiContext&, double kappa)>;

// Nested xi/kappa integration of one force component. The kappa variable
// is the cavity perpendicular wave vector (k dk = kappa dkappa), which
// keeps the integrand smooth in both short- and long-distance regimes.
IntegralResult nested_force_integral(const Medium& medium, const ComponentFn& f,
                                     double xi_hint, double kappa_hint,
                                     const QuadratureSpec& spec) {
  QuadratureSpec outer = spec;
  outer.scale_hint = xi_hint;
  QuadratureSpec inner = spec;
  inner.scale_hint = kappa_hint;
  inner.rel_tol = spec.rel_tol > 0.0 ? 0.1 * spec.rel_tol : 0.0;
  inner.abs_tol = 0.1 * spec.abs_tol;

  long evaluations = 0;
  bool inner_ok = true;
  double inner_peak = 0.0;
  const auto outer_integrand = [&](double xi) {
    XiContext ctx;
    ctx.xi = xi;
    const double chi_e = medium.epsilon.eval_minus_one(xi);
    const double chi_m = medium.mu.eval_minus_one(xi);
    ctx.eps = 1.0 + chi_e;
    ctx.mu = 1.0 + chi_m;
    ctx.n_sq_minus_one = chi_e + chi_m + chi_e * chi_m;
    ctx.n_sq = ctx.eps * ctx.mu;
    ctx.kappa_min = std::sqrt(ctx.n_sq) * xi;
    // Tail nodes whose inner integral is orders of magnitude below the
    // peak get an absolute floor; chasing relative precision there wastes
    // the budget on subnormal-level noise.
    QuadratureSpec tail_inner = inner;
    tail_inner.abs_tol =
        std::max(inner.abs_tol, 0.01 * inner.rel_tol * inner_peak);
    const IntegralResult inner_result = integrate_half_line(
        [&](double kappa) { return f(ctx, kappa); }, ctx.kappa_min, tail_inner);
    inner_peak = std::max(inner_peak, std::abs(inner_result.value));
    evaluations += inner_result.evaluations;
    inner_ok = inner_ok && inner_result.converged;
    return inner_result.value;
  };

  IntegralResult result = integrate_half_line(outer_integrand, 0.0, outer);
  result.evaluations = evaluations;
  result.converged = result.converged && inner_ok;
  return result;
}

void scale_result(IntegralResult& r, double factor) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
}

ForceResult assemble(const IntegralResult& screened_tm,
                     const IntegralResult& screened_te,
                     const IntegralResult& assisted_tm,
                     const IntegralResult& assisted_te) {
  ForceResult out;
  out.screened_parts = {screened_tm.value, screened_te.value};
  out.assisted_parts = {assisted_tm.value, assisted_te.value};
  out.screened = out.screened_parts.sum();
  out.assisted = out.assisted_parts.sum();
  out.total = out.screened + out.assisted;
  out.error_estimate = screened_tm.error_estimate + screened_te.error_estimate +
                       assisted_tm.error_estimate + assisted_te.error_estimate;
  out.evaluations = screened_tm.evaluations + screened_te.evaluations +
                    assisted_tm.evaluations + assisted_te.evaluations;
  out.converged = screened_tm.converged && screened_te.converged &&
                  assisted_tm.converged && assisted_te.converged;
  return out;
}

double effective_gap(const CavityConfig& cavity) {
  return cavity.mirror1 ? std::min(cavity.d1, cavity.d2) : cavity.d2;
}

double cavity_frequency_scale(const CavityConfig& cavity, double model_scale) {
  double f = std::max(model_scale, cavity.medium.max_frequency());
  f = std::max(f, cavity.mirror2.max_frequency());
  if (cavity.mirror1) f = std::max(f, cavity.mirror1->max_frequency());
  return f > 0.0 ? f : 1.0;
}

void require_positive_distances(const CavityConfig& cavity) {
  if (!(cavity.d2 > 0.0) || (cavity.mirror1 && !(cavity.d1 > 0.0))) {
    throw ConfigError("cavity distances must be positive");
  }
}

double require_finite_static(const ResponseModel& model, const char* what) {
  const double v = model.static_value();
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " has a divergent static value";
    throw ConfigError(msg.str());
  }
  return v;
}

}  // namespace

CavityConfig CavityConfig::semi_infinite(Medium medium, Mirror mirror, double z) {
  if (!(z > 0.0)) throw ConfigError("atom-mirror distance must be positive");
  CavityConfig c;
  c.medium = std::move(medium);
  c.mirror2 = std::move(mirror);
  c.d1 = z;  // unused, r1 = 0
  c.d2 = z;
  return c;
}

CavityConfig CavityConfig::two_mirror(Medium medium, Mirror mirror1, double d1,
                                      Mirror mirror2, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw ConfigError("cavity distances must be positive");
  }
  CavityConfig c;
  c.medium = std::move(medium);
  c.mirror1 = std::move(mirror1);
  c.mirror2 = std::move(mirror2);
  c.d1 = d1;
  c.d2 = d2;
  return c;
}

double cavity_response(Polarization q, const CavityConfig& cavity, double xi,
                       double k) {
  const double kappa = perpendicular_wavevector(cavity.medium, xi, k);
  const CavityFields f = cavity_fields(q, cavity, xi, k, kappa);
  if (!cavity.mirror1) return f.r2 * f.e2;
  const double den = f.response_denominator();
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("cavity response denominator vanished");
  }
  return f.response_numerator() / den;
}

ForceResult slab_force(const CavityConfig& cavity, const SlabConfig& slab,
                       const QuadratureSpec& spec) {
  if (!cavity.mirror1) {
    throw ConfigError("slab_force requires both cavity mirrors");
  }
  require_positive_distances(cavity);
  if (!(slab.d_s > 0.0)) throw ConfigError("slab thickness must be positive");

  const double d_eff = effective_gap(cavity);
  const double kappa_hint = 0.5 / d_eff;
  const double freq_scale =
      cavity_frequency_scale(cavity, slab.medium.max_frequency());
  const double xi_hint = std::min(freq_scale, 0.5 / d_eff);

  const auto screened = [&](Polarization q) {
    return nested_force_integral(
        cavity.medium,
        [&, q](const XiContext& ctx, double kappa) {
          const double k = in_plane_wavenumber(ctx, kappa);
          const SlabCoefficients sc = slab_coefficients(
              q, cavity.medium, slab.medium, slab.d_s, ctx.xi, k);
          const CavityFields cf = cavity_fields(q, cavity, ctx.xi, k, kappa);
          const double denom =
              1.0 - sc.r * (cf.r1 * cf.e1 + cf.r2 * cf.e2) +
              sc.r_sq_minus_t_sq() * cf.r1 * cf.r2 * cf.e1 * cf.e2;
          const double screen =
              q == Polarization::TM ? 1.0 / ctx.eps : ctx.mu;
          return kappa * kappa * screen * sc.r * cf.response_numerator() / denom;
        },
        xi_hint, kappa_hint, spec);
  };

  const auto assisted = [&](Polarization q) {
    if (cavity.medium.is_vacuum()) {
      IntegralResult zero;
      zero.converged = true;
      return zero;  // the mu (n^2 - 1) prefactor vanishes identically
    }
    return nested_force_integral(
        cavity.medium,
        [&, q](const XiContext& ctx, double kappa) {
          const double k = in_plane_wavenumber(ctx, kappa);
          const SlabCoefficients sc = slab_coefficients(
              q, cavity.medium, slab.medium, slab.d_s, ctx.xi, k);
          const CavityFields cf = cavity_fields(q, cavity, ctx.xi, k, kappa);
          const double denom =
              1.0 - sc.r * (cf.r1 * cf.e1 + cf.r2 * cf.e2) +
              sc.r_sq_minus_t_sq() * cf.r1 * cf.r2 * cf.e1 * cf.e2;
          const double prefactor = ctx.xi * ctx.xi * ctx.mu * ctx.n_sq_minus_one;
          return prefactor * sc.one_plus_r_sq_minus_t_sq() *
                 polarization_delta(q) * cf.response_numerator() / denom;
        },
        xi_hint, kappa_hint, spec);
  };

  IntegralResult screened_tm = screened(Polarization::TM);
  IntegralResult screened_te = screened(Polarization::TE);
  IntegralResult assisted_tm = assisted(Polarization::TM);
  IntegralResult assisted_te = assisted(Polarization::TE);
  scale_result(screened_tm, 1.0 / (2.0 * kPi * kPi));
  scale_result(screened_te, 1.0 / (2.0 * kPi * kPi));
  scale_result(assisted_tm, 1.0 / (8.0 * kPi * kPi));
  scale_result(assisted_te, 1.0 / (8.0 * kPi * kPi));
  return assemble(screened_tm, screened_te, assisted_tm, assisted_te);
}

ForceResult atom_force(const CavityConfig& cavity, const AtomSpecies& atom,
                       Formulation formulation, const QuadratureSpec& spec) {
  require_positive_distances(cavity);

  const double d_eff = effective_gap(cavity);
  const double kappa_hint = 0.5 / d_eff;
  const double freq_scale = cavity_frequency_scale(cavity, atom.max_frequency());
  const double xi_hint = std::min(freq_scale, 0.5 / d_eff);

  // Screened terms, with the xi^2 prefactor multiplied through the
  // brackets so the integrand stays finite at xi -> 0:
  //   TM: (1/eps) [alpha_e (2 kappa^2/eps - mu xi^2) - alpha_m eps xi^2] R^p
  //   TE:    mu   [alpha_m (2 kappa^2/mu - eps xi^2) - alpha_e mu xi^2] R^s
  // Minkowski drops the outer 1/eps and mu.
  const auto screened = [&](Polarization q) {
    return nested_force_integral(
        cavity.medium,
        [&, q](const XiContext& ctx, double kappa) {
          const double k = in_plane_wavenumber(ctx, kappa);
          const double response =
              cavity_fields(q, cavity, ctx.xi, k, kappa).response();
          const double xi_sq = ctx.xi * ctx.xi;
          const double kappa_sq = kappa * kappa;
          const double ae = atom.alpha_e.eval(ctx.xi);
          const double am = atom.alpha_m.eval(ctx.xi);
          double bracket;
          if (q == Polarization::TM) {
            bracket = ae * (2.0 * kappa_sq / ctx.eps - ctx.mu * xi_sq) -
                      am * ctx.eps * xi_sq;
            if (formulation == Formulation::Lorentz) bracket /= ctx.eps;
          } else {
            bracket = am * (2.0 * kappa_sq / ctx.mu - ctx.eps * xi_sq) -
                      ae * ctx.mu * xi_sq;
            if (formulation == Formulation::Lorentz) bracket *= ctx.mu;
          }
          return kappa * bracket * response;
        },
        xi_hint, kappa_hint, spec);
  };

  // Assisted term xi^2 mu (n^2 - 1) [alpha_e R^p - alpha_m R^s]: absent
  // in the Minkowski formulation and identically zero in vacuum.
  const auto assisted = [&](Polarization q) {
    if (formulation == Formulation::Minkowski || cavity.medium.is_vacuum()) {
      IntegralResult zero;
      zero.converged = true;
      return zero;
    }
    return nested_force_integral(
        cavity.medium,
        [&, q](const XiContext& ctx, double kappa) {
          const double k = in_plane_wavenumber(ctx, kappa);
          const double response =
              cavity_fields(q, cavity, ctx.xi, k, kappa).response();
          const double prefactor =
              ctx.xi * ctx.xi * ctx.mu * ctx.n_sq_minus_one;
          const double alpha = q == Polarization::TM
                                   ? atom.alpha_e.eval(ctx.xi)
                                   : -atom.alpha_m.eval(ctx.xi);
          return kappa * prefactor * alpha * response;
        },
        xi_hint, kappa_hint, spec);
  };

  IntegralResult screened_tm = screened(Polarization::TM);
  IntegralResult screened_te = screened(Polarization::TE);
  IntegralResult assisted_tm = assisted(Polarization::TM);
  IntegralResult assisted_te = assisted(Polarization::TE);
  const double prefactor = 1.0 / kPi;
  scale_result(screened_tm, prefactor);
  scale_result(screened_te, prefactor);
  scale_result(assisted_tm, prefactor);
  scale_result(assisted_te, prefactor);
  return assemble(screened_tm, screened_te, assisted_tm, assisted_te);
}

namespace {

void require_dilute_consistency(const Medium& medium, const MediumAtom& atom) {
  constexpr double kTolerance = 1e-6;
  const double n = atom.number_density;
  if (!(n > 0.0)) {
    throw ConfigError("medium atom number density must be positive");
  }
  double scale = std::max(medium.max_frequency(), atom.species.max_frequency());
  if (scale <= 0.0) scale = 1.0;

  const auto check = [&](double xi) {
    const double alpha_sum =
        atom.species.alpha_e.eval(xi) + atom.species.alpha_m.eval(xi);
    const double chi_e = medium.epsilon.eval_minus_one(xi);
    const double chi_m = medium.mu.eval_minus_one(xi);
    const double n_sq_minus_one = chi_e + chi_m + chi_e * chi_m;
    const double deviation =
        std::abs(n_sq_minus_one - 4.0 * kPi * n * alpha_sum);
    if (!(deviation < kTolerance)) {
      std::ostringstream msg;
      msg << "cavity medium is not dilute-consistent with the medium atom: "
          << "|n^2 - 1 - 4 pi N alpha| = " << deviation << " at xi = " << xi;
      throw ConfigError(msg.str());
    }
  };

  check(0.0);
  constexpr int kSamples = 33;
  for (int i = 0; i < kSamples; ++i) {
    const double t = static_cast<double>(i) / (kSamples - 1);
    check(scale * std::pow(10.0, -4.0 + 8.0 * t));
  }
}

}  // namespace

ForceResult medium_atom_force(const CavityConfig& cavity,
                              const MediumAtom& medium_atom,
                              const QuadratureSpec& spec) {
  require_positive_distances(cavity);
  require_dilute_consistency(cavity.medium, medium_atom);

  const double d_eff = effective_gap(cavity);
  const double kappa_hint = 0.5 / d_eff;
  const double freq_scale =
      cavity_frequency_scale(cavity, medium_atom.species.max_frequency());
  const double xi_hint = std::min(freq_scale, 0.5 / d_eff);

  // f_M / (N d_s): xi^2 mu (n^2 - 1) [R^p - R^s] integrated over the
  // cavity, divided by 4 pi^2 N.
  const auto component = [&](Polarization q) {
    return nested_force_integral(
        cavity.medium,
        [&, q](const XiContext& ctx, double kappa) {
          const double k = in_plane_wavenumber(ctx, kappa);
          const double response =
              cavity_fields(q, cavity, ctx.xi, k, kappa).response();
          const double prefactor =
              ctx.xi * ctx.xi * ctx.mu * ctx.n_sq_minus_one;
          return kappa * prefactor * polarization_delta(q) * response;
        },
        xi_hint, kappa_hint, spec);
  };

  IntegralResult tm = component(Polarization::TM);
  IntegralResult te = component(Polarization::TE);
  const double prefactor =
      1.0 / (4.0 * kPi * kPi * medium_atom.number_density);
  scale_result(tm, prefactor);
  scale_result(te, prefactor);
  IntegralResult zero;
  zero.converged = true;
  // The whole medium-atom force is of the assisted type.
  return assemble(zero, zero, tm, te);
}

double atom_force_short(const Mirror& mirror, const Medium& cavity_medium,
                        const AtomSpecies& atom, double z,
                        const QuadratureSpec& spec) {
  if (!(z > 0.0)) throw ConfigError("atom-mirror distance must be positive");

  double xi_hint = std::max(atom.max_frequency(), cavity_medium.max_frequency());
  if (mirror.kind() == Mirror::Kind::Stack) {
    xi_hint = std::max(xi_hint, mirror.max_frequency());
  }
  if (xi_hint <= 0.0) xi_hint = 1.0;
  QuadratureSpec xi_spec = spec;
  xi_spec.scale_hint = xi_hint;

  // Single-medium mirrors: the nonretarded reflections are k-independent
  // and the u-integral reduces to int u^3 e^{-u} du = 6.
  const auto elementary = [&](const std::function<double(double)>& bracket_e,
                              const std::function<double(double)>& bracket_m) {
    const IntegralResult integral = integrate_half_line(
        [&](double xi) {
          const double eps = cavity_medium.epsilon.eval(xi);
          const double ae = atom.alpha_e.eval(xi);
          const double am = atom.alpha_m.eval(xi);
          return ae / (eps * eps) * bracket_e(xi) + am * bracket_m(xi);
        },
        0.0, xi_spec);
    if (!integral.converged) {
      throw NonConvergedError("short-distance xi integral did not converge");
    }
    return 3.0 / (4.0 * kPi * z * z * z * z) * integral.value;
  };

  switch (mirror.kind()) {
    case Mirror::Kind::IdealConducting:
      // eps_m -> infinity limit of the single-medium form.
      return elementary(
          [](double) { return 1.0; },
          [&](double xi) {
            const double chi = cavity_medium.mu.eval_minus_one(xi);
            return -chi / (2.0 + chi);
          });
    case Mirror::Kind::IdealPermeable:
      return elementary(
          [&](double xi) {
            const double chi = cavity_medium.epsilon.eval_minus_one(xi);
            return -chi / (2.0 + chi);
          },
          [](double) { return 1.0; });
    case Mirror::Kind::Stack:
      break;
  }

  if (mirror.layers().empty()) {
    const Medium& m = mirror.terminating_medium();
    return elementary(
        [&](double xi) {
          const double chi = cavity_medium.epsilon.eval_minus_one(xi);
          const double chi_m = m.epsilon.eval_minus_one(xi);
          return (chi_m - chi) / (2.0 + chi_m + chi);
        },
        [&](double xi) {
          const double chi = cavity_medium.mu.eval_minus_one(xi);
          const double chi_m = m.mu.eval_minus_one(xi);
          return (chi_m - chi) / (2.0 + chi_m + chi);
        });
  }

  // Layered mirror: u-integral of the nonretarded reflections at
  // k = u / (2 z).
  QuadratureSpec u_spec = spec;
  u_spec.rel_tol = spec.rel_tol > 0.0 ? 0.1 * spec.rel_tol : 0.0;
  u_spec.abs_tol = 0.1 * spec.abs_tol;
  u_spec.scale_hint = 4.0;  // peak of u^3 e^{-u}
  long evaluations = 0;
  bool inner_ok = true;
  double inner_peak = 0.0;
  const IntegralResult integral = integrate_half_line(
      [&](double xi) {
        const double eps = cavity_medium.epsilon.eval(xi);
        const double ae = atom.alpha_e.eval(xi);
        const double am = atom.alpha_m.eval(xi);
        QuadratureSpec tail_spec = u_spec;
        tail_spec.abs_tol =
            std::max(u_spec.abs_tol, 0.01 * u_spec.rel_tol * inner_peak);
        const IntegralResult inner = integrate_half_line(
            [&](double u) {
              const double k = u / (2.0 * z);
              const double rp = mirror_reflection_nonretarded(
                  mirror, Polarization::TM, cavity_medium, xi, k);
              const double rs = mirror_reflection_nonretarded(
                  mirror, Polarization::TE, cavity_medium, xi, k);
              return u * u * u * std::exp(-u) * (ae / (eps * eps) * rp + am * rs);
            },
            0.0, tail_spec);
        inner_peak = std::max(inner_peak, std::abs(inner.value));
        evaluations += inner.evaluations;
        inner_ok = inner_ok && inner.converged;
        return inner.value;
      },
      0.0, xi_spec);
  if (!integral.converged || !inner_ok) {
    throw NonConvergedError("short-distance (xi, u) integral did not converge");
  }
  return integral.value / (8.0 * kPi * z * z * z * z);
}

double atom_force_large(const Mirror& mirror, const Medium& cavity_medium,
                        const AtomSpecies& atom, double z,
                        Formulation formulation, const QuadratureSpec& spec) {
  if (!(z > 0.0)) throw ConfigError("atom-mirror distance must be positive");
  const double eps0 = require_finite_static(cavity_medium.epsilon,
                                            "cavity permittivity");
  const double mu0 = require_finite_static(cavity_medium.mu,
                                           "cavity permeability");
  const double n0_sq = eps0 * mu0;
  const double n0 = std::sqrt(n0_sq);
  const double ae0 = atom.alpha_e.static_value();
  const double am0 = atom.alpha_m.static_value();

  QuadratureSpec p_spec = spec;
  p_spec.scale_hint = 2.0;
  const IntegralResult integral = integrate_half_line(
      [&](double p) {
        const double rp = mirror_reflection_static_p(mirror, Polarization::TM,
                                                     cavity_medium, p);
        const double rs = mirror_reflection_static_p(mirror, Polarization::TE,
                                                     cavity_medium, p);
        const double two_p_sq = 2.0 * p * p - 1.0;
        double bracket;
        if (formulation == Formulation::Lorentz) {
          bracket = (ae0 * mu0 * two_p_sq - am0 * eps0) / eps0 * rp +
                    mu0 * (am0 * eps0 * two_p_sq - ae0 * mu0) * rs +
                    mu0 * (n0_sq - 1.0) * (ae0 * rp - am0 * rs);
        } else {
          bracket = (ae0 * mu0 * two_p_sq - am0 * eps0) * rp +
                    (am0 * eps0 * two_p_sq - ae0 * mu0) * rs;
        }
        const double p4 = p * p * p * p;
        return bracket / p4;
      },
      1.0, p_spec);
  if (!integral.converged) {
    throw NonConvergedError("large-distance p integral did not converge");
  }
  const double z5 = z * z * z * z * z;
  return 3.0 / (4.0 * kPi * n0 * n0_sq * z5) * integral.value;
}

double ideal_mirror_closed_form(const AtomSpecies& atom,
                                const Medium& cavity_medium, double z,
                                Formulation formulation, IdealMirrorKind kind) {
  if (!(z > 0.0)) throw ConfigError("atom-mirror distance must be positive");
  const double eps0 = require_finite_static(cavity_medium.epsilon,
                                            "cavity permittivity");
  const double mu0 = require_finite_static(cavity_medium.mu,
                                           "cavity permeability");
  const double n0_sq = eps0 * mu0;
  const double n0 = std::sqrt(n0_sq);
  const double ae0 = atom.alpha_e.static_value();
  const double am0 = atom.alpha_m.static_value();
  const double sign = kind == IdealMirrorKind::Conducting ? 1.0 : -1.0;
  const double z5 = z * z * z * z * z;

  if (formulation == Formulation::Minkowski) {
    return sign * 3.0 / (2.0 * kPi * z5 * n0 * n0_sq) * (ae0 * mu0 - am0 * eps0);
  }
  const double electric = ae0 * (5.0 / eps0 + mu0 + n0_sq - 1.0);
  const double magnetic = am0 * (1.0 / mu0 + 5.0 * eps0 - n0_sq + 1.0);
  return sign / (4.0 * kPi * z5 * n0 * eps0) * (electric - magnetic);
}

double medium_atom_asymptotics(const Mirror& mirror,
                               const MediumAtom& medium_atom, double z,
                               AsymptoticRegime regime,
                               const QuadratureSpec& spec) {
  if (!(z > 0.0)) throw ConfigError("atom-mirror distance must be positive");
  const AtomSpecies& species = medium_atom.species;

  if (regime == AsymptoticRegime::Short) {
    if (mirror.ideal() || !mirror.uv_transparent()) {
      throw ConfigError(
          "short-distance medium-atom force needs a dispersive mirror: the "
          "xi^2-weighted integral is UV-divergent for ideal or constant "
          "(non-unit) mirror responses");
    }
    // Leading z -> 0 contribution probes k ~ 1/z, so only the outermost
    // mirror medium enters.
    const Medium& top = mirror.outermost_medium();
    QuadratureSpec xi_spec = spec;
    xi_spec.scale_hint =
        std::max({species.max_frequency(), top.max_frequency(), 1.0});
    const IntegralResult integral = integrate_half_line(
        [&](double xi) {
          const double alpha_sum =
              species.alpha_e.eval(xi) + species.alpha_m.eval(xi);
          const double chi_e = top.epsilon.eval_minus_one(xi);
          const double chi_m = top.mu.eval_minus_one(xi);
          const double bracket =
              2.0 * (chi_e - chi_m) / ((2.0 + chi_e) * (2.0 + chi_m));
          return xi * xi * alpha_sum * bracket;
        },
        0.0, xi_spec);
    if (!integral.converged) {
      throw NonConvergedError("medium-atom short-distance integral did not converge");
    }
    return integral.value / (4.0 * kPi * z * z);
  }

  const double alpha_sum0 =
      species.alpha_e.static_value() + species.alpha_m.static_value();
  const Medium vacuum = Medium::vacuum();
  QuadratureSpec p_spec = spec;
  p_spec.scale_hint = 2.0;
  const IntegralResult integral = integrate_half_line(
      [&](double p) {
        const double rp =
            mirror_reflection_static_p(mirror, Polarization::TM, vacuum, p);
        const double rs =
            mirror_reflection_static_p(mirror, Polarization::TE, vacuum, p);
        return (rp - rs) / (p * p * p * p);
      },
      1.0, p_spec);
  if (!integral.converged) {
    throw NonConvergedError("medium-atom large-distance integral did not converge");
  }
  const double z5 = z * z * z * z * z;
  return 3.0 / (4.0 * kPi * z5) * alpha_sum0 * integral.value;
}

double atom_atom_embedded(const AtomSpecies& a, const AtomSpecies& b,
                          const Medium& host, double r,
                          const QuadratureSpec& spec) {
  if (!(r > 0.0)) throw ConfigError("atom separation must be positive");
  QuadratureSpec xi_spec = spec;
  xi_spec.scale_hint = std::max(
      {a.max_frequency(), b.max_frequency(), host.max_frequency(), 1.0});
  const IntegralResult integral = integrate_half_line(
      [&](double xi) {
        const double eps = host.epsilon.eval(xi);
        const double mu = host.mu.eval(xi);
        return a.alpha_e.eval(xi) * b.alpha_e.eval(xi) / (eps * eps * eps) +
               a.alpha_m.eval(xi) * b.alpha_m.eval(xi) / mu;
      },
      0.0, xi_spec);
  if (!integral.converged) {
    throw NonConvergedError("atom-atom xi integral did not converge");
  }
  const double r7 = r * r * r * r * r * r * r;
  return 18.0 / (kPi * r7) * integral.value;
}

double atom_atom_medium_embedded(const AtomSpecies& medium_atom,
                                 const AtomSpecies& embedded, double r,
                                 const QuadratureSpec& spec) {
  if (!(r > 0.0)) throw ConfigError("atom separation must be positive");
  QuadratureSpec xi_spec = spec;
  xi_spec.scale_hint =
      std::max({medium_atom.max_frequency(), embedded.max_frequency(), 1.0});
  const IntegralResult integral = integrate_half_line(
      [&](double xi) {
        const double alpha_sum =
            medium_atom.alpha_e.eval(xi) + medium_atom.alpha_m.eval(xi);
        const double alpha_diff =
            embedded.alpha_e.eval(xi) - embedded.alpha_m.eval(xi);
        return xi * xi * alpha_sum * alpha_diff;
      },
      0.0, xi_spec);
  if (!integral.converged) {
    throw NonConvergedError("medium-embedded xi integral did not converge");
  }
  const double r5 = r * r * r * r * r;
  return 2.0 / (kPi * r5) * integral.value;
}

namespace {

std::vector<ResponseOscillator> oscillators_of(const ResponseModel& model,
                                               const char* what) {
  if (model.kind() == ResponseModel::Kind::Constant) {
    if (model.constant_value() != 1.0) {
      std::ostringstream msg;
      msg << "cannot dope a non-dispersive " << what
          << " (constant value != 1)";
      throw ConfigError(msg.str());
    }
    return {};
  }
  return model.oscillators();
}

ResponseModel doped_response(const ResponseModel& host,
                             const PolarizabilityModel& alpha,
                             double number_density, const char* what) {
  std::vector<ResponseOscillator> oscillators = oscillators_of(host, what);
  for (const auto& o : alpha.oscillators()) {
    oscillators.push_back(
        {4.0 * kPi * number_density * o.alpha_0 * o.omega_0 * o.omega_0,
         o.omega_0, 0.0});
  }
  if (oscillators.empty()) return ResponseModel();
  return ResponseModel::drude_lorentz(std::move(oscillators));
}

}  // namespace

Medium doped_medium(const Medium& host, const AtomSpecies& dopant,
                    double number_density) {
  if (!(number_density >= 0.0)) {
    throw ConfigError("dopant number density must be >= 0");
  }
  Medium m;
  m.epsilon =
      doped_response(host.epsilon, dopant.alpha_e, number_density, "permittivity");
  m.mu = doped_response(host.mu, dopant.alpha_m, number_density, "permeability");
  return m;
}

namespace {

// The slab medium must be the cavity medium plus the declared dopant; the
// decomposition f = f_M + N d_s f_a is meaningless otherwise.
void require_slab_consistency(const CavityConfig& cavity, const SlabConfig& slab) {
  const AtomSpecies empty_species;
  const AtomSpecies& species =
      slab.dopant ? slab.dopant->species : empty_species;
  const double n = slab.dopant ? slab.dopant->number_density : 0.0;

  double scale = std::max({cavity.medium.max_frequency(),
                           slab.medium.max_frequency(), species.max_frequency()});
  if (scale <= 0.0) scale = 1.0;

  constexpr double kTolerance = 1e-8;
  for (int i = 0; i <= 16; ++i) {
    const double xi = scale * std::pow(10.0, -4.0 + 0.5 * i);
    const double de = std::abs(slab.medium.epsilon.eval(xi) -
                               cavity.medium.epsilon.eval(xi) -
                               4.0 * kPi * n * species.alpha_e.eval(xi));
    const double dm = std::abs(slab.medium.mu.eval(xi) -
                               cavity.medium.mu.eval(xi) -
                               4.0 * kPi * n * species.alpha_m.eval(xi));
    if (!(de < kTolerance) || !(dm < kTolerance)) {
      throw ConfigError(
          "slab medium does not equal the cavity medium plus the declared "
          "dopant; build it with doped_medium()");
    }
  }
}

}  // namespace

ThinSlabReport thin_slab_decomposition_check(const CavityConfig& cavity,
                                             const SlabConfig& slab,
                                             const QuadratureSpec& spec) {
  if (!cavity.mirror1) {
    throw ConfigError("the thin-slab check requires both cavity mirrors");
  }
  require_positive_distances(cavity);
  if (!(slab.d_s > 0.0)) throw ConfigError("slab thickness must be positive");
  require_slab_consistency(cavity, slab);

  const double n = slab.dopant ? slab.dopant->number_density : 0.0;
  if (slab.dopant) {
    const double alpha0 = slab.dopant->species.alpha_e.static_value() +
                          slab.dopant->species.alpha_m.static_value();
    if (!(4.0 * kPi * n * alpha0 < 0.1)) {
      throw ConfigError("dopant is not dilute: 4 pi N alpha_0 must be << 1");
    }
  }
  const double omega_cutoff =
      std::max(cavity_frequency_scale(cavity, slab.medium.max_frequency()),
               slab.dopant ? slab.dopant->species.max_frequency() : 0.0);
  if (!(slab.d_s * omega_cutoff < 0.5)) {
    throw ConfigError("slab is not thin: d_s Omega / c must be << 1");
  }

  ThinSlabReport report;

  // Medium-layer force per unit thickness, f_M / d_s.
  if (cavity.medium.is_vacuum()) {
    report.medium_layer_slope = 0.0;
  } else {
    const double d_eff = effective_gap(cavity);
    const double xi_hint =
        std::min(cavity_frequency_scale(cavity, 0.0), 0.5 / d_eff);
    const auto layer_term = [&](Polarization q) {
      return nested_force_integral(
          cavity.medium,
          [&, q](const XiContext& ctx, double kappa) {
            const double k = in_plane_wavenumber(ctx, kappa);
            const double response =
                cavity_fields(q, cavity, ctx.xi, k, kappa).response();
            return kappa * ctx.xi * ctx.xi * ctx.mu * ctx.n_sq_minus_one *
                   polarization_delta(q) * response;
          },
          xi_hint, 0.5 / d_eff, spec);
    };
    const IntegralResult tm = layer_term(Polarization::TM);
    const IntegralResult te = layer_term(Polarization::TE);
    report.medium_layer_slope =
        (tm.value + te.value) / (4.0 * kPi * kPi);
    report.converged = report.converged && tm.converged && te.converged;
  }

  double atom_reference = 0.0;
  if (n > 0.0) {
    const ForceResult fa =
        atom_force(cavity, slab.dopant->species, Formulation::Lorentz, spec);
    atom_reference = fa.total;
    report.converged = report.converged && fa.converged;
  }

  std::vector<double> per_step;
  for (int j = 0; j < 3; ++j) {
    SlabConfig thinner = slab;
    thinner.d_s = slab.d_s / static_cast<double>(1 << j);
    const ForceResult f = slab_force(cavity, thinner, spec);
    report.converged = report.converged && f.converged;

    ThinSlabPoint point;
    point.d_s = thinner.d_s;
    point.slab_force_total = f.total;
    point.predicted_total = report.medium_layer_slope * thinner.d_s +
                            n * thinner.d_s * atom_reference;
    const double removed = f.total - report.medium_layer_slope * thinner.d_s;
    point.per_atom_estimate = n > 0.0 ? removed / (n * thinner.d_s) : 0.0;
    per_step.push_back(n > 0.0 ? point.per_atom_estimate
                               : f.total / thinner.d_s);
    report.points.push_back(point);
  }

  // First-order Richardson step on the two finest ladder points.
  report.extrapolated = 2.0 * per_step[2] - per_step[1];
  report.reference = n > 0.0 ? atom_reference : report.medium_layer_slope;

  const double step0 = std::abs(per_step[1] - per_step[0]);
  const double step1 = std::abs(per_step[2] - per_step[1]);
  report.monotone = step1 <= 1.25 * step0 + 1e-30;
  if (!report.monotone) {
    report.diagnostic =
        "per-atom estimates do not converge monotonically in d_s; the "
        "first-order decomposition is unreliable here";
  }

  const double ref_mag = std::abs(report.reference);
  report.discrepancy =
      ref_mag > 0.0 ? std::abs(report.extrapolated - report.reference) / ref_mag
                    : std::abs(report.extrapolated);
  return report;
}

}  // namespace vacforce
