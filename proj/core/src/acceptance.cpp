#include "vacforce/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "vacforce/errors.hpp"
#include "vacforce/forces.hpp"
#include "vacforce/quadrature.hpp"
#include "vacforce/scenario.hpp"
#include "vacforce/stratified.hpp"
#include "vacforce/table.hpp"

namespace vacforce {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel_err(double computed, double target) {
  const double scale = std::max(std::abs(target), 1e-300);
  return std::abs(computed - target) / scale;
}

void expect_close(AcceptanceOutcome& out, const std::string& what,
                  double computed, double target, double tol) {
  const double err = rel_err(computed, target);
  out.expect(err <= tol, what + ": computed=" + num(computed) +
                             " target=" + num(target) +
                             " rel_err=" + num(err) + " (tol " + num(tol) + ")");
}

Medium constant_medium(double eps, double mu) {
  Medium m;
  m.epsilon = ResponseModel::constant(eps);
  m.mu = ResponseModel::constant(mu);
  return m;
}

AtomSpecies electric_atom(double alpha_0, double omega_0) {
  AtomSpecies a;
  a.alpha_e = PolarizabilityModel::single(alpha_0, omega_0);
  return a;
}

AtomSpecies magnetic_atom(double alpha_0, double omega_0) {
  AtomSpecies a;
  a.alpha_m = PolarizabilityModel::single(alpha_0, omega_0);
  return a;
}

// --- 1. static-p quadrature vs the ideal-mirror closed forms ------------

AcceptanceOutcome check_ideal_mirror_closed_form() {
  AcceptanceOutcome out;
  std::mt19937_64 rng(0x5eedf0acceULL);
  std::uniform_real_distribution<double> response_dist(1.0, 3.0);
  std::uniform_real_distribution<double> alpha_dist(0.05, 2.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;

  double worst = 0.0;
  double smallest_target = 1e300;
  for (int i = 0; i < 20; ++i) {
    const Medium cavity = constant_medium(response_dist(rng), response_dist(rng));
    AtomSpecies atom;
    atom.alpha_e = PolarizabilityModel::single(alpha_dist(rng), 1.0);
    atom.alpha_m = PolarizabilityModel::single(alpha_dist(rng), 1.0);
    for (const IdealMirrorKind kind :
         {IdealMirrorKind::Conducting, IdealMirrorKind::Permeable}) {
      const Mirror mirror = kind == IdealMirrorKind::Conducting
                                ? Mirror::ideal_conducting()
                                : Mirror::ideal_permeable();
      for (const Formulation f : {Formulation::Lorentz, Formulation::Minkowski}) {
        const double z = 2.0;
        const double quadrature = atom_force_large(mirror, cavity, atom, z, f, spec);
        const double closed = ideal_mirror_closed_form(atom, cavity, z, f, kind);
        worst = std::max(worst, rel_err(quadrature, closed));
        smallest_target = std::min(smallest_target, std::abs(closed));
      }
    }
  }
  out.expect(worst < 1e-8,
             "p-quadrature vs closed form over 20 random (eps0, mu0, alpha_e0, "
             "alpha_m0) tuples, both mirror kinds, both formulations: max "
             "rel_err=" + num(worst) + " (tol 1e-8)");
  out.expect(smallest_target > 1e-6,
             "no degenerate comparison target (min |closed form|=" +
                 num(smallest_target) + ")");
  return out;
}

// --- 2. Casimir-Polder / Boyer limit ------------------------------------

AcceptanceOutcome check_casimir_polder_boyer() {
  AcceptanceOutcome out;
  const QuadratureSpec spec;
  const Mirror mirror = Mirror::ideal_conducting();
  for (const double z : {50.0, 100.0}) {
    const CavityConfig cavity =
        CavityConfig::semi_infinite(Medium::vacuum(), mirror, z);
    const double target = 3.0 / (2.0 * kPi * std::pow(z, 5));

    const ForceResult fe =
        atom_force(cavity, electric_atom(1.0, 1.0), Formulation::Lorentz, spec);
    expect_close(out, "electric atom, z*omega_0/c=" + num(z), fe.total, target,
                 0.01);
    out.expect(fe.total > 0.0 && fe.converged,
               "electric-atom force is attractive toward the mirror and "
               "converged at z=" + num(z));

    const ForceResult fm =
        atom_force(cavity, magnetic_atom(1.0, 1.0), Formulation::Lorentz, spec);
    expect_close(out, "magnetic atom (sign reversed), z*omega_0/c=" + num(z),
                 fm.total, -target, 0.01);
  }
  return out;
}

// --- 3. van der Waals limit ---------------------------------------------

AcceptanceOutcome check_van_der_waals() {
  AcceptanceOutcome out;
  const QuadratureSpec spec;
  const Mirror mirror = Mirror::ideal_conducting();
  const AtomSpecies atom = electric_atom(1.0, 1.0);
  for (const double z : {1e-3, 1e-2}) {
    const CavityConfig cavity =
        CavityConfig::semi_infinite(Medium::vacuum(), mirror, z);
    const double analytic = 3.0 / (8.0 * std::pow(z, 4));  // 3 alpha_0 omega_0 / 8 z^4
    const ForceResult f = atom_force(cavity, atom, Formulation::Lorentz, spec);
    expect_close(out, "full force vs 3 alpha_0 omega_0 / (8 z^4), z*omega_0/c=" + num(z),
                 f.total, analytic, 0.01);
    const double short_form =
        atom_force_short(mirror, Medium::vacuum(), atom, z, spec);
    expect_close(out, "short-distance operation vs the same analytic value, z=" + num(z),
                 short_form, analytic, 1e-9);
  }
  return out;
}

// --- 4. Lorentz = Minkowski in vacuum -----------------------------------

AcceptanceOutcome check_formulation_equality() {
  AcceptanceOutcome out;
  const QuadratureSpec spec;
  const Mirror mirror = Mirror::half_space(
      Medium{ResponseModel::plasma(1.0), ResponseModel()});
  AtomSpecies atom;
  atom.alpha_e = PolarizabilityModel::single(1.0, 1.0);
  atom.alpha_m = PolarizabilityModel::single(0.5, 2.0);

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = static_cast<double>(i) / 19.0;
    const double z = std::pow(10.0, -1.0 + 2.0 * t);  // z in [0.1, 10]
    const CavityConfig cavity =
        CavityConfig::semi_infinite(Medium::vacuum(), mirror, z);
    const double lorentz =
        atom_force(cavity, atom, Formulation::Lorentz, spec).total;
    const double minkowski =
        atom_force(cavity, atom, Formulation::Minkowski, spec).total;
    worst = std::max(worst, rel_err(lorentz, minkowski));
  }
  out.expect(worst <= 1e-10,
             "Lorentz vs Minkowski for n = 1 over a 20-point log sweep: max "
             "rel diff=" + num(worst) + " (tol 1e-10)");
  return out;
}

// --- 5. thin-slab master oracle ------------------------------------------

AcceptanceOutcome check_thin_slab() {
  AcceptanceOutcome out;
  const QuadratureSpec spec;
  const Medium plasma{ResponseModel::plasma(1.0), ResponseModel()};
  const CavityConfig cavity =
      CavityConfig::two_mirror(Medium::vacuum(), Mirror::half_space(plasma), 1.5,
                               Mirror::half_space(plasma), 0.75);
  Dopant dopant;
  dopant.species = electric_atom(0.02, 1.0);
  dopant.number_density = 1e-3 / (4.0 * kPi * 0.02);  // 4 pi N alpha_0 = 1e-3

  SlabConfig slab;
  slab.medium = doped_medium(cavity.medium, dopant.species, dopant.number_density);
  slab.d_s = 0.02;
  slab.dopant = dopant;

  const ThinSlabReport report = thin_slab_decomposition_check(cavity, slab, spec);
  out.expect(report.discrepancy < 0.005,
             "Richardson-extrapolated (f - f_M)/(N d_s) vs the per-atom force: "
             "extrapolated=" + num(report.extrapolated) +
                 " reference=" + num(report.reference) +
                 " rel discrepancy=" + num(report.discrepancy) + " (tol 0.005)");
  out.expect(report.monotone && report.converged,
             "d_s ladder converged monotonically");
  return out;
}

// --- 6. London limit ------------------------------------------------------

AcceptanceOutcome check_london() {
  AcceptanceOutcome out;
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  const double alpha_0 = 0.7;
  const double omega_0 = 1.3;
  const double r = 0.9;
  const AtomSpecies atom = electric_atom(alpha_0, omega_0);

  const double vacuum_value =
      atom_atom_embedded(atom, atom, Medium::vacuum(), r, spec);
  // oracle: int alpha^2 dxi = pi alpha_0^2 omega_0 / 4
  const double target = 4.5 * omega_0 * alpha_0 * alpha_0 / std::pow(r, 7);
  expect_close(out, "vacuum host, identical electric atoms vs (9/2) omega_0 "
                    "alpha_0^2 / r^7",
               vacuum_value, target, 1e-8);

  const double screened =
      atom_atom_embedded(atom, atom, constant_medium(2.0, 1.0), r, spec);
  expect_close(out, "constant eps = 2 host screens by exactly 1/8",
               screened / vacuum_value, 0.125, 1e-10);
  return out;
}

// --- 7. medium-atom force properties --------------------------------------

AcceptanceOutcome check_medium_atom() {
  AcceptanceOutcome out;
  const QuadratureSpec spec;

  // Cavity medium realizing n^2 = 1 + 4 pi N (alpha_e + alpha_m) exactly.
  const double number_density = 1e-4 / (4.0 * kPi * 0.03);
  AtomSpecies species;
  species.alpha_e = PolarizabilityModel::single(0.01, 1.0);
  species.alpha_m = PolarizabilityModel::single(0.02, 2.0);
  const auto cavity_medium_for = [&](const AtomSpecies& s) {
    std::vector<ResponseOscillator> oscillators;
    for (const auto& model : {s.alpha_e, s.alpha_m}) {
      for (const auto& o : model.oscillators()) {
        oscillators.push_back({4.0 * kPi * number_density * o.alpha_0 *
                                   o.omega_0 * o.omega_0,
                               o.omega_0, 0.0});
      }
    }
    Medium m;
    m.epsilon = ResponseModel::drude_lorentz(std::move(oscillators));
    return m;
  };
  const Medium medium = cavity_medium_for(species);
  const Mirror plasma_mirror =
      Mirror::half_space(Medium{ResponseModel::plasma(1.0), ResponseModel()});

  // (a) exchange alpha_e <-> alpha_m leaves every bit unchanged.
  AtomSpecies swapped;
  swapped.alpha_e = species.alpha_m;
  swapped.alpha_m = species.alpha_e;
  const CavityConfig cavity =
      CavityConfig::semi_infinite(medium, plasma_mirror, 1.0);
  const ForceResult direct =
      medium_atom_force(cavity, {species, number_density}, spec);
  const ForceResult exchanged =
      medium_atom_force(cavity, {swapped, number_density}, spec);
  out.expect(direct.total == exchanged.total &&
                 direct.assisted_parts.tm == exchanged.assisted_parts.tm &&
                 direct.assisted_parts.te == exchanged.assisted_parts.te,
             "alpha_e <-> alpha_m exchange reproduces every digit (" +
                 num(direct.total) + ")");

  // (b) large-distance ideal-conductor value: the p-integral is +2/3.
  {
    const double z = 2.0;
    const double computed = medium_atom_asymptotics(
        Mirror::ideal_conducting(), {species, number_density}, z,
        AsymptoticRegime::Large, spec);
    const double alpha_sum0 =
        species.alpha_e.static_value() + species.alpha_m.static_value();
    const double target =
        3.0 / (4.0 * kPi * std::pow(z, 5)) * alpha_sum0 * (2.0 / 3.0);
    expect_close(out, "large-distance ideal conductor vs +(3/(4 pi z^5)) "
                      "(alpha_e0+alpha_m0) (2/3)",
                 computed, target, 1e-6);
    out.expect(computed > 0.0, "sign is positive regardless of polarizability type");
  }

  // (c) short-distance scaling of the full force: exponent -2 over two
  // decades.
  {
    double sum_lx = 0.0, sum_ly = 0.0, sum_lxlx = 0.0, sum_lxly = 0.0;
    const int points = 5;
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      const double z = std::pow(10.0, -4.0 + 2.0 * t);
      const CavityConfig c = CavityConfig::semi_infinite(medium, plasma_mirror, z);
      const ForceResult f = medium_atom_force(c, {species, number_density}, spec);
      const double lx = std::log(z);
      const double ly = std::log(std::abs(f.total));
      sum_lx += lx;
      sum_ly += ly;
      sum_lxlx += lx * lx;
      sum_lxly += lx * ly;
    }
    const double slope = (points * sum_lxly - sum_lx * sum_ly) /
                         (points * sum_lxlx - sum_lx * sum_lx);
    out.expect(std::abs(slope + 2.0) <= 0.02,
               "fitted short-distance exponent over z in [1e-4, 1e-2]: " +
                   num(slope) + " (target -2 +- 0.02)");
  }
  return out;
}

// --- 8. slab positivity and assisted-force sign structure -----------------

AcceptanceOutcome check_positivity() {
  AcceptanceOutcome out;
  std::mt19937_64 rng(0xab5a1uLL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, unit(rng));
  };
  const auto random_response = [&]() {
    if (unit(rng) < 0.5) {
      return ResponseModel::constant(1.0 + 9.0 * unit(rng));
    }
    std::vector<ResponseOscillator> osc;
    const int n = 1 + static_cast<int>(unit(rng) * 2.0);
    for (int i = 0; i < n; ++i) {
      osc.push_back({log_uniform(1e-2, 1e2), log_uniform(1e-2, 1e2),
                     unit(rng) < 0.5 ? 0.0 : log_uniform(1e-3, 1.0)});
    }
    return ResponseModel::drude_lorentz(std::move(osc));
  };
  const auto random_medium = [&]() {
    Medium m;
    m.epsilon = random_response();
    m.mu = unit(rng) < 0.5 ? ResponseModel() : random_response();
    return m;
  };

  // (1 + r)^2 - t^2 > 0 for randomized passive slabs.
  int violations = 0;
  double min_bracket = 1e300;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const Medium cavity = unit(rng) < 0.5 ? Medium::vacuum() : random_medium();
    const Medium slab = random_medium();
    const double d_s = log_uniform(1e-4, 10.0);
    const double xi = log_uniform(1e-3, 1e3);
    const double k = log_uniform(1e-3, 1e3);
    for (const Polarization q : {Polarization::TM, Polarization::TE}) {
      const double bracket =
          slab_coefficients(q, cavity, slab, d_s, xi, k).one_plus_r_sq_minus_t_sq();
      min_bracket = std::min(min_bracket, bracket);
      if (!(bracket > 0.0)) ++violations;
    }
  }
  out.expect(violations == 0,
             "(1+r)^2 - t^2 > 0 for " + std::to_string(draws) +
                 " random slab parameter sets (min " + num(min_bracket) + ")");

  // Sign of each per-mirror assisted contribution equals the sign of
  // Delta_q r^q_i (with the direction factor -1 for mirror 1), because the
  // bracket and the denominator N^q are positive.
  int sign_checks = 0;
  int sign_failures = 0;
  for (int i = 0; i < 400; ++i) {
    const Medium cavity = unit(rng) < 0.7 ? Medium::vacuum() : random_medium();
    const Medium slab_medium = random_medium();
    const Mirror m1 = Mirror::half_space(random_medium());
    const Mirror m2 = Mirror::half_space(random_medium());
    const double d1 = log_uniform(0.1, 5.0);
    const double d2 = log_uniform(0.1, 5.0);
    const double d_s = log_uniform(1e-3, 1.0);
    const double xi = log_uniform(1e-2, 1e2);
    const double k = log_uniform(1e-2, 1e2);
    const double kappa = perpendicular_wavevector(cavity, xi, k);
    for (const Polarization q : {Polarization::TM, Polarization::TE}) {
      const SlabCoefficients sc = slab_coefficients(q, cavity, slab_medium, d_s, xi, k);
      const double r1 = mirror_reflection(m1, q, cavity, xi, k);
      const double r2 = mirror_reflection(m2, q, cavity, xi, k);
      const double e1 = std::exp(-2.0 * kappa * d1);
      const double e2 = std::exp(-2.0 * kappa * d2);
      const double denom = 1.0 - sc.r * (r1 * e1 + r2 * e2) +
                           sc.r_sq_minus_t_sq() * r1 * r2 * e1 * e2;
      const double bracket = sc.one_plus_r_sq_minus_t_sq();
      if (!(bracket > 0.0) || !(denom > 0.0)) {
        ++sign_failures;
        continue;
      }
      const double delta = polarization_delta(q);
      const double piece2 = delta * bracket * r2 * e2 / denom;
      const double piece1 = -delta * bracket * r1 * e1 / denom;
      // Contributions that underflow to zero carry no sign to compare.
      if (piece2 != 0.0 &&
          std::signbit(piece2) != std::signbit(delta * r2)) {
        ++sign_failures;
      }
      if (piece1 != 0.0 &&
          std::signbit(piece1) != std::signbit(-delta * r1)) {
        ++sign_failures;
      }
      ++sign_checks;
    }
  }
  out.expect(sign_failures == 0,
             "assisted-term contribution signs follow sign(Delta_q r^q_i) at " +
                 std::to_string(sign_checks) + " sampled points");
  return out;
}

// --- 9. quadrature golden suite -------------------------------------------

AcceptanceOutcome check_quadrature_golden() {
  AcceptanceOutcome out;
  QuadratureSpec tight;
  tight.rel_tol = 1e-13;
  const IntegralResult p4 =
      integrate_half_line([](double p) { return 1.0 / (p * p * p * p); }, 1.0, tight);
  expect_close(out, "int_1^inf p^-4 dp", p4.value, 1.0 / 3.0, 1e-12);
  const IntegralResult boyer = integrate_half_line(
      [](double p) { return (2.0 * p * p - 1.0) / (p * p * p * p); }, 1.0, tight);
  expect_close(out, "int_1^inf (2p^2-1) p^-4 dp", boyer.value, 5.0 / 3.0, 1e-12);

  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  const IntegralResult expo =
      integrate_half_line([](double x) { return std::exp(-x); }, 0.0, spec);
  expect_close(out, "int_0^inf e^-x dx", expo.value, 1.0, 1e-10);
  const IntegralResult lorentzian =
      integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, spec);
  expect_close(out, "int_0^inf dx/(1+x^2)", lorentzian.value, kPi / 2.0, 1e-10);

  QuadratureSpec spec2d;
  spec2d.rel_tol = 1e-9;
  const IntegralResult separable = integrate_double(
      [](double x, double y) { return std::exp(-x - y); }, spec2d);
  expect_close(out, "int int e^{-x-y}", separable.value, 1.0, 1e-8);
  const IntegralResult mixed = integrate_double(
      [](double x, double y) { return std::exp(-x) / (1.0 + y * y); }, spec2d);
  expect_close(out, "int int e^-x/(1+y^2)", mixed.value, kPi / 2.0, 1e-8);

  // Randomized separable products vs the product of two 1D integrations.
  std::mt19937_64 rng(0x90d13ULL);
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double a = scale(rng);
    const double b = scale(rng);
    const auto g = [a](double x) { return std::exp(-a * x) * (1.0 + x); };
    const auto h = [b](double y) { return 1.0 / (b * b + y * y); };
    const IntegralResult g1 = integrate_half_line(g, 0.0, spec);
    const IntegralResult h1 = integrate_half_line(h, 0.0, spec);
    const IntegralResult both = integrate_double(
        [&](double x, double y) { return g(x) * h(y); }, spec2d);
    worst = std::max(worst, rel_err(both.value, g1.value * h1.value));
  }
  out.expect(worst <= 1e-8,
             "random separable products match the product of 1D integrals: max "
             "rel_err=" + num(worst) + " (tol 1e-8)");
  return out;
}

// --- 10. determinism -------------------------------------------------------

AcceptanceOutcome check_determinism() {
  AcceptanceOutcome out;
  const std::string config_text = R"({
    "materials": {"metal": {"epsilon": {"model": "plasma", "omega_p": 1.0}}},
    "atoms": {"probe": {"alpha_e": [{"alpha_0": 1.0, "omega_0": 1.0}]}},
    "mirrors": {"wall": {"kind": "stack", "half_space": "metal"}},
    "scenario": "atom-force",
    "geometry": {"mirror2": "wall",
                 "sweep": {"start": 0.5, "stop": 5.0, "points": 4}},
    "atom": "probe",
    "quadrature": {"rel_tol": 1e-7}
  })";

  const ScenarioConfig config = parse_config(config_text);
  const std::string first = emit_table(run_sweep(config), TableFormat::Csv);
  const std::string second = emit_table(run_sweep(config), TableFormat::Csv);
  out.expect(first == second, "repeated run produces bit-identical CSV");

  const ScenarioConfig echoed = parse_config(config.resolved_json);
  const std::string third = emit_table(run_sweep(echoed), TableFormat::Csv);
  out.expect(first == third,
             "re-running the echoed resolved config reproduces the CSV");
  return out;
}

}  // namespace

const std::vector<AcceptanceCheck>& acceptance_suite() {
  static const std::vector<AcceptanceCheck> checks = {
      {"ideal-mirror-closed-form",
       "large-distance quadrature matches the ideal-mirror closed forms",
       check_ideal_mirror_closed_form},
      {"casimir-polder-boyer",
       "retarded limit reproduces the Casimir-Polder/Boyer force",
       check_casimir_polder_boyer},
      {"van-der-waals",
       "nonretarded limit reproduces the van der Waals force",
       check_van_der_waals},
      {"formulation-equality",
       "Lorentz and Minkowski formulations agree in vacuum",
       check_formulation_equality},
      {"thin-slab",
       "slab force decomposes into medium-layer plus per-atom forces",
       check_thin_slab},
      {"london", "in-medium London force with 1/eps^3 screening", check_london},
      {"medium-atom", "medium-atom force properties", check_medium_atom},
      {"positivity", "slab bracket positivity and assisted sign structure",
       check_positivity},
      {"quadrature-golden", "semi-infinite quadrature golden values",
       check_quadrature_golden},
      {"determinism", "bit-identical repeated runs", check_determinism},
  };
  return checks;
}

int run_acceptance(const std::vector<std::string>& names, std::ostream& out) {
  const auto& suite = acceptance_suite();
  std::vector<const AcceptanceCheck*> selected;
  if (names.empty()) {
    for (const auto& check : suite) selected.push_back(&check);
  } else {
    for (const std::string& name : names) {
      const auto it = std::find_if(suite.begin(), suite.end(),
                                   [&](const AcceptanceCheck& c) {
                                     return c.name == name;
                                   });
      if (it == suite.end()) {
        std::ostringstream msg;
        msg << "unknown check '" << name << "'; available:";
        for (const auto& check : suite) msg << ' ' << check.name;
        throw ConfigError(msg.str());
      }
      selected.push_back(&*it);
    }
  }

  int failures = 0;
  for (const AcceptanceCheck* check : selected) {
    const AcceptanceOutcome outcome = check->run();
    out << (outcome.passed ? "PASS " : "FAIL ") << check->name << " — "
        << check->title << "\n";
    for (const std::string& detail : outcome.details) {
      out << "    " << detail << "\n";
    }
    if (!outcome.passed) ++failures;
  }
  out << (failures == 0 ? "acceptance: all " : "acceptance: FAILURES — ")
      << selected.size() - failures << "/" << selected.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace vacforce
