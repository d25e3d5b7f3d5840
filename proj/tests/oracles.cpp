#include "oracles.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

struct Wrapped {
  const std::function<double(double)>* f;
};

double call(double x, void* p) { return (*static_cast<Wrapped*>(p)->f)(x); }

}  // namespace

double integrate_to_infinity(const std::function<double(double)>& f,
                             double lower, double rel_tol) {
  static const int once = [] {
    gsl_set_error_handler_off();
    return 0;
  }();
  (void)once;

  gsl_integration_workspace* w = gsl_integration_workspace_alloc(8192);
  Wrapped wrapped{&f};
  gsl_function F;
  F.function = &call;
  F.params = &wrapped;
  double value = 0.0;
  double abserr = 0.0;
  const int status =
      gsl_integration_qagiu(&F, lower, 0.0, rel_tol, 8192, w, &value, &abserr);
  gsl_integration_workspace_free(w);
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw std::runtime_error("GSL oracle integration failed");
  }
  return value;
}

double slab_force_direct(const vacforce::CavityConfig& cavity,
                         const vacforce::SlabConfig& slab, double rel_tol) {
  using namespace vacforce;
  constexpr double pi = std::numbers::pi;

  const auto integrand = [&](double xi, double k) {
    const double kappa = perpendicular_wavevector(cavity.medium, xi, k);
    const double eps = cavity.medium.epsilon.eval(xi);
    const double mu = cavity.medium.mu.eval(xi);
    const double n_sq = eps * mu;
    const double e1 = std::exp(-2.0 * kappa * cavity.d1);
    const double e2 = std::exp(-2.0 * kappa * cavity.d2);
    double total = 0.0;
    for (const Polarization q : {Polarization::TM, Polarization::TE}) {
      const SlabCoefficients sc =
          slab_coefficients(q, cavity.medium, slab.medium, slab.d_s, xi, k);
      const double r1 = mirror_reflection(*cavity.mirror1, q, cavity.medium, xi, k);
      const double r2 = mirror_reflection(cavity.mirror2, q, cavity.medium, xi, k);
      const double numerator = r2 * e2 - r1 * e1;
      const double denominator = 1.0 - sc.r * (r1 * e1 + r2 * e2) +
                                 sc.r_sq_minus_t_sq() * r1 * r2 * e1 * e2;
      const double screen = q == Polarization::TM ? 1.0 / eps : mu;
      total += k * kappa * screen * sc.r * numerator / denominator /
               (2.0 * pi * pi);
      total += xi * xi * mu * (n_sq - 1.0) * (k / kappa) *
               sc.one_plus_r_sq_minus_t_sq() * polarization_delta(q) *
               numerator / denominator / (8.0 * pi * pi);
    }
    return total;
  };

  const auto outer = [&](double xi) {
    return integrate_to_infinity([&](double k) { return integrand(xi, k); },
                                 0.0, 0.1 * rel_tol);
  };
  return integrate_to_infinity(outer, 0.0, rel_tol);
}

}  // namespace oracle
