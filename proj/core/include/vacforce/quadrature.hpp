#pragma once

#include <functional>

namespace vacforce {

// Controls for the adaptive semi-infinite integrators. Either rel_tol or
// abs_tol must be positive. scale_hint is the characteristic decay scale
// of the integrand measured from the lower limit; it only affects
// efficiency, never correctness. max_evaluations bounds the number of
// integrand calls of a single 1D integration (the inner rule uses 15
// points per panel).
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  long max_evaluations = 200000;
  double scale_hint = 1.0;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Integral of f over [lower, infinity). The half-line is mapped onto
// [0, 1) by x = lower + scale_hint * t / (1 - t) and integrated with an
// adaptive Gauss-Kronrod 7/15 rule. Node sets are deterministic for a
// fixed spec. A non-finite integrand value raises std::domain_error;
// failure to meet the tolerance within max_evaluations is reported via
// converged = false, never silently.
IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   double lower, const QuadratureSpec& spec);

// Integral of f over [0,inf) x [0,inf) by nesting integrate_half_line,
// with the inner tolerance tightened by a decade. spec.scale_hint applies
// to both variables; spec.max_evaluations bounds each 1D stage
// separately. evaluations reports the total number of f calls.
IntegralResult integrate_double(const std::function<double(double, double)>& f,
                                const QuadratureSpec& spec);

}  // namespace vacforce
