#include "vacforce/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace vacforce {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]. The odd-indexed
// abscissae (plus the center) form the embedded 7-point Gauss rule.
constexpr double kGKNodes[8] = {
    0.99145537112081263921,  //
    0.94910791234275852453,  // Gauss
    0.86486442335976907279,  //
    0.74153118559939443986,  // Gauss
    0.58608723546769113029,  //
    0.40584515137739716691,  // Gauss
    0.20778495500789846760,  //
    0.0,                     // Gauss (center)
};
constexpr double kKronrodWeights[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
};
constexpr double kGaussWeights[4] = {
    0.12948496616886969327, 0.27970539148927666790,
    0.38183005050511894495, 0.41795918367346938776,
};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

// One GK15 application to g on [a, b] with the QUADPACK error scaling.
template <typename G>
PanelEstimate gk15(const G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv1[7];
  double fv2[7];
  const double fc = g(center);

  double result_gauss = fc * kGaussWeights[3];
  double result_kronrod = fc * kKronrodWeights[7];
  double resabs = std::abs(result_kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kGKNodes[j];
    fv1[j] = g(center - dx);
    fv2[j] = g(center + dx);
    const double fsum = fv1[j] + fv2[j];
    result_kronrod += kKronrodWeights[j] * fsum;
    resabs += kKronrodWeights[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) {
      result_gauss += kGaussWeights[j / 2] * fsum;
    }
  }

  const double mean = result_kronrod * 0.5;
  double resasc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kKronrodWeights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  resasc *= std::abs(half);
  resabs *= std::abs(half);

  PanelEstimate est;
  est.value = result_kronrod * half;
  est.error = std::abs((result_kronrod - result_gauss) * half);
  if (resasc != 0.0 && est.error != 0.0) {
    est.error = resasc * std::min(1.0, std::pow(200.0 * est.error / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) {
    est.error = std::max(est.error, 50.0 * eps * resabs);
  }
  return est;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// Largest error first; ties broken by creation index so the subdivision
// order is reproducible.
struct PanelOrder {
  bool operator()(const std::pair<double, std::size_t>& x,
                  const std::pair<double, std::size_t>& y) const {
    if (x.first != y.first) return x.first < y.first;
    return x.second > y.second;
  }
};

void validate_spec(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) && !(spec.abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature spec needs rel_tol > 0 or abs_tol > 0");
  }
  if (spec.rel_tol < 0.0 || spec.abs_tol < 0.0) {
    throw std::invalid_argument("quadrature tolerances must be >= 0");
  }
  if (!(spec.scale_hint > 0.0) || !std::isfinite(spec.scale_hint)) {
    throw std::invalid_argument("quadrature scale_hint must be positive and finite");
  }
  if (spec.max_evaluations < 15) {
    throw std::invalid_argument("quadrature max_evaluations must allow at least one panel");
  }
}

}  // namespace

IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   double lower, const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!std::isfinite(lower)) {
    throw std::invalid_argument("lower integration limit must be finite");
  }

  long evaluations = 0;
  const double s = spec.scale_hint;
  // x = lower + s t/(1-t), dx = s/(1-t)^2 dt maps [0,1) onto [lower,inf).
  const auto mapped = [&](double t) {
    const double om = 1.0 - t;
    const double x = lower + s * t / om;
    const double w = s / (om * om);
    const double fx = f(x);
    ++evaluations;
    if (!std::isfinite(fx)) {
      throw std::domain_error("integrand returned a non-finite value");
    }
    return fx * w;
  };

  // Initial uniform panels resolve features the error estimator of a
  // single panel could miss.
  constexpr int kInitialPanels = 8;
  std::vector<Panel> panels;
  panels.reserve(64);
  std::priority_queue<std::pair<double, std::size_t>,
                      std::vector<std::pair<double, std::size_t>>, PanelOrder>
      worst;

  double value_sum = 0.0;
  double error_sum = 0.0;
  const auto push_panel = [&](double a, double b) {
    const PanelEstimate est = gk15(mapped, a, b);
    panels.push_back({a, b, est.value, est.error});
    worst.push({est.error, panels.size() - 1});
    value_sum += est.value;
    error_sum += est.error;
  };

  for (int i = 0; i < kInitialPanels; ++i) {
    push_panel(static_cast<double>(i) / kInitialPanels,
               static_cast<double>(i + 1) / kInitialPanels);
  }

  const auto tolerance = [&] {
    return std::max(spec.rel_tol * std::abs(value_sum), spec.abs_tol);
  };

  while (error_sum > tolerance() && evaluations + 30 <= spec.max_evaluations) {
    const auto [err, idx] = worst.top();
    worst.pop();
    const Panel p = panels[idx];
    // Retire the parent's contribution before splitting.
    value_sum -= p.value;
    error_sum -= p.error;
    panels[idx].error = 0.0;
    panels[idx].value = 0.0;
    const double mid = 0.5 * (p.a + p.b);
    push_panel(p.a, mid);
    push_panel(mid, p.b);
    if (mid == p.a || mid == p.b) break;  // interval exhausted at roundoff
  }

  // Recombine in creation order so the reported value does not depend on
  // the heap's internal state.
  double value = 0.0;
  double error = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
  }

  IntegralResult result;
  result.value = value;
  result.error_estimate = error;
  result.evaluations = evaluations;
  result.converged = error <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
  return result;
}

IntegralResult integrate_double(const std::function<double(double, double)>& f,
                                const QuadratureSpec& spec) {
  validate_spec(spec);

  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = spec.rel_tol > 0.0 ? 0.1 * spec.rel_tol : 0.0;
  inner_spec.abs_tol = 0.1 * spec.abs_tol;

  long inner_evaluations = 0;
  bool inner_converged = true;
  const auto outer_integrand = [&](double x) {
    const IntegralResult inner = integrate_half_line(
        [&](double y) { return f(x, y); }, 0.0, inner_spec);
    inner_evaluations += inner.evaluations;
    inner_converged = inner_converged && inner.converged;
    return inner.value;
  };

  IntegralResult result = integrate_half_line(outer_integrand, 0.0, spec);
  result.evaluations = inner_evaluations;
  result.converged = result.converged && inner_converged;
  return result;
}

}  // namespace vacforce
