#include <benchmark/benchmark.h>

#include <cmath>

#include "vacforce/forces.hpp"
#include "vacforce/quadrature.hpp"

using namespace vacforce;

namespace {

Medium plasma_medium(double omega_p) {
  Medium m;
  m.epsilon = ResponseModel::plasma(omega_p);
  return m;
}

AtomSpecies electric_atom() {
  AtomSpecies a;
  a.alpha_e = PolarizabilityModel::single(1.0, 1.0);
  return a;
}

QuadratureSpec spec_with(double rel_tol) {
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  return spec;
}

}  // namespace

static void BM_HalfLineQuadrature(benchmark::State& state) {
  const QuadratureSpec spec = spec_with(std::pow(10.0, -state.range(0)));
  for (auto _ : state) {
    auto r = integrate_half_line(
        [](double x) { return std::exp(-x) / (1.0 + x * x); }, 0.0, spec);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_HalfLineQuadrature)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

static void BM_MirrorReflectionStack(benchmark::State& state) {
  Medium metal;
  metal.epsilon = ResponseModel::drude_lorentz({{2.0, 1.0, 0.1}});
  const Mirror mirror =
      Mirror::stack({{metal, 0.1}, {Medium::vacuum(), 0.05}}, metal);
  double xi = 0.31;
  for (auto _ : state) {
    xi = xi < 10.0 ? xi * 1.01 : 0.31;
    benchmark::DoNotOptimize(
        mirror_reflection(mirror, Polarization::TM, Medium::vacuum(), xi, 1.3));
  }
}
BENCHMARK(BM_MirrorReflectionStack);

static void BM_AtomForce(benchmark::State& state) {
  const double z = std::pow(10.0, state.range(0));
  const CavityConfig cavity = CavityConfig::semi_infinite(
      Medium::vacuum(), Mirror::half_space(plasma_medium(1.0)), z);
  const QuadratureSpec spec = spec_with(1e-8);
  const AtomSpecies atom = electric_atom();
  for (auto _ : state) {
    auto f = atom_force(cavity, atom, Formulation::Lorentz, spec);
    benchmark::DoNotOptimize(f.total);
  }
}
BENCHMARK(BM_AtomForce)->Arg(-2)->Arg(0)->Arg(2);

static void BM_SlabForce(benchmark::State& state) {
  const Mirror metal = Mirror::half_space(plasma_medium(1.0));
  const CavityConfig cavity =
      CavityConfig::two_mirror(Medium::vacuum(), metal, 1.2, metal, 0.8);
  SlabConfig slab;
  slab.medium.epsilon = ResponseModel::drude_lorentz({{2.0, 1.5, 0.1}});
  slab.d_s = 0.4;
  const QuadratureSpec spec = spec_with(1e-8);
  for (auto _ : state) {
    auto f = slab_force(cavity, slab, spec);
    benchmark::DoNotOptimize(f.total);
  }
}
BENCHMARK(BM_SlabForce);

static void BM_MediumAtomForce(benchmark::State& state) {
  const double z = std::pow(10.0, state.range(0));
  MediumAtom ma;
  ma.species.alpha_e = PolarizabilityModel::single(0.01, 1.0);
  ma.number_density = 1e-4 / (4.0 * 3.14159265358979324 * 0.01);
  const Medium medium = doped_medium(Medium::vacuum(), ma.species, ma.number_density);
  const CavityConfig cavity = CavityConfig::semi_infinite(
      medium, Mirror::half_space(plasma_medium(1.0)), z);
  const QuadratureSpec spec = spec_with(1e-8);
  for (auto _ : state) {
    auto f = medium_atom_force(cavity, ma, spec);
    benchmark::DoNotOptimize(f.total);
  }
}
BENCHMARK(BM_MediumAtomForce)->Arg(-3)->Arg(0);

BENCHMARK_MAIN();
