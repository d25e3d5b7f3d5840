#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vacforce/acceptance.hpp"
#include "vacforce/errors.hpp"
#include "vacforce/scenario.hpp"
#include "vacforce/table.hpp"

using namespace vacforce;

namespace {

const char* kMinimalAtomForce = R"({
  "materials": {"metal": {"epsilon": {"model": "plasma", "omega_p": 1.0}}},
  "atoms": {"probe": {"alpha_e": [{"alpha_0": 1.0, "omega_0": 1.0}]}},
  "mirrors": {"wall": {"kind": "stack", "half_space": "metal"}},
  "scenario": "atom-force",
  "geometry": {"mirror2": "wall", "sweep": {"start": 1.0}},
  "atom": "probe"
})";

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos;
       pos += to.size()) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    const char* p = line.c_str();
    char* end = nullptr;
    while (*p) {
      row.push_back(std::strtod(p, &end));
      p = (*end == ',') ? end + 1 : end;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("minimal config resolves with documented defaults") {
  const ScenarioConfig config = parse_config(kMinimalAtomForce);
  CHECK(config.kind == ScenarioKind::AtomForce);
  CHECK(config.formulation == Formulation::Lorentz);
  CHECK(config.output == OutputUnits::Natural);
  CHECK(config.omega_ref == 1.0);
  CHECK(config.quadrature.rel_tol == 1e-8);
  CHECK(config.sweep.points == 1);
  CHECK_FALSE(config.mirror1.has_value());

  // defaults are echoed into the resolved document
  CHECK(config.resolved_json.find("\"formulation\":\"lorentz\"") != std::string::npos);
  CHECK(config.resolved_json.find("\"rel_tol\":1e-08") != std::string::npos);
  CHECK(config.resolved_json.find("\"spacing\":\"log\"") != std::string::npos);
}

TEST_CASE("errors name the offending path") {
  const auto expect_error = [](const std::string& text, const char* needle) {
    try {
      parse_config(text);
      FAIL_CHECK("expected ConfigError mentioning '" << needle << "'");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  // dangling material reference
  expect_error(replace_all(kMinimalAtomForce, "\"half_space\": \"metal\"",
                           "\"half_space\": \"goldx\""),
               "goldx");
  // unknown key
  expect_error(replace_all(kMinimalAtomForce, "\"scenario\": \"atom-force\"",
                           "\"scenario\": \"atom-force\", \"bogus\": 1"),
               "bogus");
  // sweep with stop < start
  expect_error(replace_all(kMinimalAtomForce, "\"sweep\": {\"start\": 1.0}",
                           "\"sweep\": {\"start\": 1.0, \"stop\": 0.5}"),
               "stop");
  // non-positive distance
  expect_error(replace_all(kMinimalAtomForce, "\"sweep\": {\"start\": 1.0}",
                           "\"sweep\": {\"start\": -2.0}"),
               "start");
  // mirror1 without d1
  expect_error(replace_all(kMinimalAtomForce, "\"mirror2\": \"wall\"",
                           "\"mirror2\": \"wall\", \"mirror1\": \"wall\""),
               "d1");
  // scenario payload mismatch
  expect_error(replace_all(kMinimalAtomForce, "\"scenario\": \"atom-force\"",
                           "\"scenario\": \"slab-force\""),
               "slab");
  // builtin name collision
  expect_error(replace_all(kMinimalAtomForce, "\"metal\":",
                           "\"vacuum\":"),
               "vacuum");
  // minkowski outside its domain
  expect_error(
      "{\"materials\": {}, \"atoms\": {\"a\": {\"alpha_e\": [{\"alpha_0\": 1, "
      "\"omega_0\": 1}]}}, \"scenario\": \"atom-atom\", \"formulation\": "
      "\"minkowski\", \"geometry\": {\"sweep\": {\"start\": 1.0}}, \"pair\": "
      "{\"kind\": \"embedded-embedded\", \"a\": \"a\", \"b\": \"a\"}}",
      "formulation");
  // not JSON at all
  expect_error("scenario: atom-force", "JSON");
}

TEST_CASE("single-point sweep gives a one-row table") {
  const ScenarioConfig config = parse_config(kMinimalAtomForce);
  const ResultTable table = run_sweep(config);
  REQUIRE(table.rows().size() == 1);
  CHECK(table.rows()[0].distance == 1.0);
  CHECK(table.rows()[0].force.converged);
  CHECK(table.rows()[0].force.total > 0.0);
}

TEST_CASE("csv rows round-trip bit-exactly") {
  ScenarioConfig config = parse_config(replace_all(
      kMinimalAtomForce, "\"sweep\": {\"start\": 1.0}",
      "\"sweep\": {\"start\": 0.5, \"stop\": 2.0, \"points\": 3}"));
  config.quadrature.rel_tol = 1e-6;
  const ResultTable table = run_sweep(config);
  const std::string csv = emit_table(table, TableFormat::Csv);
  const auto rows = parse_csv_rows(csv);
  REQUIRE(rows.size() == table.rows().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 10);
    CHECK(rows[i][0] == table.rows()[i].distance);
    CHECK(rows[i][1] == table.rows()[i].force.total);
    CHECK(rows[i][2] == table.rows()[i].force.screened);
    CHECK(rows[i][3] == table.rows()[i].force.assisted);
    CHECK(rows[i][8] == table.rows()[i].force.error_estimate);
    CHECK(rows[i][9] == (table.rows()[i].force.converged ? 1.0 : 0.0));
  }
}

TEST_CASE("empty metadata never reaches emission") {
  CHECK_THROWS_AS(ResultTable("", "{}", "a", "b"), ConfigError);
  CHECK_THROWS_AS(ResultTable("atom-force", "", "a", "b"), ConfigError);
}

TEST_CASE("log sweep endpoints match the asymptotic closed forms") {
  const std::string text = R"({
    "atoms": {"probe": {"alpha_e": [{"alpha_0": 1.0, "omega_0": 1.0}]}},
    "mirrors": {"wall": {"kind": "ideal-conducting"}},
    "scenario": "atom-force",
    "geometry": {"mirror2": "wall",
                 "sweep": {"start": 1e-3, "stop": 100.0, "points": 5}},
    "atom": "probe"
  })";
  const ResultTable table = run_sweep(parse_config(text));
  REQUIRE(table.rows().size() == 5);
  constexpr double pi = std::numbers::pi;

  const double z0 = table.rows().front().distance;
  const double short_form = 3.0 / (8.0 * std::pow(z0, 4));
  CHECK(table.rows().front().force.total ==
        doctest::Approx(short_form).epsilon(0.01));

  const double z1 = table.rows().back().distance;
  const double large_form = 3.0 / (2.0 * pi * std::pow(z1, 5));
  CHECK(table.rows().back().force.total ==
        doctest::Approx(large_form).epsilon(0.01));
}

TEST_CASE("SI output rescales distances and forces") {
  const std::string natural_text = replace_all(
      kMinimalAtomForce, "\"scenario\": \"atom-force\"",
      "\"scenario\": \"atom-force\", \"units\": {\"omega_ref\": 1e16, "
      "\"output\": \"natural\"}");
  const std::string si_text = replace_all(natural_text, "\"natural\"", "\"SI\"");

  const ResultTable natural = run_sweep(parse_config(natural_text));
  const ResultTable si = run_sweep(parse_config(si_text));
  REQUIRE(natural.rows().size() == 1);
  REQUIRE(si.rows().size() == 1);

  constexpr double hbar = 1.054571817e-34;
  constexpr double c = 299792458.0;
  const double w = 1e16;
  CHECK(si.rows()[0].distance ==
        doctest::Approx(natural.rows()[0].distance * c / w).epsilon(1e-14));
  CHECK(si.rows()[0].force.total ==
        doctest::Approx(natural.rows()[0].force.total * hbar * w * w / c)
            .epsilon(1e-14));
  CHECK(si.distance_unit() == "m");
  CHECK(si.force_unit() == "N");
}

TEST_CASE("all scenarios dispatch through run_sweep") {
  const std::string slab_text = R"({
    "materials": {
      "metal": {"epsilon": {"model": "plasma", "omega_p": 1.0}},
      "glass": {"epsilon": {"model": "drude-lorentz",
                            "oscillators": [{"omega_p_sq": 2.0, "omega_0": 1.5,
                                             "gamma": 0.1}]}}
    },
    "mirrors": {"wall": {"kind": "stack", "half_space": "metal"}},
    "scenario": "slab-force",
    "geometry": {"mirror1": "wall", "d1": 1.2, "mirror2": "wall",
                 "sweep": {"start": 0.8}},
    "slab": {"medium": "glass", "d_s": 0.3},
    "quadrature": {"rel_tol": 1e-6}
  })";
  const ResultTable slab = run_sweep(parse_config(slab_text));
  CHECK(slab.rows()[0].force.converged);
  CHECK(slab.rows()[0].force.total > 0.0);  // pulled toward the nearer mirror

  const std::string pair_text = R"({
    "atoms": {"a": {"alpha_e": [{"alpha_0": 1.0, "omega_0": 1.0}]}},
    "scenario": "atom-atom",
    "geometry": {"sweep": {"start": 1.0}},
    "pair": {"kind": "embedded-embedded", "a": "a", "b": "a"}
  })";
  const ResultTable pair = run_sweep(parse_config(pair_text));
  CHECK(pair.rows()[0].force.total ==
        doctest::Approx(4.5).epsilon(1e-6));  // London value at r = 1

  const std::string asym_text = R"({
    "atoms": {"a": {"alpha_e": [{"alpha_0": 1.0, "omega_0": 1.0}]}},
    "mirrors": {"wall": {"kind": "ideal-conducting"}},
    "scenario": "asymptotics",
    "geometry": {"mirror2": "wall", "sweep": {"start": 2.0}},
    "atom": "a",
    "asymptotics": {"law": "atom-large"}
  })";
  const ResultTable asym = run_sweep(parse_config(asym_text));
  constexpr double pi = std::numbers::pi;
  CHECK(asym.rows()[0].force.total ==
        doctest::Approx(3.0 / (2.0 * pi * std::pow(2.0, 5))).epsilon(1e-8));

  const std::string medium_atom_text = R"({
    "materials": {
      "metal": {"epsilon": {"model": "plasma", "omega_p": 1.0}},
      "thin_gas": {"epsilon": {"model": "drude-lorentz",
                               "oscillators": [{"omega_p_sq": 1e-4,
                                                "omega_0": 1.0}]}}
    },
    "atoms": {"m": {"alpha_e": [{"alpha_0": 0.01, "omega_0": 1.0}]}},
    "mirrors": {"wall": {"kind": "stack", "half_space": "metal"}},
    "scenario": "medium-atom-force",
    "geometry": {"medium": "thin_gas", "mirror2": "wall",
                 "sweep": {"start": 1.0}},
    "medium_atom": {"atom": "m", "number_density": 7.9577471545947673e-4}
  })";
  const ResultTable ma = run_sweep(parse_config(medium_atom_text));
  CHECK(ma.rows()[0].force.converged);
  CHECK(ma.rows()[0].force.total != 0.0);
}

TEST_CASE("one-row table emits exactly one data row") {
  const ResultTable table = run_sweep(parse_config(kMinimalAtomForce));
  const std::string csv = emit_table(table, TableFormat::Csv);
  int data_rows = -1;  // discount the header row
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++data_rows;
  }
  CHECK(data_rows == 1);
}

TEST_CASE("unknown validation check names are a usage error") {
  std::ostringstream sink;
  try {
    run_acceptance({"london", "nope"}, sink);
    FAIL_CHECK("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("nope") != std::string::npos);
    CHECK(what.find("london") != std::string::npos);  // lists the checks
  }
}

TEST_CASE("human-readable table is aligned and finite-precision") {
  const ResultTable table = run_sweep(parse_config(kMinimalAtomForce));
  const std::string human = emit_table(table, TableFormat::Human);
  CHECK(human.find("distance") != std::string::npos);
  CHECK(human.find("yes") != std::string::npos);
}

TEST_SUITE_END();
