#include "vacforce/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vacforce/errors.hpp"

namespace vacforce {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(path, "unknown key '" + item.key() + "'");
    }
  }
}

double get_number(const json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.contains(key)) fail(path, "missing required key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

double get_positive(const json& obj, const std::string& key,
                    const std::string& path) {
  const double v = get_number(obj, key, path);
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(join(path, key), "must be positive and finite");
  }
  return v;
}

double get_nonnegative(const json& obj, const std::string& key,
                       const std::string& path) {
  const double v = get_number(obj, key, path);
  if (!(v >= 0.0) || !std::isfinite(v)) fail(join(path, key), "must be >= 0");
  return v;
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& path) {
  if (!obj.contains(key)) fail(path, "missing required key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

ResponseModel parse_response_model(const json& v, const std::string& path) {
  expect_object(v, path);
  const std::string model = get_string(v, "model", path);
  try {
    if (model == "constant") {
      check_keys(v, {"model", "value"}, path);
      return ResponseModel::constant(get_number(v, "value", path));
    }
    if (model == "plasma") {
      check_keys(v, {"model", "omega_p"}, path);
      return ResponseModel::plasma(get_nonnegative(v, "omega_p", path));
    }
    if (model == "drude") {
      check_keys(v, {"model", "omega_p", "gamma"}, path);
      return ResponseModel::drude(get_nonnegative(v, "omega_p", path),
                                  get_nonnegative(v, "gamma", path));
    }
    if (model == "drude-lorentz") {
      check_keys(v, {"model", "oscillators"}, path);
      if (!v.contains("oscillators") || !v.at("oscillators").is_array()) {
        fail(join(path, "oscillators"), "expected an array");
      }
      std::vector<ResponseOscillator> oscillators;
      int index = 0;
      for (const json& o : v.at("oscillators")) {
        const std::string opath =
            join(path, "oscillators[" + std::to_string(index++) + "]");
        expect_object(o, opath);
        check_keys(o, {"omega_p_sq", "omega_0", "gamma"}, opath);
        ResponseOscillator osc;
        osc.omega_p_sq = get_nonnegative(o, "omega_p_sq", opath);
        osc.omega_0 = get_nonnegative(o, "omega_0", opath);
        osc.gamma = o.contains("gamma") ? get_nonnegative(o, "gamma", opath) : 0.0;
        oscillators.push_back(osc);
      }
      return ResponseModel::drude_lorentz(std::move(oscillators));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(join(path, "model"),
       "unknown response model '" + model +
           "' (expected constant, plasma, drude, or drude-lorentz)");
}

PolarizabilityModel parse_polarizability(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of oscillators");
  std::vector<PolarizabilityOscillator> oscillators;
  int index = 0;
  for (const json& o : v) {
    const std::string opath = path + "[" + std::to_string(index++) + "]";
    expect_object(o, opath);
    check_keys(o, {"alpha_0", "omega_0"}, opath);
    PolarizabilityOscillator osc;
    osc.alpha_0 = get_nonnegative(o, "alpha_0", opath);
    osc.omega_0 = get_positive(o, "omega_0", opath);
    oscillators.push_back(osc);
  }
  try {
    return PolarizabilityModel(std::move(oscillators));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

struct Catalogs {
  std::map<std::string, Medium> media;
  std::map<std::string, AtomSpecies> atoms;
  std::map<std::string, Mirror> mirrors;

  const Medium& medium(const std::string& name, const std::string& path) const {
    const auto it = media.find(name);
    if (it == media.end()) fail(path, "undefined material '" + name + "'");
    return it->second;
  }
  const AtomSpecies& atom(const std::string& name, const std::string& path) const {
    const auto it = atoms.find(name);
    if (it == atoms.end()) fail(path, "undefined atom '" + name + "'");
    return it->second;
  }
  const Mirror& mirror(const std::string& name, const std::string& path) const {
    const auto it = mirrors.find(name);
    if (it == mirrors.end()) fail(path, "undefined mirror '" + name + "'");
    return it->second;
  }
};

ScenarioKind parse_kind(const std::string& name, const std::string& path) {
  if (name == "slab-force") return ScenarioKind::SlabForce;
  if (name == "atom-force") return ScenarioKind::AtomForce;
  if (name == "medium-atom-force") return ScenarioKind::MediumAtomForce;
  if (name == "atom-atom") return ScenarioKind::AtomAtom;
  if (name == "asymptotics") return ScenarioKind::Asymptotics;
  fail(path, "unknown scenario '" + name +
                 "' (expected slab-force, atom-force, medium-atom-force, "
                 "atom-atom, or asymptotics)");
}

std::string kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::SlabForce: return "slab-force";
    case ScenarioKind::AtomForce: return "atom-force";
    case ScenarioKind::MediumAtomForce: return "medium-atom-force";
    case ScenarioKind::AtomAtom: return "atom-atom";
    case ScenarioKind::Asymptotics: return "asymptotics";
  }
  return "?";
}

AsymptoticLaw parse_law(const std::string& name, const std::string& path) {
  if (name == "atom-short") return AsymptoticLaw::AtomShort;
  if (name == "atom-large") return AsymptoticLaw::AtomLarge;
  if (name == "medium-atom-short") return AsymptoticLaw::MediumAtomShort;
  if (name == "medium-atom-large") return AsymptoticLaw::MediumAtomLarge;
  fail(path, "unknown asymptotic law '" + name +
                 "' (expected atom-short, atom-large, medium-atom-short, or "
                 "medium-atom-large)");
}

void require_block(const json& doc, const std::string& key, ScenarioKind kind) {
  if (!doc.contains(key)) {
    fail(key, "required by scenario '" + kind_name(kind) + "'");
  }
}

void forbid_block(const json& doc, const std::string& key, ScenarioKind kind) {
  if (doc.contains(key)) {
    fail(key, "not used by scenario '" + kind_name(kind) + "'");
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_object(doc, "(document)");
  check_keys(doc,
             {"units", "quadrature", "materials", "atoms", "mirrors", "scenario",
              "formulation", "geometry", "atom", "slab", "medium_atom", "pair",
              "asymptotics"},
             "(document)");

  ScenarioConfig config;

  // units
  if (!doc.contains("units")) doc["units"] = json::object();
  {
    json& units = doc["units"];
    expect_object(units, "units");
    check_keys(units, {"omega_ref", "output"}, "units");
    if (!units.contains("omega_ref")) units["omega_ref"] = 1.0;
    if (!units.contains("output")) units["output"] = "natural";
    config.omega_ref = get_positive(units, "omega_ref", "units");
    const std::string output = get_string(units, "output", "units");
    if (output == "natural") {
      config.output = OutputUnits::Natural;
    } else if (output == "SI") {
      config.output = OutputUnits::SI;
    } else {
      fail("units.output", "expected 'natural' or 'SI'");
    }
  }

  // quadrature overrides
  if (!doc.contains("quadrature")) doc["quadrature"] = json::object();
  {
    json& quad = doc["quadrature"];
    expect_object(quad, "quadrature");
    check_keys(quad, {"rel_tol", "abs_tol", "max_evaluations"}, "quadrature");
    if (!quad.contains("rel_tol")) quad["rel_tol"] = config.quadrature.rel_tol;
    if (!quad.contains("abs_tol")) quad["abs_tol"] = config.quadrature.abs_tol;
    if (!quad.contains("max_evaluations")) {
      quad["max_evaluations"] = config.quadrature.max_evaluations;
    }
    config.quadrature.rel_tol = get_nonnegative(quad, "rel_tol", "quadrature");
    config.quadrature.abs_tol = get_nonnegative(quad, "abs_tol", "quadrature");
    const double max_evals = get_number(quad, "max_evaluations", "quadrature");
    if (!(max_evals >= 15.0)) {
      fail("quadrature.max_evaluations", "must be at least 15");
    }
    config.quadrature.max_evaluations = static_cast<long>(max_evals);
    if (!(config.quadrature.rel_tol > 0.0) && !(config.quadrature.abs_tol > 0.0)) {
      fail("quadrature", "rel_tol or abs_tol must be positive");
    }
  }

  // catalogs
  Catalogs catalogs;
  catalogs.media.emplace("vacuum", Medium::vacuum());
  if (!doc.contains("materials")) doc["materials"] = json::object();
  {
    json& materials = doc["materials"];
    expect_object(materials, "materials");
    for (auto& item : materials.items()) {
      const std::string path = join("materials", item.key());
      if (item.key() == "vacuum") fail(path, "'vacuum' is a builtin name");
      json& entry = item.value();
      expect_object(entry, path);
      check_keys(entry, {"epsilon", "mu"}, path);
      if (!entry.contains("epsilon")) fail(path, "missing required key 'epsilon'");
      if (!entry.contains("mu")) {
        entry["mu"] = json{{"model", "constant"}, {"value", 1.0}};
      }
      Medium medium;
      medium.epsilon = parse_response_model(entry["epsilon"], join(path, "epsilon"));
      medium.mu = parse_response_model(entry["mu"], join(path, "mu"));
      catalogs.media.emplace(item.key(), std::move(medium));
    }
  }

  if (!doc.contains("atoms")) doc["atoms"] = json::object();
  {
    json& atoms = doc["atoms"];
    expect_object(atoms, "atoms");
    for (auto& item : atoms.items()) {
      const std::string path = join("atoms", item.key());
      json& entry = item.value();
      expect_object(entry, path);
      check_keys(entry, {"alpha_e", "alpha_m"}, path);
      if (!entry.contains("alpha_e")) entry["alpha_e"] = json::array();
      if (!entry.contains("alpha_m")) entry["alpha_m"] = json::array();
      AtomSpecies species;
      species.alpha_e = parse_polarizability(entry["alpha_e"], join(path, "alpha_e"));
      species.alpha_m = parse_polarizability(entry["alpha_m"], join(path, "alpha_m"));
      catalogs.atoms.emplace(item.key(), std::move(species));
    }
  }

  if (!doc.contains("mirrors")) doc["mirrors"] = json::object();
  {
    json& mirrors = doc["mirrors"];
    expect_object(mirrors, "mirrors");
    for (auto& item : mirrors.items()) {
      const std::string path = join("mirrors", item.key());
      json& entry = item.value();
      expect_object(entry, path);
      const std::string kind = get_string(entry, "kind", path);
      if (kind == "ideal-conducting") {
        check_keys(entry, {"kind"}, path);
        catalogs.mirrors.emplace(item.key(), Mirror::ideal_conducting());
      } else if (kind == "ideal-permeable") {
        check_keys(entry, {"kind"}, path);
        catalogs.mirrors.emplace(item.key(), Mirror::ideal_permeable());
      } else if (kind == "stack") {
        check_keys(entry, {"kind", "layers", "half_space"}, path);
        if (!entry.contains("layers")) entry["layers"] = json::array();
        if (!entry["layers"].is_array()) {
          fail(join(path, "layers"), "expected an array");
        }
        std::vector<Layer> layers;
        int index = 0;
        for (const json& l : entry["layers"]) {
          const std::string lpath =
              join(path, "layers[" + std::to_string(index++) + "]");
          expect_object(l, lpath);
          check_keys(l, {"medium", "thickness"}, lpath);
          Layer layer;
          layer.medium = catalogs.medium(get_string(l, "medium", lpath), lpath);
          layer.thickness = get_positive(l, "thickness", lpath);
          layers.push_back(std::move(layer));
        }
        const std::string half = get_string(entry, "half_space", path);
        catalogs.mirrors.emplace(
            item.key(),
            Mirror::stack(std::move(layers),
                          catalogs.medium(half, join(path, "half_space"))));
      } else {
        fail(join(path, "kind"),
             "unknown mirror kind '" + kind +
                 "' (expected ideal-conducting, ideal-permeable, or stack)");
      }
    }
  }

  // scenario selection
  config.kind = parse_kind(get_string(doc, "scenario", "(document)"), "scenario");
  if (!doc.contains("formulation")) doc["formulation"] = "lorentz";
  {
    const std::string f = get_string(doc, "formulation", "(document)");
    if (f == "lorentz") {
      config.formulation = Formulation::Lorentz;
    } else if (f == "minkowski") {
      config.formulation = Formulation::Minkowski;
    } else {
      fail("formulation", "expected 'lorentz' or 'minkowski'");
    }
  }

  // geometry
  require_block(doc, "geometry", config.kind);
  {
    json& geometry = doc["geometry"];
    expect_object(geometry, "geometry");
    check_keys(geometry, {"medium", "mirror1", "d1", "mirror2", "sweep"},
               "geometry");
    if (config.kind == ScenarioKind::AtomAtom) {
      for (const char* key : {"medium", "mirror1", "d1", "mirror2"}) {
        if (geometry.contains(key)) {
          fail(join("geometry", key), "not used by scenario 'atom-atom'");
        }
      }
    } else {
      if (!geometry.contains("medium")) geometry["medium"] = "vacuum";
      config.medium = catalogs.medium(get_string(geometry, "medium", "geometry"),
                                      "geometry.medium");
      if (geometry.contains("mirror1") != geometry.contains("d1")) {
        fail("geometry", "mirror1 and d1 must be given together");
      }
      if (geometry.contains("mirror1")) {
        config.mirror1 = catalogs.mirror(
            get_string(geometry, "mirror1", "geometry"), "geometry.mirror1");
        config.d1 = get_positive(geometry, "d1", "geometry");
      }
      config.mirror2 = catalogs.mirror(
          get_string(geometry, "mirror2", "geometry"), "geometry.mirror2");
    }

    if (!geometry.contains("sweep")) fail("geometry", "missing required key 'sweep'");
    json& sweep = geometry["sweep"];
    expect_object(sweep, "geometry.sweep");
    check_keys(sweep, {"start", "stop", "points", "spacing"}, "geometry.sweep");
    config.sweep.start = get_positive(sweep, "start", "geometry.sweep");
    if (!sweep.contains("stop")) sweep["stop"] = sweep["start"];
    config.sweep.stop = get_positive(sweep, "stop", "geometry.sweep");
    if (!sweep.contains("points")) sweep["points"] = 1;
    const double points = get_number(sweep, "points", "geometry.sweep");
    if (!(points >= 1.0) || points != std::floor(points)) {
      fail("geometry.sweep.points", "must be a positive integer");
    }
    config.sweep.points = static_cast<int>(points);
    if (config.sweep.stop < config.sweep.start) {
      fail("geometry.sweep", "stop must be >= start");
    }
    if (config.sweep.points > 1 && config.sweep.stop == config.sweep.start) {
      fail("geometry.sweep", "a multi-point sweep needs stop > start");
    }
    if (!sweep.contains("spacing")) sweep["spacing"] = "log";
    const std::string spacing = get_string(sweep, "spacing", "geometry.sweep");
    if (spacing == "log") {
      config.sweep.log_spacing = true;
    } else if (spacing == "linear") {
      config.sweep.log_spacing = false;
    } else {
      fail("geometry.sweep.spacing", "expected 'log' or 'linear'");
    }
  }

  // scenario payloads
  switch (config.kind) {
    case ScenarioKind::SlabForce: {
      require_block(doc, "slab", config.kind);
      forbid_block(doc, "atom", config.kind);
      forbid_block(doc, "medium_atom", config.kind);
      forbid_block(doc, "pair", config.kind);
      forbid_block(doc, "asymptotics", config.kind);
      if (!config.mirror1) fail("geometry", "slab-force needs mirror1 and d1");
      json& slab = doc["slab"];
      expect_object(slab, "slab");
      check_keys(slab, {"medium", "d_s", "dopant"}, "slab");
      SlabConfig sc;
      sc.medium = catalogs.medium(get_string(slab, "medium", "slab"), "slab.medium");
      sc.d_s = get_positive(slab, "d_s", "slab");
      if (slab.contains("dopant")) {
        json& dop = slab["dopant"];
        expect_object(dop, "slab.dopant");
        check_keys(dop, {"atom", "number_density"}, "slab.dopant");
        Dopant dopant;
        dopant.species =
            catalogs.atom(get_string(dop, "atom", "slab.dopant"), "slab.dopant.atom");
        dopant.number_density = get_nonnegative(dop, "number_density", "slab.dopant");
        sc.dopant = std::move(dopant);
      }
      config.slab = std::move(sc);
      break;
    }
    case ScenarioKind::AtomForce: {
      require_block(doc, "atom", config.kind);
      forbid_block(doc, "slab", config.kind);
      forbid_block(doc, "medium_atom", config.kind);
      forbid_block(doc, "pair", config.kind);
      forbid_block(doc, "asymptotics", config.kind);
      config.atom = catalogs.atom(get_string(doc, "atom", "(document)"), "atom");
      break;
    }
    case ScenarioKind::MediumAtomForce: {
      require_block(doc, "medium_atom", config.kind);
      forbid_block(doc, "atom", config.kind);
      forbid_block(doc, "slab", config.kind);
      forbid_block(doc, "pair", config.kind);
      forbid_block(doc, "asymptotics", config.kind);
      json& ma = doc["medium_atom"];
      expect_object(ma, "medium_atom");
      check_keys(ma, {"atom", "number_density"}, "medium_atom");
      MediumAtom medium_atom;
      medium_atom.species =
          catalogs.atom(get_string(ma, "atom", "medium_atom"), "medium_atom.atom");
      medium_atom.number_density = get_positive(ma, "number_density", "medium_atom");
      config.medium_atom = std::move(medium_atom);
      break;
    }
    case ScenarioKind::AtomAtom: {
      require_block(doc, "pair", config.kind);
      forbid_block(doc, "atom", config.kind);
      forbid_block(doc, "slab", config.kind);
      forbid_block(doc, "medium_atom", config.kind);
      forbid_block(doc, "asymptotics", config.kind);
      json& pair = doc["pair"];
      expect_object(pair, "pair");
      const std::string kind = get_string(pair, "kind", "pair");
      PairSpec ps;
      if (kind == "embedded-embedded") {
        check_keys(pair, {"kind", "a", "b", "host"}, "pair");
        if (!pair.contains("host")) pair["host"] = "vacuum";
        ps.a = catalogs.atom(get_string(pair, "a", "pair"), "pair.a");
        ps.b = catalogs.atom(get_string(pair, "b", "pair"), "pair.b");
        ps.host = catalogs.medium(get_string(pair, "host", "pair"), "pair.host");
      } else if (kind == "medium-embedded") {
        check_keys(pair, {"kind", "medium_atom", "embedded"}, "pair");
        ps.medium_embedded = true;
        ps.a = catalogs.atom(get_string(pair, "medium_atom", "pair"),
                             "pair.medium_atom");
        ps.b = catalogs.atom(get_string(pair, "embedded", "pair"), "pair.embedded");
      } else {
        fail("pair.kind",
             "expected 'embedded-embedded' or 'medium-embedded'");
      }
      config.pair = std::move(ps);
      break;
    }
    case ScenarioKind::Asymptotics: {
      require_block(doc, "asymptotics", config.kind);
      forbid_block(doc, "slab", config.kind);
      forbid_block(doc, "pair", config.kind);
      if (config.mirror1) {
        fail("geometry.mirror1", "asymptotic laws are semi-infinite; remove mirror1");
      }
      json& asym = doc["asymptotics"];
      expect_object(asym, "asymptotics");
      check_keys(asym, {"law"}, "asymptotics");
      config.law = parse_law(get_string(asym, "law", "asymptotics"),
                             "asymptotics.law");
      const bool atom_law = config.law == AsymptoticLaw::AtomShort ||
                            config.law == AsymptoticLaw::AtomLarge;
      if (atom_law) {
        require_block(doc, "atom", config.kind);
        forbid_block(doc, "medium_atom", config.kind);
        config.atom = catalogs.atom(get_string(doc, "atom", "(document)"), "atom");
      } else {
        require_block(doc, "medium_atom", config.kind);
        forbid_block(doc, "atom", config.kind);
        json& ma = doc["medium_atom"];
        expect_object(ma, "medium_atom");
        check_keys(ma, {"atom", "number_density"}, "medium_atom");
        MediumAtom medium_atom;
        medium_atom.species =
            catalogs.atom(get_string(ma, "atom", "medium_atom"), "medium_atom.atom");
        medium_atom.number_density =
            get_positive(ma, "number_density", "medium_atom");
        config.medium_atom = std::move(medium_atom);
        if (!config.medium.is_vacuum()) {
          fail("geometry.medium",
               "medium-atom asymptotics assume a dilute cavity; use 'vacuum'");
        }
      }
      break;
    }
  }

  // The Minkowski formulation is defined for the embedded-atom force and
  // its large-distance limit only.
  if (config.formulation == Formulation::Minkowski) {
    const bool allowed =
        config.kind == ScenarioKind::AtomForce ||
        (config.kind == ScenarioKind::Asymptotics &&
         config.law == AsymptoticLaw::AtomLarge);
    if (!allowed) {
      fail("formulation",
           "'minkowski' applies only to atom-force and asymptotics/atom-large");
    }
  }

  config.resolved_json = doc.dump();
  return config;
}

namespace {

std::vector<double> sweep_values(const SweepSpec& sweep) {
  std::vector<double> values;
  values.reserve(sweep.points);
  if (sweep.points == 1) {
    values.push_back(sweep.start);
    return values;
  }
  for (int i = 0; i < sweep.points; ++i) {
    const double t = static_cast<double>(i) / (sweep.points - 1);
    if (sweep.log_spacing) {
      values.push_back(std::exp(std::log(sweep.start) +
                                t * (std::log(sweep.stop) - std::log(sweep.start))));
    } else {
      values.push_back(sweep.start + t * (sweep.stop - sweep.start));
    }
  }
  return values;
}

CavityConfig make_cavity(const ScenarioConfig& config, double d2) {
  if (config.mirror1) {
    return CavityConfig::two_mirror(config.medium, *config.mirror1, *config.d1,
                                    *config.mirror2, d2);
  }
  return CavityConfig::semi_infinite(config.medium, *config.mirror2, d2);
}

ForceResult scalar_result(double value) {
  ForceResult f;
  f.total = value;
  f.screened = value;
  f.screened_parts = {value, 0.0};
  f.converged = true;
  return f;
}

ForceResult evaluate_point(const ScenarioConfig& config, double x) {
  switch (config.kind) {
    case ScenarioKind::SlabForce:
      return slab_force(make_cavity(config, x), *config.slab, config.quadrature);
    case ScenarioKind::AtomForce:
      return atom_force(make_cavity(config, x), *config.atom, config.formulation,
                        config.quadrature);
    case ScenarioKind::MediumAtomForce:
      return medium_atom_force(make_cavity(config, x), *config.medium_atom,
                               config.quadrature);
    case ScenarioKind::AtomAtom: {
      const PairSpec& pair = *config.pair;
      const double value =
          pair.medium_embedded
              ? atom_atom_medium_embedded(pair.a, pair.b, x, config.quadrature)
              : atom_atom_embedded(pair.a, pair.b, pair.host, x,
                                   config.quadrature);
      return scalar_result(value);
    }
    case ScenarioKind::Asymptotics: {
      switch (*config.law) {
        case AsymptoticLaw::AtomShort:
          return scalar_result(atom_force_short(*config.mirror2, config.medium,
                                                *config.atom, x,
                                                config.quadrature));
        case AsymptoticLaw::AtomLarge:
          return scalar_result(atom_force_large(*config.mirror2, config.medium,
                                                *config.atom, x,
                                                config.formulation,
                                                config.quadrature));
        case AsymptoticLaw::MediumAtomShort:
          return scalar_result(
              medium_atom_asymptotics(*config.mirror2, *config.medium_atom, x,
                                      AsymptoticRegime::Short, config.quadrature));
        case AsymptoticLaw::MediumAtomLarge:
          return scalar_result(
              medium_atom_asymptotics(*config.mirror2, *config.medium_atom, x,
                                      AsymptoticRegime::Large, config.quadrature));
      }
      break;
    }
  }
  throw std::logic_error("unhandled scenario kind");
}

void scale_force(ForceResult& f, double factor) {
  f.total *= factor;
  f.screened *= factor;
  f.assisted *= factor;
  f.screened_parts.tm *= factor;
  f.screened_parts.te *= factor;
  f.assisted_parts.tm *= factor;
  f.assisted_parts.te *= factor;
  f.error_estimate *= std::abs(factor);
}

}  // namespace

ResultTable run_sweep(const ScenarioConfig& config) {
  constexpr double kHbar = 1.054571817e-34;  // J s
  constexpr double kSpeedOfLight = 299792458.0;  // m/s

  const bool per_area = config.kind == ScenarioKind::SlabForce;
  double distance_factor = 1.0;
  double force_factor = 1.0;
  std::string distance_unit = "c/omega_ref";
  std::string force_unit = per_area ? "hbar omega_ref^4/c^3 (per unit area)"
                                    : "hbar omega_ref^2/c (per atom)";
  if (config.output == OutputUnits::SI) {
    const double w = config.omega_ref;
    distance_factor = kSpeedOfLight / w;
    distance_unit = "m";
    if (per_area) {
      force_factor = kHbar * w * w * w * w /
                     (kSpeedOfLight * kSpeedOfLight * kSpeedOfLight);
      force_unit = "N/m^2";
    } else {
      force_factor = kHbar * w * w / kSpeedOfLight;
      force_unit = "N";
    }
  }

  ResultTable table(kind_name(config.kind), config.resolved_json, distance_unit,
                    force_unit);
  for (const double x : sweep_values(config.sweep)) {
    ResultRow row;
    row.distance = x * distance_factor;
    try {
      ForceResult f = evaluate_point(config, x);
      scale_force(f, force_factor);
      row.force = f;
    } catch (const NonConvergedError&) {
      row.force = ForceResult{};
      row.force.total = std::numeric_limits<double>::quiet_NaN();
      row.force.converged = false;
    }
    table.add_row(row);
  }
  return table;
}

std::string config_schema_text() {
  return R"(vacforce scenario configuration (JSON, one document per run)

All quantities are in natural units: frequencies in omega_ref, lengths in
c/omega_ref, polarizabilities in (c/omega_ref)^3. units.omega_ref (rad/s)
is used only when output = "SI".

{
  "units":      { "omega_ref": <rad/s, default 1.0>,
                  "output": "natural" | "SI" (default "natural") },
  "quadrature": { "rel_tol": <default 1e-8>, "abs_tol": <default 0>,
                  "max_evaluations": <per 1D integral, default 200000> },

  "materials": {                              -- named media ("vacuum" is builtin)
    "<name>": { "epsilon": <response>, "mu": <response, default constant 1> }
  },
  <response> = { "model": "constant", "value": v >= 1 }
             | { "model": "plasma", "omega_p": w }
             | { "model": "drude", "omega_p": w, "gamma": g }
             | { "model": "drude-lorentz",
                 "oscillators": [ { "omega_p_sq": s, "omega_0": w, "gamma": g } ] },

  "atoms": {                                  -- named polarizability models
    "<name>": { "alpha_e": [ { "alpha_0": a, "omega_0": w } ],
                "alpha_m": [ ... ] }          -- either list may be empty
  },

  "mirrors": {
    "<name>": { "kind": "ideal-conducting" }
            | { "kind": "ideal-permeable" }
            | { "kind": "stack",
                "layers": [ { "medium": "<material>", "thickness": t } ],
                "half_space": "<material>" }
  },

  "scenario": "slab-force" | "atom-force" | "medium-atom-force"
            | "atom-atom" | "asymptotics",
  "formulation": "lorentz" (default) | "minkowski"
                 -- minkowski only for atom-force and asymptotics/atom-large,

  "geometry": {
    "medium": "<material>" (default "vacuum"),
    "mirror1": "<mirror>", "d1": <length>,    -- optional pair; omit for a
                                              -- semi-infinite cavity
    "mirror2": "<mirror>",                    -- required except atom-atom
    "sweep": { "start": x0, "stop": x1, "points": n,
               "spacing": "log" (default) | "linear" }
               -- sweeps d2 (the atom/slab to mirror-2 distance), or the
               -- atom separation r for atom-atom
  },

  -- exactly one scenario payload:
  "slab":        { "medium": "<material>", "d_s": t,
                   "dopant": { "atom": "<atom>", "number_density": N } },
  "atom":        "<atom>",
  "medium_atom": { "atom": "<atom>", "number_density": N },
  "pair":        { "kind": "embedded-embedded", "a": "<atom>", "b": "<atom>",
                   "host": "<material>" }
               | { "kind": "medium-embedded", "medium_atom": "<atom>",
                   "embedded": "<atom>" },
  "asymptotics": { "law": "atom-short" | "atom-large"
                        | "medium-atom-short" | "medium-atom-large" }
}

Output columns: distance, total, screened, assisted, screened_tm,
screened_te, assisted_tm, assisted_te, error_estimate, converged.
Positive force points from mirror 1 toward mirror 2 (toward the mirror
for a semi-infinite cavity).
)";
}

}  // namespace vacforce
