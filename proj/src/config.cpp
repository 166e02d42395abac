#include "hankel_spectra/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "hankel_spectra/conformal.hpp"
#include "hankel_spectra/errors.hpp"

namespace hankel::cli {

namespace {

using Complex = std::complex<double>;

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw ConfigParseError(where + ": " + what);
}

void allow_keys(const YAML::Node &node, const std::string &where,
                std::initializer_list<const char *> keys) {
  if (!node.IsMap())
    fail(where, "expected a mapping");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto &kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key))
      fail(where, "unknown key '" + key + "'");
  }
}

double as_double(const YAML::Node &n, const std::string &where) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception &) {
    fail(where, "expected a number");
  }
}

std::string as_string(const YAML::Node &n, const std::string &where) {
  if (!n.IsScalar())
    fail(where, "expected a string");
  return n.as<std::string>();
}

bool as_bool(const YAML::Node &n, const std::string &where) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception &) {
    fail(where, "expected true or false");
  }
}

std::size_t as_size(const YAML::Node &n, const std::string &where) {
  const double v = as_double(n, where);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
    fail(where, "expected a positive integer");
  return static_cast<std::size_t>(v);
}

double get_double(const YAML::Node &parent, const char *key, double fallback,
                  const std::string &where) {
  const auto n = parent[key];
  return n ? as_double(n, where + "." + key) : fallback;
}

Complex as_complex(const YAML::Node &n, const std::string &where) {
  if (n.IsScalar())
    return {as_double(n, where), 0.0};
  if (n.IsSequence()) {
    if (n.size() != 2)
      fail(where, "complex values are [re, im]");
    return {as_double(n[0], where), as_double(n[1], where)};
  }
  if (n.IsMap()) {
    allow_keys(n, where, {"re", "im"});
    return {get_double(n, "re", 0.0, where), get_double(n, "im", 0.0, where)};
  }
  fail(where, "expected a complex value");
}

Location parse_location(const YAML::Node &n, symbols::Representation rep,
                        const std::string &where) {
  const bool circle = rep == symbols::Representation::Circle;
  if (n.IsMap()) {
    if (n["angle"]) {
      allow_keys(n, where, {"angle"});
      if (!circle)
        fail(where, "angle locations need the circle representation");
      return CirclePoint::at(as_double(n["angle"], where + ".angle"));
    }
    if (n["nu"]) {
      allow_keys(n, where, {"nu"});
      if (circle)
        fail(where, "nu locations need the line representation");
      return LinePoint::finite(as_double(n["nu"], where + ".nu"));
    }
    fail(where, "location map needs 'angle' or 'nu'");
  }
  if (!n.IsScalar())
    fail(where, "invalid location");
  const auto text = n.as<std::string>();
  if (text == "plus_one" || text == "minus_one") {
    if (!circle)
      fail(where, text + " needs the circle representation");
    return text == "plus_one" ? CirclePoint::plus_one() : CirclePoint::minus_one();
  }
  if (text == "zero" || text == "infinity") {
    if (circle)
      fail(where, text + " needs the line representation");
    return text == "zero" ? LinePoint::finite(0.0) : LinePoint::infinity();
  }
  const double v = as_double(n, where);
  if (circle)
    return CirclePoint::at(v);
  return LinePoint::finite(v);
}

models::ModelPreset parse_preset_params(const YAML::Node &n, const std::string &name,
                                        const std::string &where) {
  models::ModelPreset p;
  try {
    p = models::preset_from_name(name);
  } catch (const Error &e) {
    fail(where, e.what());
  }
  p.theta = get_double(n, "theta", p.theta, where);
  p.phi = get_double(n, "phi", p.phi, where);
  p.b = get_double(n, "b", p.b, where);
  try {
    models::check_preset(p);
  } catch (const Error &e) {
    fail(where, e.what());
  }
  return p;
}

void parse_symbol(const YAML::Node &n, RunConfig &cfg) {
  const std::string where = "symbol";
  allow_keys(n, where,
             {"representation", "beta0", "preset", "theta", "phi", "b", "scale",
              "tail", "jumps", "conformal_alpha"});
  symbols::SymbolSpec spec;
  if (n["representation"]) {
    const auto rep = as_string(n["representation"], where + ".representation");
    if (rep == "circle")
      spec.representation = symbols::Representation::Circle;
    else if (rep == "line")
      spec.representation = symbols::Representation::Line;
    else
      fail(where, "representation must be circle or line");
  }
  spec.beta0 = get_double(n, "beta0", spec.beta0, where);
  std::vector<double> tail;
  if (const auto t = n["tail"]) {
    if (!t.IsSequence())
      fail(where + ".tail", "expected a list");
    for (std::size_t i = 0; i < t.size(); ++i)
      tail.push_back(as_double(t[i], where + ".tail"));
  }
  if (n["preset"]) {
    const auto preset =
        parse_preset_params(n, as_string(n["preset"], where + ".preset"), where);
    const double scale = get_double(n, "scale", 1.0, where);
    const bool line = models::is_line_preset(preset);
    if (n["representation"] &&
        line != (spec.representation == symbols::Representation::Line))
      fail(where, "preset does not match the representation");
    spec.representation =
        line ? symbols::Representation::Line : symbols::Representation::Circle;
    spec.body = symbols::PresetBody{preset, scale, tail};
  } else {
    spec.body = symbols::JumpModelBody{tail};
  }
  if (const auto jumps = n["jumps"]) {
    if (!jumps.IsSequence())
      fail(where + ".jumps", "expected a list");
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      const std::string w = where + ".jumps[" + std::to_string(i) + "]";
      allow_keys(jumps[i], w, {"location", "value"});
      if (!jumps[i]["location"] || !jumps[i]["value"])
        fail(w, "needs location and value");
      spec.jumps.push_back({parse_location(jumps[i]["location"], spec.representation, w),
                            as_complex(jumps[i]["value"], w + ".value")});
    }
  }
  if (std::holds_alternative<symbols::PresetBody>(spec.body) && !spec.jumps.empty())
    fail(where, "preset symbols take their jumps from the preset");
  if (n["conformal_alpha"]) {
    const double alpha = as_double(n["conformal_alpha"], where + ".conformal_alpha");
    spec = symbols::conformal_transform_symbol(spec, alpha);
  }
  cfg.symbol = spec;
  cfg.input = InputKind::Symbol;
}

void parse_model(const YAML::Node &n, RunConfig &cfg) {
  const std::string where = "model";
  if (!n.IsMap() || !n["kind"])
    fail(where, "needs kind: coefficient | kernel");
  const auto kind = as_string(n["kind"], where + ".kind");
  if (kind == "coefficient") {
    allow_keys(n, where, {"kind", "kappa_plus", "kappa_minus", "alpha0", "terms"});
    auto &m = cfg.coefficient_model;
    m.kappa_plus = get_double(n, "kappa_plus", 0.0, where);
    m.kappa_minus = get_double(n, "kappa_minus", 0.0, where);
    m.alpha0 = get_double(n, "alpha0", m.alpha0, where);
    if (const auto terms = n["terms"]) {
      if (!terms.IsSequence())
        fail(where + ".terms", "expected a list");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string w = where + ".terms[" + std::to_string(i) + "]";
        allow_keys(terms[i], w, {"kappa", "theta", "phi"});
        m.terms.push_back({get_double(terms[i], "kappa", 0.0, w),
                           get_double(terms[i], "theta", 0.0, w),
                           get_double(terms[i], "phi", 0.0, w)});
      }
    }
    cfg.input = InputKind::CoefficientModel;
  } else if (kind == "kernel") {
    allow_keys(n, where,
               {"kind", "h0", "h_infinity", "alpha0", "regular_at_zero", "terms"});
    auto &m = cfg.kernel_model;
    m.h0 = get_double(n, "h0", 0.0, where);
    m.h_infinity = get_double(n, "h_infinity", 0.0, where);
    m.alpha0 = get_double(n, "alpha0", m.alpha0, where);
    if (n["regular_at_zero"])
      m.regular_at_zero = as_bool(n["regular_at_zero"], where + ".regular_at_zero");
    if (const auto terms = n["terms"]) {
      if (!terms.IsSequence())
        fail(where + ".terms", "expected a list");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string w = where + ".terms[" + std::to_string(i) + "]";
        allow_keys(terms[i], w, {"h", "b", "phi"});
        m.terms.push_back({get_double(terms[i], "h", 0.0, w),
                           get_double(terms[i], "b", 0.0, w),
                           get_double(terms[i], "phi", 0.0, w)});
      }
    }
    cfg.input = InputKind::KernelModel;
  } else {
    fail(where, "kind must be coefficient or kernel");
  }
}

void parse_preset(const YAML::Node &n, RunConfig &cfg) {
  const std::string where = "preset";
  allow_keys(n, where, {"name", "theta", "phi", "b", "scale"});
  if (!n["name"])
    fail(where, "needs a name");
  cfg.preset.preset = parse_preset_params(n, as_string(n["name"], where + ".name"), where);
  cfg.preset.scale = get_double(n, "scale", 1.0, where);
  cfg.input = InputKind::Preset;
}

void parse_probe(const YAML::Node &n, RunConfig &cfg) {
  const std::string where = "probe";
  allow_keys(n, where,
             {"n", "z", "lambda", "eta", "weights", "iterations", "ceiling"});
  auto &p = cfg.probe;
  if (n["n"])
    p.n = as_size(n["n"], where + ".n");
  if (n["iterations"])
    p.iterations = as_size(n["iterations"], where + ".iterations");
  if (n["ceiling"])
    p.ceiling = as_double(n["ceiling"], where + ".ceiling");
  if (const auto z = n["z"]) {
    if (!z.IsSequence())
      fail(where + ".z", "expected a list of [re, im]");
    for (std::size_t i = 0; i < z.size(); ++i)
      p.z.push_back(as_complex(z[i], where + ".z"));
  }
  if (n["eta"]) {
    if (!n["lambda"])
      fail(where, "eta needs lambda");
    const double lambda = as_double(n["lambda"], where + ".lambda");
    const auto eta = n["eta"];
    if (!eta.IsSequence())
      fail(where + ".eta", "expected a list");
    for (std::size_t i = 0; i < eta.size(); ++i)
      p.z.emplace_back(lambda, as_double(eta[i], where + ".eta"));
  } else if (n["lambda"]) {
    fail(where, "lambda needs eta");
  }
  if (const auto w = n["weights"]) {
    allow_keys(w, where + ".weights", {"locations", "beta"});
    p.weight.beta = get_double(w, "beta", p.weight.beta, where + ".weights");
    if (!(p.weight.beta > 0.0))
      fail(where + ".weights.beta", "must be positive");
    if (const auto locs = w["locations"]) {
      if (!locs.IsSequence())
        fail(where + ".weights.locations", "expected a list");
      for (std::size_t i = 0; i < locs.size(); ++i) {
        const auto loc = parse_location(locs[i], symbols::Representation::Circle,
                                        where + ".weights.locations");
        p.weight.locations.push_back(std::get<CirclePoint>(loc));
      }
    }
  }
}

void parse_tolerances(const YAML::Node &n, RunConfig &cfg) {
  const std::string where = "tolerances";
  if (!n.IsMap())
    fail(where, "expected a mapping");
  auto &t = cfg.tolerances;
  for (const auto &kv : n) {
    const auto key = kv.first.as<std::string>();
    const std::string w = where + "." + key;
    if (key == "leak")
      t.leak = as_double(kv.second, w);
    else if (key == "leak_stability")
      t.leak_stability = as_double(kv.second, w);
    else if (key == "max_leaks")
      t.max_leaks = as_size(kv.second, w);
    else if (default_check_tolerances().count(key))
      t.checks[key] = as_double(kv.second, w);
    else
      fail(where, "unknown tolerance '" + key + "'");
  }
}

} // namespace

const char *mode_name(Mode mode) {
  switch (mode) {
  case Mode::Predict:
    return "predict";
  case Mode::Spectrum:
    return "spectrum";
  case Mode::VerifyModels:
    return "verify-models";
  case Mode::Convert:
    return "convert";
  case Mode::ProbeResolvent:
    return "probe-resolvent";
  }
  return "?";
}

Mode mode_from_name(const std::string &name) {
  for (Mode m : {Mode::Predict, Mode::Spectrum, Mode::VerifyModels, Mode::Convert,
                 Mode::ProbeResolvent})
    if (name == mode_name(m))
      return m;
  throw ConfigParseError("unknown mode '" + name + "'");
}

const std::map<std::string, double> &default_check_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"mehler", 1e-6},
      {"zeta_limits", 1e-2},
      {"zeta_odd", 1e-13},
      {"zeta_routes", 1e-8},
      {"omega_plus", 1e-10},
      {"psi0", 1e-8},
      {"mixing", 1e-12},
      {"sigma", 1e-12},
      {"interleave", 1e-15},
      {"legendre_asymptotic", 1e-2},
      {"parseval", 1e-2},
  };
  return defaults;
}

double Tolerances::check(const std::string &id) const {
  if (auto it = checks.find(id); it != checks.end())
    return it->second;
  return default_check_tolerances().at(id);
}

RunConfig parse_config_text(const std::string &text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception &e) {
    throw ConfigParseError(std::string("YAML: ") + e.what());
  }
  RunConfig cfg;
  if (!root || root.IsNull())
    return cfg;
  allow_keys(root, "config",
             {"run", "symbol", "model", "preset", "nystrom", "probe", "tolerances"});

  if (const auto run = root["run"]) {
    allow_keys(run, "run", {"mode", "id", "sizes", "output_dir", "fourier"});
    if (run["mode"])
      cfg.mode = mode_from_name(as_string(run["mode"], "run.mode"));
    if (run["id"])
      cfg.id = as_string(run["id"], "run.id");
    if (run["output_dir"])
      cfg.output_dir = as_string(run["output_dir"], "run.output_dir");
    if (run["fourier"]) {
      const auto f = as_string(run["fourier"], "run.fourier");
      if (f == "auto")
        cfg.fourier_mode = symbols::FourierMode::Auto;
      else if (f == "quadrature")
        cfg.fourier_mode = symbols::FourierMode::Quadrature;
      else
        fail("run.fourier", "must be auto or quadrature");
    }
    if (const auto sizes = run["sizes"]) {
      if (!sizes.IsSequence())
        fail("run.sizes", "expected a list");
      for (std::size_t i = 0; i < sizes.size(); ++i)
        cfg.sizes.push_back(as_size(sizes[i], "run.sizes"));
    }
  }

  int inputs = 0;
  if (const auto s = root["symbol"]) {
    parse_symbol(s, cfg);
    ++inputs;
  }
  if (const auto m = root["model"]) {
    parse_model(m, cfg);
    ++inputs;
  }
  if (const auto p = root["preset"]) {
    parse_preset(p, cfg);
    ++inputs;
  }
  if (inputs > 1)
    fail("config", "give exactly one of symbol, model, preset");

  if (const auto n = root["nystrom"]) {
    allow_keys(n, "nystrom", {"half_width", "order"});
    cfg.nystrom.half_width = get_double(n, "half_width", cfg.nystrom.half_width, "nystrom");
    if (n["order"])
      cfg.nystrom.order = as_size(n["order"], "nystrom.order");
    if (!(cfg.nystrom.half_width > 0.0))
      fail("nystrom.half_width", "must be positive");
  }
  if (const auto p = root["probe"])
    parse_probe(p, cfg);
  if (const auto t = root["tolerances"])
    parse_tolerances(t, cfg);
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigParseError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace hankel::cli
