#include "hankel_spectra/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "hankel_spectra/errors.hpp"

namespace hankel::cli {

namespace fs = std::filesystem;
using predict::Band;
using predict::SpectralPrediction;

namespace {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Output helpers

class Emitter {
public:
  explicit Emitter(const RunConfig &cfg) : dir_(cfg.output_dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
      throw ValidationError("cannot create output directory " + dir_.string());
  }

  /// Writes a whole file at once; rows are already in their final order.
  void write(ReportBundle &bundle, const std::string &name, const std::string &text) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw ValidationError("cannot write " + path.string());
    out << text;
    out.close();
    if (!out)
      throw ValidationError("error writing " + path.string());
    bundle.files.push_back(path.string());
  }

private:
  fs::path dir_;
};

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s)
    q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string bands_csv(const SpectralPrediction &p) {
  std::ostringstream os;
  os << "band_id,kind,lo,hi,multiplicity\n";
  std::size_t id = 0;
  for (const auto *list : {&p.ac_bands, &p.modulus_bands})
    for (const auto &b : *list)
      os << id++ << ',' << predict::band_kind_name(b.kind) << ',' << format_number(b.lo)
         << ',' << format_number(b.hi) << ',' << b.multiplicity << '\n';
  return os.str();
}

std::string thresholds_csv(const SpectralPrediction &p) {
  std::ostringstream os;
  os << "threshold_id,value\n";
  for (std::size_t i = 0; i < p.thresholds.size(); ++i)
    os << i << ',' << format_number(p.thresholds[i]) << '\n';
  return os.str();
}

std::string checks_csv(const std::vector<CheckResult> &checks) {
  std::ostringstream os;
  os << "check_id,value,tolerance,pass\n";
  for (const auto &c : checks)
    os << csv_field(c.id) << ',' << format_number(c.value) << ','
       << format_number(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

void describe_prediction(std::ostream &os, const SpectralPrediction &p) {
  os << "essential spectrum segments:\n";
  for (const auto &s : p.essential)
    os << "  [" << format_number(s.a.real()) << (s.a.imag() != 0.0 ? "+i" + format_number(s.a.imag()) : "")
       << ", " << format_number(s.b.real()) << (s.b.imag() != 0.0 ? "+i" + format_number(s.b.imag()) : "")
       << "]\n";
  os << "absolutely continuous bands (multiset):\n";
  if (p.ac_bands.empty())
    os << "  none (compact operator)\n";
  for (const auto &b : p.ac_bands)
    os << "  [" << format_number(b.lo) << ", " << format_number(b.hi) << "] multiplicity "
       << b.multiplicity << " from " << b.origin << '\n';
  os << "modulus bands:\n";
  for (const auto &b : p.modulus_bands)
    os << "  [" << format_number(b.lo) << ", " << format_number(b.hi) << "] from " << b.origin
       << '\n';
  os << "thresholds: {";
  for (std::size_t i = 0; i < p.thresholds.size(); ++i)
    os << (i ? ", " : "") << format_number(p.thresholds[i]);
  os << "}\n";
  os << "a.c. band description applies: " << (p.ac_theorem_applies ? "yes" : "no")
     << "; eigenvalue multiplicity/accumulation statement applies: "
     << (p.point_spectrum_theorem_applies ? "yes" : "no") << '\n';
}

void describe_checks(std::ostream &os, const std::vector<CheckResult> &checks) {
  for (const auto &c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.id << " value=" << format_number(c.value)
       << " tolerance=" << format_number(c.tolerance)
       << (c.note.empty() ? "" : " (" + c.note + ")") << '\n';
}

// ---------------------------------------------------------------------------
// Input resolution

enum class SourceKind { Section, Nystrom, PredictionOnly };

struct Source {
  SourceKind kind = SourceKind::PredictionOnly;
  std::string id;
  SpectralPrediction prediction;
  std::function<sections::HankelCoefficients(std::size_t)> coefficients;
  std::function<double(double)> kernel;
};

predict::CoefficientModel preset_as_coefficient_model(const PresetInput &in) {
  predict::CoefficientModel m;
  switch (in.preset.id) {
  case models::PresetId::HilbertCoeffs:
    m.kappa_plus = in.scale;
    break;
  case models::PresetId::AlternatingCoeffs:
    m.kappa_minus = in.scale;
    break;
  case models::PresetId::OscillatoryCoeffs:
    m.terms.push_back({in.scale, in.preset.theta, in.preset.phi});
    break;
  default:
    throw InvalidPreset("not a coefficient preset");
  }
  return m;
}

predict::KernelModel preset_as_kernel_model(const PresetInput &in) {
  predict::KernelModel m;
  switch (in.preset.id) {
  case models::PresetId::MehlerKernel:
    m.h_infinity = in.scale;
    m.regular_at_zero = true;
    break;
  case models::PresetId::OscKernel:
    m.terms.push_back({in.scale, in.preset.b, in.preset.phi});
    m.regular_at_zero = true;
    break;
  case models::PresetId::ExpOverTKernel:
    m.h0 = in.scale;
    break;
  default:
    throw InvalidPreset("not a kernel preset");
  }
  return m;
}

Source symbol_source(const symbols::SymbolSpec &input, symbols::FourierMode mode,
                     const std::string &id) {
  Source s;
  s.id = id;
  const auto spec = symbols::validate_symbol(input);
  s.prediction = predict::predict(spec);
  if (spec.representation == symbols::Representation::Circle) {
    s.kind = SourceKind::Section;
    s.coefficients = [spec, mode](std::size_t count) {
      symbols::FourierOptions opt;
      opt.mode = mode;
      return sections::symbol_coefficients(spec, count, opt);
    };
  }
  return s;
}

Source resolve_source(const RunConfig &cfg) {
  Source s;
  s.id = cfg.id;
  switch (cfg.input) {
  case InputKind::None:
    throw ValidationError("this mode needs a symbol, model or preset section");
  case InputKind::Symbol:
    return symbol_source(cfg.symbol, cfg.fourier_mode, cfg.id);
  case InputKind::CoefficientModel: {
    const auto model = cfg.coefficient_model;
    s.prediction = predict::predict_from_coefficient_model(model);
    s.kind = SourceKind::Section;
    s.coefficients = [model](std::size_t count) {
      return sections::model_coefficients(model, count);
    };
    return s;
  }
  case InputKind::KernelModel:
    s.prediction = predict::predict_from_kernel_model(cfg.kernel_model);
    s.kind = SourceKind::Nystrom;
    s.kernel = sections::kernel_model_function(cfg.kernel_model);
    return s;
  case InputKind::Preset: {
    const auto &in = cfg.preset;
    if (models::is_coefficient_preset(in.preset)) {
      const auto model = preset_as_coefficient_model(in);
      s.prediction = predict::predict_from_coefficient_model(model);
      s.kind = SourceKind::Section;
      s.coefficients = [in](std::size_t count) {
        auto c = sections::preset_coefficients(in.preset, count);
        for (auto &v : c.values)
          v *= in.scale;
        return c;
      };
      return s;
    }
    if (models::is_kernel_preset(in.preset)) {
      s.prediction = predict::predict_from_kernel_model(preset_as_kernel_model(in));
      s.kind = SourceKind::Nystrom;
      const auto preset = in.preset;
      const double scale = in.scale;
      s.kernel = [preset, scale](double t) {
        return scale * models::integral_model_kernel(preset, t);
      };
      return s;
    }
    return symbol_source(symbols::make_preset_symbol(in.preset, in.scale), cfg.fourier_mode,
                         cfg.id);
  }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Concurrency

/// Runs job(i) for i in [0, count) on up to worker_count() threads and
/// returns the captured exception per item.
std::vector<std::exception_ptr> run_parallel(std::size_t count,
                                             const std::function<void(std::size_t)> &job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(worker_count(), count);
  if (threads <= 1) {
    worker();
    return errors;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto &th : pool)
    th.join();
  return errors;
}

CheckResult make_check(std::string id, double value, double tol, bool pass,
                       std::string note = {}) {
  CheckResult c;
  c.id = std::move(id);
  c.value = value;
  c.tolerance = tol;
  c.pass = pass;
  c.note = std::move(note);
  return c;
}

} // namespace

// ---------------------------------------------------------------------------

bool ReportBundle::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("HANKEL_SPECTRA_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1)
      n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

ReportBundle run_predict(const RunConfig &cfg) {
  const Source src = resolve_source(cfg);
  ReportBundle bundle;
  Emitter out(cfg);
  out.write(bundle, "bands.csv", bands_csv(src.prediction));
  out.write(bundle, "thresholds.csv", thresholds_csv(src.prediction));
  std::ostringstream rep;
  rep << "mode: predict\nid: " << cfg.id << '\n';
  describe_prediction(rep, src.prediction);
  bundle.summary = rep.str();
  out.write(bundle, "report.txt", bundle.summary);
  return bundle;
}

ReportBundle run_spectrum(const RunConfig &cfg) {
  if (cfg.sizes.empty())
    throw ValidationError("spectrum mode needs run.sizes");
  const Source src = resolve_source(cfg);
  if (src.kind == SourceKind::PredictionOnly)
    throw ValidationError("spectrum mode needs a circle symbol, a coefficient source or a kernel");
  std::vector<std::size_t> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (src.kind == SourceKind::Nystrom)
    for (std::size_t n : sizes)
      if (n % cfg.nystrom.order != 0)
        throw ValidationError("Nystrom sizes must be multiples of nystrom.order = " +
                              std::to_string(cfg.nystrom.order));

  const auto &bands = src.prediction.ac_bands;
  // Coefficients are generated once for the largest section.
  sections::HankelCoefficients coeffs;
  if (src.kind == SourceKind::Section)
    coeffs = src.coefficients(2 * sizes.back() - 1);

  std::vector<sections::SectionSpectrum> spectra(sizes.size());
  std::vector<sections::FillReport> fills(sizes.size());
  const auto errors = run_parallel(sizes.size(), [&](std::size_t i) {
    const std::size_t n = sizes[i];
    if (src.kind == SourceKind::Section) {
      spectra[i] = sections::section_spectrum(coeffs, n);
    } else {
      const auto grid = sections::QuadratureGrid::exponential(
          cfg.nystrom.half_width, n / cfg.nystrom.order, cfg.nystrom.order);
      spectra[i] = sections::nystrom_spectrum(src.kernel, grid);
    }
    fills[i] = sections::band_fill_metrics(spectra[i], bands, cfg.tolerances.leak);
  });
  std::size_t done = 0;
  while (done < sizes.size() && !errors[done])
    ++done;

  ReportBundle bundle;
  Emitter out(cfg);
  out.write(bundle, "bands.csv", bands_csv(src.prediction));
  {
    std::ostringstream ev, fl;
    ev << "source_id,N,index,eigenvalue\n";
    fl << "source_id,N,band_id,fill_distance,leak_count\n";
    for (std::size_t i = 0; i < done; ++i) {
      const auto &s = spectra[i];
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
        ev << csv_field(src.id) << ',' << sizes[i] << ',' << k << ','
           << format_number(s.eigenvalues[k]) << '\n';
      for (std::size_t b = 0; b < bands.size(); ++b)
        fl << csv_field(src.id) << ',' << sizes[i] << ',' << b << ','
           << format_number(fills[i].fill_distance[b]) << ',' << fills[i].leak_count << '\n';
    }
    out.write(bundle, "eigenvalues.csv", ev.str());
    out.write(bundle, "fill.csv", fl.str());
  }
  if (done < sizes.size())
    std::rethrow_exception(errors[done]);

  // Invariants across N.
  for (std::size_t b = 0; b < bands.size(); ++b) {
    double worst = 0.0;
    for (std::size_t i = 1; i < sizes.size(); ++i)
      worst = std::max(worst, fills[i].fill_distance[b] - fills[i - 1].fill_distance[b]);
    bundle.checks.push_back(make_check("fill_monotone:" + std::to_string(b), worst, 0.0,
                                       worst <= 0.0,
                                       "largest increase of fill_distance between sizes"));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto &f = fills[i];
    bundle.checks.push_back(make_check(
        "leak_count:" + std::to_string(sizes[i]), double(f.leak_count),
        double(cfg.tolerances.max_leaks), f.leak_count < cfg.tolerances.max_leaks,
        "eigenvalues farther than " + format_number(cfg.tolerances.leak) + " from the bands"));
    if (i == 0)
      continue;
    const auto cls =
        sections::classify_leaks(fills[i - 1], f, cfg.tolerances.leak_stability);
    const auto unstable = std::count(cls.classes.begin(), cls.classes.end(),
                                     sections::LeakClass::Error);
    bundle.checks.push_back(make_check(
        "leak_stability:" + std::to_string(sizes[i]), double(unstable), 0.0, unstable == 0,
        "leaks not reproduced within " + format_number(cfg.tolerances.leak_stability) +
            " at N=" + std::to_string(sizes[i - 1])));
  }

  std::ostringstream rep;
  rep << "mode: spectrum\nid: " << cfg.id << "\nsource: "
      << (src.kind == SourceKind::Section ? "finite section" : "Nystrom") << '\n';
  describe_prediction(rep, src.prediction);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto &s = spectra[i];
    rep << "N=" << sizes[i] << ": eigenvalues in [" << format_number(s.eigenvalues.front())
        << ", " << format_number(s.eigenvalues.back()) << "]";
    for (std::size_t b = 0; b < bands.size(); ++b)
      rep << ", fill[" << b << "]=" << format_number(fills[i].fill_distance[b]);
    rep << ", leaks=" << fills[i].leak_count << '\n';
    for (double x : fills[i].leak_values)
      rep << "  leak " << format_number(x) << '\n';
  }
  describe_checks(rep, bundle.checks);
  bundle.summary = rep.str();
  out.write(bundle, "report.txt", bundle.summary);
  return bundle;
}

ReportBundle run_verify_models(const RunConfig &cfg) {
  ReportBundle bundle;
  bundle.checks = checks::run_identity_checks(
      [&](const std::string &id) { return cfg.tolerances.check(id); }, cfg.only);
  Emitter out(cfg);
  out.write(bundle, "checks.csv", checks_csv(bundle.checks));
  std::ostringstream rep;
  rep << "mode: verify-models\nid: " << cfg.id << '\n';
  describe_checks(rep, bundle.checks);
  bundle.summary = rep.str();
  out.write(bundle, "report.txt", bundle.summary);
  return bundle;
}

ReportBundle run_convert(const RunConfig &cfg) {
  symbols::SymbolSpec spec;
  if (cfg.input == InputKind::Symbol)
    spec = cfg.symbol;
  else if (cfg.input == InputKind::Preset && !models::is_line_preset(cfg.preset.preset))
    spec = symbols::make_preset_symbol(cfg.preset.preset, cfg.preset.scale);
  else
    throw ValidationError("convert mode needs a circle symbol");
  if (spec.representation != symbols::Representation::Circle)
    throw ValidationError("convert mode needs a circle symbol");
  const auto line = symbols::circle_to_line(spec);
  const auto nj = symbols::normalize_line_jumps(line.jumps);

  std::ostringstream csv, rep;
  csv << "location,value_re,value_im,model\n";
  rep << "mode: convert\nid: " << cfg.id << "\nline jumps and model symbols:\n";
  std::size_t pair = 0;
  for (const auto &j : line.jumps) {
    const auto &b = std::get<LinePoint>(j.location);
    std::string model;
    if (b.infinite)
      model = "psi_infinity";
    else if (b.is_self_conjugate(1e-9))
      model = "psi_zero";
    else if (b.value < 0.0)
      model = "psi_pair_" + std::to_string(pair++);
    else
      model = "psi_pair_partner";
    csv << (b.infinite ? std::string("infinity") : format_number(b.value)) << ','
        << format_number(j.value.real()) << ',' << format_number(j.value.imag()) << ','
        << model << '\n';
    rep << "  " << (b.infinite ? std::string("infinity") : format_number(b.value)) << ": "
        << format_number(j.value.real()) << (j.value.imag() < 0 ? "" : "+")
        << format_number(j.value.imag()) << "i -> " << model << '\n';
  }
  rep << "psi_zero(nu) = jump(0) zeta(nu); psi_infinity(nu) = -jump(inf) zeta(-1/nu);\n"
         "psi_pair(nu) = jump(b) zeta(nu - b) + jump(-b) zeta(nu + b)\n";
  rep << "line a.c. bands:\n";
  for (const auto &b : predict::ac_spectrum(nj))
    rep << "  [" << format_number(b.lo) << ", " << format_number(b.hi) << "] from " << b.origin
        << '\n';

  ReportBundle bundle;
  Emitter out(cfg);
  out.write(bundle, "line_jumps.csv", csv.str());
  bundle.summary = rep.str();
  out.write(bundle, "report.txt", bundle.summary);
  return bundle;
}

ReportBundle run_probe_resolvent(const RunConfig &cfg) {
  const Source src = resolve_source(cfg);
  if (src.kind != SourceKind::Section)
    throw ValidationError("probe-resolvent needs a coefficient source or a circle symbol");
  if (cfg.probe.z.empty())
    throw ValidationError("probe-resolvent needs probe.z or probe.lambda/probe.eta");
  const std::size_t n = cfg.probe.n;
  const auto coeffs = src.coefficients(2 * n - 1);
  const auto spectrum = sections::section_spectrum(coeffs, n);
  const auto values = sections::weighted_resolvent_probe(coeffs, cfg.probe.weight,
                                                         cfg.probe.z, n, cfg.probe.iterations);

  std::ostringstream csv, rep;
  csv << "z_re,z_im,probe,plain_bound\n";
  rep << "mode: probe-resolvent\nid: " << cfg.id << "\nN=" << n << ", weight locations="
      << cfg.probe.weight.locations.size() << ", beta=" << format_number(cfg.probe.weight.beta)
      << "\nnote: finite-N probe with a fixed order of limits; a diagnostic, not a proof of"
         " limiting absorption\n";
  double worst = 0.0, worst_ratio = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Complex z = cfg.probe.z[i];
    double dist = std::numeric_limits<double>::infinity();
    for (double lambda : spectrum.eigenvalues)
      dist = std::min(dist, std::abs(z - lambda));
    csv << format_number(z.real()) << ',' << format_number(z.imag()) << ','
        << format_number(values[i]) << ',' << format_number(1.0 / dist) << '\n';
    rep << "  z=" << format_number(z.real()) << (z.imag() < 0 ? "" : "+")
        << format_number(z.imag()) << "i probe=" << format_number(values[i])
        << " 1/dist=" << format_number(1.0 / dist) << '\n';
    worst = std::max(worst, values[i]);
    if (i > 0)
      worst_ratio = std::max(worst_ratio, values[i] / values[i - 1]);
  }
  ReportBundle bundle;
  if (cfg.probe.ceiling)
    bundle.checks.push_back(make_check("probe_ceiling", worst, *cfg.probe.ceiling,
                                       worst <= *cfg.probe.ceiling,
                                       "largest probe value against the configured ceiling"));
  if (!cfg.probe.weight.locations.empty() && values.size() > 1)
    bundle.checks.push_back(make_check("probe_ratio", worst_ratio, 2.0, worst_ratio < 2.0,
                                       "largest ratio between successive shifts"));
  describe_checks(rep, bundle.checks);
  Emitter out(cfg);
  out.write(bundle, "probe.csv", csv.str());
  bundle.summary = rep.str();
  out.write(bundle, "report.txt", bundle.summary);
  return bundle;
}

ReportBundle run(const RunConfig &cfg) {
  switch (cfg.mode) {
  case Mode::Predict:
    return run_predict(cfg);
  case Mode::Spectrum:
    return run_spectrum(cfg);
  case Mode::VerifyModels:
    return run_verify_models(cfg);
  case Mode::Convert:
    return run_convert(cfg);
  case Mode::ProbeResolvent:
    return run_probe_resolvent(cfg);
  }
  throw ValidationError("unknown mode");
}

} // namespace hankel::cli
