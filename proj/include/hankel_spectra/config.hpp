#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hankel_spectra/models.hpp"
#include "hankel_spectra/predict.hpp"
#include "hankel_spectra/sections.hpp"
#include "hankel_spectra/symbols.hpp"

namespace hankel::cli {

enum class Mode { Predict, Spectrum, VerifyModels, Convert, ProbeResolvent };

const char *mode_name(Mode mode);
/// Throws ConfigParseError for unknown names.
Mode mode_from_name(const std::string &name);

enum class InputKind { None, Symbol, CoefficientModel, KernelModel, Preset };

struct PresetInput {
  models::ModelPreset preset;
  double scale = 1.0;
};

struct NystromSettings {
  double half_width = 8.0;
  std::size_t order = 20; // Gauss-Legendre points per panel; N = panels * order
};

struct ProbeSettings {
  std::size_t n = 1024;
  std::vector<std::complex<double>> z;
  sections::WeightSpec weight;
  std::size_t iterations = 100;
  std::optional<double> ceiling;
};

/// Every tolerance in one table. Check tolerances are keyed by check id.
struct Tolerances {
  double leak = 0.02;
  double leak_stability = 1e-3;
  std::size_t max_leaks = 10;
  std::map<std::string, double> checks;

  double check(const std::string &id) const;
};

/// Documented defaults of the model-identity checks.
const std::map<std::string, double> &default_check_tolerances();

struct RunConfig {
  Mode mode = Mode::Predict;
  std::string id = "run";
  InputKind input = InputKind::None;
  symbols::SymbolSpec symbol;
  predict::CoefficientModel coefficient_model;
  predict::KernelModel kernel_model;
  PresetInput preset;
  symbols::FourierMode fourier_mode = symbols::FourierMode::Auto;
  std::vector<std::size_t> sizes;
  std::string output_dir = ".";
  NystromSettings nystrom;
  ProbeSettings probe;
  Tolerances tolerances;
  std::optional<std::string> only;
};

/// Parses the YAML run description. Top-level sections: run, symbol, model,
/// preset, nystrom, probe, tolerances. Throws ConfigParseError.
RunConfig parse_config_text(const std::string &text);
RunConfig load_config(const std::string &path);

} // namespace hankel::cli
