#include <CLI11.hpp>

#include <iostream>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/runner.hpp"

int main(int argc, char **argv) {
  CLI::App app{"hankel-spectra: spectral predictions for Hankel operators with "
               "piecewise-continuous symbols"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string only;
  for (const char *name :
       {"predict", "spectrum", "verify-models", "convert", "probe-resolvent"}) {
    auto *sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "YAML run description")->required();
    sub->add_option("--out", out_dir, "output directory (overrides run.output_dir)");
    sub->add_option("--only", only, "run a single check id (verify-models)");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const auto mode = hankel::cli::mode_from_name(app.get_subcommands().front()->get_name());
    auto config = hankel::cli::load_config(config_path);
    config.mode = mode;
    if (!out_dir.empty())
      config.output_dir = out_dir;
    if (!only.empty())
      config.only = only;
    const auto bundle = hankel::cli::run(config);
    std::cout << bundle.summary;
    for (const auto &f : bundle.files)
      std::cout << "wrote " << f << '\n';
    return bundle.ok() ? 0 : 1;
  } catch (const hankel::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
