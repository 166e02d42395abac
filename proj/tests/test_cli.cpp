#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/runner.hpp"

using namespace hankel;
using namespace hankel::cli;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("hankel_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path &p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RunConfig config_in(const std::string &yaml, const fs::path &dir) {
  auto cfg = parse_config_text(yaml);
  cfg.output_dir = dir.string();
  return cfg;
}

int run_binary(const std::string &args) {
  const std::string cmd = std::string(HANKEL_SPECTRA_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config_text(R"(
run:
  mode: spectrum
  id: demo
  sizes: [64, 128]
  fourier: quadrature
symbol:
  representation: circle
  beta0: 2.5
  jumps:
    - {location: plus_one, value: [0, 2]}
    - {location: {angle: 1.0}, value: {re: 0.5, im: 0.25}}
    - {location: {angle: -1.0}, value: {re: -0.5, im: 0.25}}
tolerances:
  leak: 0.05
  mehler: 1e-5
)");
  CHECK(cfg.mode == Mode::Spectrum);
  CHECK(cfg.id == "demo");
  CHECK(cfg.sizes == std::vector<std::size_t>{64, 128});
  CHECK(cfg.fourier_mode == symbols::FourierMode::Quadrature);
  CHECK(cfg.input == InputKind::Symbol);
  CHECK(cfg.symbol.beta0 == 2.5);
  REQUIRE(cfg.symbol.jumps.size() == 3);
  CHECK(cfg.tolerances.leak == 0.05);
  CHECK(cfg.tolerances.check("mehler") == 1e-5);
  CHECK(cfg.tolerances.check("zeta_odd") == 1e-13);

  const auto m = parse_config_text(R"(
model:
  kind: kernel
  h_infinity: 1
  regular_at_zero: true
  terms: [{h: 0.5, b: 3, phi: 0.2}]
probe:
  lambda: 0.5
  eta: [0.1, 0.01]
  weights: {locations: [plus_one], beta: 2}
)");
  CHECK(m.input == InputKind::KernelModel);
  CHECK(m.kernel_model.regular_at_zero);
  REQUIRE(m.kernel_model.terms.size() == 1);
  CHECK(m.kernel_model.terms[0].b == 3.0);
  REQUIRE(m.probe.z.size() == 2);
  CHECK(m.probe.z[1] == std::complex<double>(0.5, 0.01));
  REQUIRE(m.probe.weight.locations.size() == 1);

  const auto p = parse_config_text("preset: {name: oscillatory, theta: 1.0471975511965976, phi: 0.4}\n");
  CHECK(p.input == InputKind::Preset);
  CHECK(p.preset.preset.id == models::PresetId::OscillatoryCoeffs);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config_text("run: {mode: nonsense}\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("run: {colour: red}\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("bogus: 1\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("run: [unclosed\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("preset: {name: hilbert}\nmodel: {kind: coefficient}\n"),
                  ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("model: {kind: spline}\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("run: {sizes: [-3]}\n"), ConfigParseError);
  CHECK_THROWS_AS(parse_config_text("probe: {eta: [0.1]}\n"), ConfigParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigParseError);
  // Semantic errors surface at run time as the library's own error types.
  const auto dir = scratch("errors");
  CHECK_THROWS_AS(run(config_in("run: {mode: predict}\nsymbol: {jumps: [{location: plus_one, value: 3}]}\n", dir)),
                  SelfAdjointnessViolation);
  CHECK_THROWS_AS(run(config_in("run: {mode: predict}\nsymbol: {beta0: 0, jumps: [{location: plus_one, value: [0, 2]}]}\n", dir)),
                  NonPositiveBeta0);
}

TEST_CASE("predict mode") {
  SUBCASE("Hilbert symbol") {
    const auto dir = scratch("predict_hilbert");
    const auto b = run(config_in(R"(
run: {mode: predict}
model: {kind: coefficient, kappa_plus: 1}
)", dir));
    CHECK(b.ok());
    const auto bands = csv_rows(dir / "bands.csv");
    int ac = 0;
    for (const auto &r : bands)
      if (r[1] == "ac") {
        ++ac;
        CHECK(std::stod(r[2]) == 0.0);
        CHECK(std::stod(r[3]) == 1.0);
      }
    CHECK(ac == 1);
    const auto th = csv_rows(dir / "thresholds.csv");
    REQUIRE(th.size() == 2);
    CHECK(std::stod(th[0][1]) == 0.0);
    CHECK(std::stod(th[1][1]) == 1.0);
    CHECK(fs::exists(dir / "report.txt"));
  }
  SUBCASE("three-term model") {
    const auto dir = scratch("predict_three");
    run(config_in(R"(
run: {mode: predict}
model:
  kind: coefficient
  kappa_plus: 1
  kappa_minus: 0.5
  terms: [{kappa: 0.25, theta: 1.0471975511965976, phi: 0}]
)", dir));
    int ac = 0;
    for (const auto &r : csv_rows(dir / "bands.csv"))
      ac += r[1] == "ac";
    CHECK(ac == 3);
    CHECK(csv_rows(dir / "thresholds.csv").size() == 5);
  }
  SUBCASE("no jumps") {
    const auto dir = scratch("predict_empty");
    run(config_in("run: {mode: predict}\nsymbol: {tail: [1.0, 0.5]}\n", dir));
    CHECK(csv_rows(dir / "bands.csv").empty());
    const auto th = csv_rows(dir / "thresholds.csv");
    REQUIRE(th.size() == 1);
    CHECK(std::stod(th[0][1]) == 0.0);
  }
}

TEST_CASE("verify-models mode") {
  const auto dir = scratch("verify");
  auto cfg = config_in("run: {mode: verify-models}\n", dir);
  cfg.only = "mehler";
  auto b = run(cfg);
  CHECK(b.ok());
  const auto rows = csv_rows(dir / "checks.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "mehler");
  CHECK(rows[0][3] == "true");

  cfg = config_in("run: {mode: verify-models}\ntolerances: {zeta_odd: 1e-30}\n", dir);
  cfg.only = "zeta_odd";
  b = run(cfg);
  // The residual is tiny but positive or exactly zero; a 1e-30 tolerance only
  // passes an exact zero.
  const auto r = csv_rows(dir / "checks.csv");
  REQUIRE(r.size() == 1);
  CHECK(b.ok() == (std::stod(r[0][1]) < 1e-30));

  cfg.only = "no_such_check";
  CHECK_THROWS_AS(run(cfg), ValidationError);
}

TEST_CASE("convert mode") {
  const auto dir = scratch("convert");
  run(config_in(R"(
run: {mode: convert}
symbol:
  jumps:
    - {location: plus_one, value: [0, 2]}
    - {location: minus_one, value: [0, 1]}
    - {location: {angle: 1.5707963267948966}, value: 2}
    - {location: {angle: -1.5707963267948966}, value: -2}
)", dir));
  const auto rows = csv_rows(dir / "line_jumps.csv");
  REQUIRE(rows.size() == 4);
  bool saw_half = false, saw_inf = false, saw_zero = false;
  for (const auto &r : rows) {
    if (r[0] == "infinity") {
      saw_inf = true;
      CHECK(std::stod(r[2]) == doctest::Approx(2.0));
    } else if (std::abs(std::stod(r[0])) < 1e-15) {
      saw_zero = true;
      CHECK(std::stod(r[2]) == doctest::Approx(1.0));
    } else if (std::abs(std::stod(r[0]) + 0.5) < 1e-12) {
      saw_half = true;
      CHECK(std::abs(std::stod(r[1])) < 1e-14);
      CHECK(std::stod(r[2]) == doctest::Approx(-2.0));
    }
  }
  CHECK(saw_half);
  CHECK(saw_inf);
  CHECK(saw_zero);
}

TEST_CASE("spectrum mode") {
  const std::string yaml = R"(
run: {mode: spectrum, sizes: [64, 128], id: hilbert}
preset: {name: hilbert}
)";
  const auto a = scratch("spectrum_a"), b = scratch("spectrum_b");
  const auto ra = run(config_in(yaml, a));
  run(config_in(yaml, b));
  CHECK(ra.ok());
  for (const char *f : {"eigenvalues.csv", "fill.csv", "bands.csv", "report.txt"})
    CHECK(slurp(a / f) == slurp(b / f));
  const auto ev = csv_rows(a / "eigenvalues.csv");
  CHECK(ev.size() == 64 + 128);
  CHECK(ev.front()[0] == "hilbert");
  const auto fill = csv_rows(a / "fill.csv");
  REQUIRE(fill.size() == 2);
  CHECK(std::stod(fill[1][3]) <= std::stod(fill[0][3]));

  // Nystrom sizes must be multiples of the panel order.
  auto bad = config_in("run: {mode: spectrum, sizes: [50]}\npreset: {name: mehler_kernel}\n", a);
  CHECK_THROWS_AS(run(bad), ValidationError);
  CHECK_THROWS_AS(run(config_in("run: {mode: spectrum}\npreset: {name: hilbert}\n", a)),
                  ValidationError);

  const auto ny = run(config_in(
      "run: {mode: spectrum, sizes: [200]}\npreset: {name: mehler_kernel}\nnystrom: {half_width: 8}\n",
      a));
  const auto nev = csv_rows(a / "eigenvalues.csv");
  REQUIRE(nev.size() == 200);
  CHECK(std::stod(nev.front()[3]) >= -1e-10);
  CHECK(std::stod(nev.back()[3]) <= 1.0 + 1e-8);
}

TEST_CASE("probe-resolvent mode") {
  const auto dir = scratch("probe");
  const auto b = run(config_in(R"(
run: {mode: probe-resolvent}
preset: {name: hilbert}
probe: {n: 64, z: [[0.5, 0.1], [5, 0.1]]}
)", dir));
  const auto rows = csv_rows(dir / "probe.csv");
  REQUIRE(rows.size() == 2);
  for (const auto &r : rows)
    CHECK(std::stod(r[2]) == doctest::Approx(std::stod(r[3])).epsilon(1e-8));
  CHECK(b.ok());
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 1e300})
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("command-line binary") {
  const auto dir = scratch("binary");
  const auto cfg = dir / "run.yaml";
  {
    std::ofstream out(cfg);
    out << "model: {kind: coefficient, kappa_plus: 1}\n";
  }
  CHECK(run_binary("predict --config " + cfg.string() + " --out " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "bands.csv"));
  CHECK(run_binary("verify-models --config " + cfg.string() + " --only mehler --out " +
                   (dir / "v").string()) == 0);
  CHECK(csv_rows(dir / "v" / "checks.csv").size() == 1);

  const auto tight = dir / "tight.yaml";
  {
    std::ofstream out(tight);
    out << "tolerances: {mehler: 1e-30}\n";
  }
  CHECK(run_binary("verify-models --config " + tight.string() + " --only mehler --out " +
                   (dir / "t").string()) == 1);
  CHECK(run_binary("predict --config /nonexistent.yaml") == 2);
  CHECK(run_binary("predict") != 0);
  CHECK(run_binary("frobnicate --config " + cfg.string()) != 0);
}
