#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/predict.hpp"
#include "hankel_spectra/symbols.hpp"

using namespace hankel;
using namespace hankel::predict;
using hankel::symbols::SymbolSpec;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);

using Interval = std::pair<double, double>;

std::vector<Interval> intervals(const std::vector<Band> &bands) {
  std::vector<Interval> out;
  for (const auto &b : bands)
    out.emplace_back(b.lo, b.hi);
  std::sort(out.begin(), out.end());
  return out;
}

void check_intervals(const std::vector<Band> &bands, std::vector<Interval> expected) {
  std::sort(expected.begin(), expected.end());
  const auto got = intervals(bands);
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].first == doctest::Approx(expected[i].first));
    CHECK(got[i].second == doctest::Approx(expected[i].second));
  }
}

void check_values(const std::vector<double> &got, const std::vector<double> &expected) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(expected[i]));
}

JumpDatum at_angle(double a, Complex k) { return {CirclePoint::at(a), k}; }

SymbolSpec circle(std::vector<JumpDatum> jumps) {
  SymbolSpec s;
  s.jumps = std::move(jumps);
  return symbols::validate_symbol(s);
}

SymbolSpec random_symbol(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> k(-2.0, 2.0), a(0.1, pi - 0.1), ph(0.0, 2 * pi);
  std::vector<JumpDatum> j = {at_angle(0.0, 2.0 * I * k(rng)), at_angle(pi, 2.0 * I * k(rng))};
  const double t1 = a(rng);
  double t2 = a(rng);
  if (std::abs(t1 - t2) < 0.05)
    t2 = t1 > pi / 2 ? t1 - 0.5 : t1 + 0.5;
  j.push_back(at_angle(t1, std::abs(k(rng)) * std::polar(1.0, ph(rng))));
  j.push_back(at_angle(t2, std::abs(k(rng)) * std::polar(1.0, ph(rng))));
  return circle(j);
}

} // namespace

TEST_CASE("essential spectrum") {
  const auto one = essential_spectrum({at_angle(0.0, 2.0 * I)});
  REQUIRE(one.size() == 1);
  CHECK(one[0].same_as({0.0, 1.0}));

  const double psi = 0.8;
  const auto pair =
      essential_spectrum({at_angle(1.0, 2.0 * std::polar(1.0, psi)),
                          at_angle(-1.0, -2.0 * std::polar(1.0, -psi))});
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].same_as({-1.0, 1.0}));

  const auto lone = essential_spectrum({at_angle(1.0, 2.0)});
  REQUIRE(lone.size() == 1);
  CHECK(lone[0].same_as({0.0, 0.0}));

  CHECK(essential_spectrum({}).empty());
}

TEST_CASE("ac spectrum") {
  symbols::NormalizedJumps nj;
  nj.kappa_plus = 1.0;
  check_intervals(ac_spectrum(nj), {{0.0, 1.0}});
  nj.kappa_minus = 0.5;
  nj.pairs.push_back({pi / 3, 0.25, 0.0});
  check_intervals(ac_spectrum(nj), {{0.0, 1.0}, {0.0, 0.5}, {-0.25, 0.25}});
  CHECK(ac_spectrum(symbols::NormalizedJumps{}).empty());

  symbols::NormalizedJumps neg;
  neg.kappa_plus = -0.7;
  const auto b = ac_spectrum(neg);
  REQUIRE(b.size() == 1);
  CHECK(b[0].lo == doctest::Approx(-0.7));
  CHECK(b[0].hi == 0.0);
  CHECK(b[0].multiplicity == 1);

  symbols::LineNormalizedJumps ln;
  ln.kappa_zero = 1.0;
  ln.kappa_infinity = 0.5;
  ln.pairs.push_back({-3.0, 2.0, 0.1});
  check_intervals(ac_spectrum(ln), {{0.0, 1.0}, {0.0, 0.5}, {-2.0, 2.0}});
}

TEST_CASE("modulus spectrum") {
  check_intervals(modulus_spectrum({at_angle(0.0, 2.0 * I), at_angle(1.0, 4.0 * std::polar(1.0, 0.3)),
                                    at_angle(-1.0, -4.0 * std::polar(1.0, -0.3))}),
                  {{0.0, 1.0}, {0.0, 2.0}, {0.0, 2.0}});
  CHECK(modulus_spectrum({}).empty());
  check_intervals(modulus_spectrum({at_angle(pi, I)}), {{0.0, 0.5}});
  for (const auto &b : modulus_spectrum({at_angle(pi, I)}))
    CHECK(b.kind == BandKind::Modulus);
}

TEST_CASE("thresholds") {
  check_values(thresholds(std::vector<Band>{make_band(0, 1, BandKind::AC, ""),
                                            make_band(0, 0.5, BandKind::AC, ""),
                                            make_band(-0.25, 0.25, BandKind::AC, "")}),
               {-0.25, 0.0, 0.25, 0.5, 1.0});
  check_values(thresholds(std::vector<Band>{make_band(1, 0, BandKind::AC, "")}), {0.0, 1.0});
  check_values(thresholds(std::vector<Band>{}), {0.0});
  check_values(thresholds(std::vector<Band>{make_band(0, 1, BandKind::AC, ""),
                                            make_band(0, 1 + 1e-14, BandKind::AC, "")}),
               {0.0, 1.0});
}

TEST_CASE("coefficient models") {
  CoefficientModel hilbert;
  hilbert.kappa_plus = 1.0;
  auto p = predict_from_coefficient_model(hilbert);
  check_intervals(p.ac_bands, {{0.0, 1.0}});
  check_values(p.thresholds, {0.0, 1.0});

  for (double phi : {0.0, 0.4, 2.0}) {
    CoefficientModel osc;
    osc.terms.push_back({1.0, pi / 3, phi});
    check_intervals(predict_from_coefficient_model(osc).ac_bands, {{-1.0, 1.0}});
  }

  CoefficientModel three;
  three.kappa_plus = 1.0;
  three.kappa_minus = 0.5;
  three.terms.push_back({0.25, pi / 3, 0.0});
  p = predict_from_coefficient_model(three);
  check_intervals(p.ac_bands, {{0.0, 1.0}, {0.0, 0.5}, {-0.25, 0.25}});
  check_values(p.thresholds, {-0.25, 0.0, 0.25, 0.5, 1.0});
  CHECK(p.ac_theorem_applies);
  CHECK(p.point_spectrum_theorem_applies);
  check_intervals(p.modulus_bands, {{0.0, 1.0}, {0.0, 0.5}, {0.0, 0.25}, {0.0, 0.25}});

  CoefficientModel weak = three;
  weak.alpha0 = 2.5;
  p = predict_from_coefficient_model(weak);
  CHECK(p.ac_theorem_applies);
  CHECK_FALSE(p.point_spectrum_theorem_applies);
  weak.alpha0 = 2.0;
  CHECK_FALSE(predict_from_coefficient_model(weak).ac_theorem_applies);

  CoefficientModel dup;
  dup.terms = {{1.0, 1.0, 0.0}, {0.5, 1.0, 0.3}};
  CHECK_THROWS_AS(predict_from_coefficient_model(dup), DuplicateFrequency);
  CoefficientModel bad;
  bad.terms = {{1.0, pi, 0.0}};
  CHECK_THROWS_AS(predict_from_coefficient_model(bad), ValidationError);

  // Negative amplitude of a one-sided term.
  CoefficientModel neg;
  neg.kappa_minus = -0.5;
  check_intervals(predict_from_coefficient_model(neg).ac_bands, {{-0.5, 0.0}});
}

TEST_CASE("coefficient model agrees with the symbol carrying the same jumps") {
  // The oscillatory preset has coefficients 2 sin(n theta - phi)/(pi(n+1)).
  const double theta = pi / 3, phi = 0.4;
  CoefficientModel m;
  m.terms.push_back({1.0, theta, phi});
  const auto pm = predict_from_coefficient_model(m);
  const auto ps = predict::predict(symbols::make_preset_symbol(models::ModelPreset::oscillatory(theta, phi)));
  REQUIRE(pm.essential.size() == ps.essential.size());
  for (std::size_t i = 0; i < pm.essential.size(); ++i)
    CHECK(pm.essential[i].same_as(ps.essential[i]));
  check_intervals(ps.ac_bands, {{-1.0, 1.0}});
}

TEST_CASE("kernel models") {
  KernelModel mehler;
  mehler.h_infinity = 1.0;
  check_intervals(predict_from_kernel_model(mehler).ac_bands, {{0.0, 1.0}});

  KernelModel osc;
  osc.terms.push_back({1.0, 3.0, 0.2});
  check_intervals(predict_from_kernel_model(osc).ac_bands, {{-1.0, 1.0}});

  KernelModel zero;
  zero.h0 = 1.0;
  check_intervals(predict_from_kernel_model(zero).ac_bands, {{0.0, 1.0}});
  zero.regular_at_zero = true;
  CHECK(predict_from_kernel_model(zero).ac_bands.empty());

  KernelModel dup;
  dup.terms = {{1.0, 3.0, 0.0}, {1.0, -3.0, 0.0}};
  CHECK_THROWS_AS(predict_from_kernel_model(dup), DuplicateFrequency);
  KernelModel bad;
  bad.terms = {{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(predict_from_kernel_model(bad), ValidationError);

  // The essential spectrum agrees with the a.c. bands.
  KernelModel all;
  all.h0 = 0.3;
  all.h_infinity = 0.7;
  all.terms = {{0.4, 2.0, 1.0}};
  const auto p = predict_from_kernel_model(all);
  const auto ess = real_coverage(p.essential), ac = coverage(p.ac_bands);
  REQUIRE(ess.size() == ac.size());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    CHECK(ess[i].first == doctest::Approx(ac[i].first));
    CHECK(ess[i].second == doctest::Approx(ac[i].second));
  }
}

TEST_CASE("prediction properties on random symbols") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = random_symbol(rng);
    const auto p = predict::predict(s);

    // Self-adjoint consistency: real part of the essential spectrum equals the bands.
    const auto a = real_coverage(p.essential), b = coverage(p.ac_bands);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].first == doctest::Approx(b[i].first));
      CHECK(a[i].second == doctest::Approx(b[i].second));
    }
    for (const auto &seg : p.essential)
      CHECK(seg.is_real(1e-12));

    // Homogeneity.
    SymbolSpec scaled = s;
    for (auto &j : scaled.jumps)
      j.value *= 2.5;
    const auto ps = predict::predict(scaled);
    const auto pb = intervals(p.ac_bands), sb = intervals(ps.ac_bands);
    REQUIRE(pb.size() == sb.size());
    for (std::size_t i = 0; i < pb.size(); ++i) {
      CHECK(sb[i].first == doctest::Approx(2.5 * pb[i].first));
      CHECK(sb[i].second == doctest::Approx(2.5 * pb[i].second));
    }

    // Each pair contributes a symmetric band; both members show up in |H|.
    const auto nj = symbols::normalize_jumps(s);
    CHECK(nj.pairs.size() == 2);
    CHECK(p.modulus_bands.size() == s.jumps.size());

    // Representation invariance.
    const auto pl = predict::predict(symbols::circle_to_line(s));
    const auto lb = intervals(pl.ac_bands);
    REQUIRE(lb.size() == pb.size());
    for (std::size_t i = 0; i < lb.size(); ++i) {
      CHECK(lb[i].first == doctest::Approx(pb[i].first));
      CHECK(lb[i].second == doctest::Approx(pb[i].second));
    }
    check_values(pl.thresholds, p.thresholds);
  }
}

TEST_CASE("regularity flags follow beta0") {
  auto s = circle({at_angle(0.0, 2.0 * I)});
  s.beta0 = 1.5;
  auto p = predict::predict(s);
  CHECK(p.ac_theorem_applies);
  CHECK_FALSE(p.point_spectrum_theorem_applies);
  s.beta0 = 0.5;
  p = predict::predict(s);
  CHECK_FALSE(p.ac_theorem_applies);
  s.beta0 = 3.0;
  CHECK(predict::predict(s).point_spectrum_theorem_applies);
}

TEST_CASE("coverage merges overlaps") {
  const auto c = coverage({make_band(0, 1, BandKind::AC, ""), make_band(-0.25, 0.25, BandKind::AC, ""),
                           make_band(2, 3, BandKind::AC, "")});
  REQUIRE(c.size() == 2);
  CHECK(c[0] == Interval{-0.25, 1.0});
  CHECK(c[1] == Interval{2.0, 3.0});
  CHECK(std::string(band_kind_name(BandKind::AC)) != band_kind_name(BandKind::Modulus));
}
