#include "hankel_spectra/predict.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hankel_spectra/errors.hpp"

namespace hankel::predict {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr Complex kTwoI{0.0, 2.0};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void attach_thresholds(SpectralPrediction &p) { p.thresholds = thresholds(p.ac_bands); }

void check_distinct(std::vector<double> values, const char *what) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] <= kMergeTol)
      throw DuplicateFrequency(std::string(what) + " " + fmt(values[i]) +
                               " appears twice");
}

} // namespace

bool Segment::same_as(const Segment &o, double tol) const {
  return (std::abs(a - o.a) <= tol && std::abs(b - o.b) <= tol) ||
         (std::abs(a - o.b) <= tol && std::abs(b - o.a) <= tol);
}

Band make_band(double x, double y, BandKind kind, std::string origin) {
  Band band;
  band.lo = std::min(x, y);
  band.hi = std::max(x, y);
  band.kind = kind;
  band.origin = std::move(origin);
  return band;
}

const char *band_kind_name(BandKind kind) {
  return kind == BandKind::AC ? "ac" : "modulus";
}

std::vector<Segment> essential_spectrum(const std::vector<JumpDatum> &jumps) {
  std::vector<Segment> out;
  for (const auto &j : jumps) {
    const auto &a = std::get<CirclePoint>(j.location);
    if (a.is_real(1e-9)) {
      out.push_back({0.0, j.value / kTwoI});
      continue;
    }
    if (a.angle > std::numbers::pi)
      continue; // handled with its upper-half-plane partner
    const CirclePoint partner = a.conjugate();
    const JumpDatum *other = nullptr;
    for (const auto &k : jumps)
      if (same_point(std::get<CirclePoint>(k.location), partner, 1e-9))
        other = &k;
    if (other == nullptr) {
      out.push_back({0.0, 0.0});
      continue;
    }
    const Complex w = std::sqrt(j.value * other->value) / kTwoI;
    out.push_back({-w, w});
  }
  // Lower-half-plane jumps whose partner is missing also give {0}.
  for (const auto &j : jumps) {
    const auto &a = std::get<CirclePoint>(j.location);
    if (a.is_real(1e-9) || a.angle < std::numbers::pi)
      continue;
    bool paired = false;
    for (const auto &k : jumps)
      if (same_point(std::get<CirclePoint>(k.location), a.conjugate(), 1e-9))
        paired = true;
    if (!paired)
      out.push_back({0.0, 0.0});
  }
  return out;
}

std::vector<Band> ac_spectrum(const symbols::NormalizedJumps &nj) {
  std::vector<Band> out;
  if (nj.kappa_plus != 0.0)
    out.push_back(make_band(0.0, nj.kappa_plus, BandKind::AC, "plus"));
  if (nj.kappa_minus != 0.0)
    out.push_back(make_band(0.0, nj.kappa_minus, BandKind::AC, "minus"));
  for (const auto &p : nj.pairs)
    out.push_back(make_band(-p.kappa, p.kappa, BandKind::AC, "pair:" + fmt(p.theta)));
  return out;
}

std::vector<Band> ac_spectrum(const symbols::LineNormalizedJumps &nj) {
  std::vector<Band> out;
  if (nj.kappa_infinity != 0.0)
    out.push_back(make_band(0.0, nj.kappa_infinity, BandKind::AC, "infinity"));
  if (nj.kappa_zero != 0.0)
    out.push_back(make_band(0.0, nj.kappa_zero, BandKind::AC, "zero"));
  for (const auto &p : nj.pairs)
    out.push_back(make_band(-p.kappa, p.kappa, BandKind::AC, "pair:" + fmt(p.b)));
  return out;
}

std::vector<Band> modulus_spectrum(const std::vector<JumpDatum> &jumps) {
  std::vector<Band> out;
  for (const auto &j : jumps) {
    std::string origin;
    if (const auto *c = std::get_if<CirclePoint>(&j.location))
      origin = "angle:" + fmt(c->angle);
    else {
      const auto &l = std::get<LinePoint>(j.location);
      origin = l.infinite ? std::string("infinity") : "nu:" + fmt(l.value);
    }
    out.push_back(make_band(0.0, std::abs(j.value) / 2.0, BandKind::Modulus, origin));
  }
  return out;
}

std::vector<double> thresholds(const std::vector<Band> &bands) {
  std::vector<double> pts{0.0};
  for (const auto &b : bands) {
    pts.push_back(b.lo);
    pts.push_back(b.hi);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts)
    if (out.empty() || x - out.back() > kMergeTol)
      out.push_back(x);
  return out;
}

std::vector<double> thresholds(const SpectralPrediction &p) {
  return thresholds(p.ac_bands);
}

SpectralPrediction predict(const symbols::SymbolSpec &input) {
  const auto spec = symbols::validate_symbol(input);
  SpectralPrediction p;
  if (spec.representation == symbols::Representation::Circle) {
    p.essential = essential_spectrum(spec.jumps);
    p.ac_bands = ac_spectrum(symbols::normalize_jumps(spec));
  } else {
    p.essential = essential_spectrum(symbols::line_to_circle_jumps(spec.jumps));
    p.ac_bands = ac_spectrum(symbols::normalize_line_jumps(spec.jumps));
  }
  p.modulus_bands = modulus_spectrum(spec.jumps);
  p.ac_theorem_applies = spec.beta0 > 1.0;
  p.point_spectrum_theorem_applies = spec.beta0 > 2.0;
  attach_thresholds(p);
  return p;
}

SpectralPrediction predict_from_coefficient_model(const CoefficientModel &m) {
  std::vector<double> thetas;
  for (const auto &t : m.terms) {
    if (!(t.theta > 0.0 && t.theta < std::numbers::pi))
      throw ValidationError("frequency theta must lie in (0, pi), got " + fmt(t.theta));
    thetas.push_back(t.theta);
  }
  check_distinct(thetas, "frequency theta");

  // A jump k at e^{i theta} (partner -conj k) gives h_n ~ Im(k e^{-i n theta})/(pi n),
  // so the model has jumps 2i kappa_+ at 1, 2i kappa_- at -1 and
  // -2 kappa_j e^{i phi_j} at e^{i theta_j}.
  std::vector<JumpDatum> jumps;
  if (m.kappa_plus != 0.0)
    jumps.push_back({CirclePoint::plus_one(), kTwoI * m.kappa_plus});
  if (m.kappa_minus != 0.0)
    jumps.push_back({CirclePoint::minus_one(), kTwoI * m.kappa_minus});
  for (const auto &t : m.terms) {
    if (t.kappa == 0.0)
      continue;
    const Complex k = -2.0 * t.kappa * std::polar(1.0, t.phi);
    jumps.push_back({CirclePoint::at(t.theta), k});
    jumps.push_back({CirclePoint::at(-t.theta), -std::conj(k)});
  }

  SpectralPrediction p;
  p.essential = essential_spectrum(jumps);
  if (m.kappa_plus != 0.0)
    p.ac_bands.push_back(make_band(0.0, m.kappa_plus, BandKind::AC, "plus"));
  if (m.kappa_minus != 0.0)
    p.ac_bands.push_back(make_band(0.0, m.kappa_minus, BandKind::AC, "minus"));
  for (const auto &t : m.terms)
    if (t.kappa != 0.0)
      p.ac_bands.push_back(make_band(-std::abs(t.kappa), std::abs(t.kappa),
                                     BandKind::AC, "pair:" + fmt(t.theta)));
  p.modulus_bands = modulus_spectrum(jumps);
  p.ac_theorem_applies = m.alpha0 > 2.0;
  p.point_spectrum_theorem_applies = m.alpha0 > 3.0;
  attach_thresholds(p);
  return p;
}

SpectralPrediction predict_from_kernel_model(const KernelModel &m) {
  std::vector<double> bs;
  for (const auto &t : m.terms) {
    if (t.b == 0.0)
      throw ValidationError("kernel frequency b must be nonzero");
    bs.push_back(std::abs(t.b));
  }
  check_distinct(bs, "kernel frequency b");

  // Line symbol jumps: the t -> infinity tail h_inf/(pi t) gives 2i h_inf at
  // nu = 0, the t -> 0 singularity h_0/(pi t) gives 2i h_0 at nu = infinity,
  // and 2 h_j sin(b_j t - phi_j)/(pi t) gives -2 h_j e^{i phi_j} at b_j.
  std::vector<JumpDatum> line;
  const bool with_zero = !m.regular_at_zero && m.h0 != 0.0;
  if (m.h_infinity != 0.0)
    line.push_back({LinePoint::finite(0.0), kTwoI * m.h_infinity});
  if (with_zero)
    line.push_back({LinePoint::infinity(), kTwoI * m.h0});
  for (const auto &t : m.terms) {
    if (t.h == 0.0)
      continue;
    const Complex k = -2.0 * t.h * std::polar(1.0, t.phi);
    line.push_back({LinePoint::finite(t.b), k});
    line.push_back({LinePoint::finite(-t.b), -std::conj(k)});
  }

  SpectralPrediction p;
  p.essential = essential_spectrum(symbols::line_to_circle_jumps(line));
  if (with_zero)
    p.ac_bands.push_back(make_band(0.0, m.h0, BandKind::AC, "zero"));
  if (m.h_infinity != 0.0)
    p.ac_bands.push_back(make_band(0.0, m.h_infinity, BandKind::AC, "infinity"));
  for (const auto &t : m.terms)
    if (t.h != 0.0)
      p.ac_bands.push_back(make_band(-std::abs(t.h), std::abs(t.h), BandKind::AC,
                                     "pair:" + fmt(t.b)));
  p.modulus_bands = modulus_spectrum(line);
  p.ac_theorem_applies = m.alpha0 > 2.0;
  p.point_spectrum_theorem_applies = m.alpha0 > 3.0;
  attach_thresholds(p);
  return p;
}

std::vector<std::pair<double, double>> coverage(const std::vector<Band> &bands,
                                                double tol) {
  std::vector<std::pair<double, double>> iv;
  for (const auto &b : bands)
    iv.emplace_back(b.lo, b.hi);
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> out;
  for (const auto &x : iv) {
    if (!out.empty() && x.first <= out.back().second + tol)
      out.back().second = std::max(out.back().second, x.second);
    else
      out.push_back(x);
  }
  return out;
}

std::vector<std::pair<double, double>> real_coverage(const std::vector<Segment> &segments,
                                                     double tol) {
  std::vector<Band> bands;
  for (const auto &s : segments) {
    if (!s.is_real(tol))
      continue;
    bands.push_back(make_band(s.a.real(), s.b.real(), BandKind::AC, ""));
  }
  return coverage(bands, tol);
}

} // namespace hankel::predict
