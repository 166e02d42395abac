#include "hankel_spectra/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hankel_spectra/errors.hpp"
#include "hankel_spectra/quadrature.hpp"

namespace hankel::symbols {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kDuplicateTolerance = 1e-9;
constexpr double kImaginaryTolerance = 1e-12;

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

bool is_circle(const JumpDatum &j) {
  return std::holds_alternative<CirclePoint>(j.location);
}

const CirclePoint &circle_of(const JumpDatum &j) {
  return std::get<CirclePoint>(j.location);
}

const LinePoint &line_of(const JumpDatum &j) {
  return std::get<LinePoint>(j.location);
}

double location_distance(const Location &a, const Location &b) {
  if (std::holds_alternative<CirclePoint>(a)) {
    return angular_distance(std::get<CirclePoint>(a).angle,
                            std::get<CirclePoint>(b).angle);
  }
  const auto &la = std::get<LinePoint>(a);
  const auto &lb = std::get<LinePoint>(b);
  if (la.infinite || lb.infinite)
    return la.infinite == lb.infinite ? 0.0 : INFINITY;
  return std::abs(la.value - lb.value);
}

bool self_conjugate(const Location &loc) {
  if (const auto *c = std::get_if<CirclePoint>(&loc))
    return c->is_real(kDuplicateTolerance);
  return std::get<LinePoint>(loc).is_self_conjugate(kDuplicateTolerance);
}

Location partner_of(const Location &loc) {
  if (const auto *c = std::get_if<CirclePoint>(&loc))
    return c->conjugate();
  return std::get<LinePoint>(loc).reflected();
}

double sort_key(const Location &loc) {
  if (const auto *c = std::get_if<CirclePoint>(&loc))
    return c->angle;
  const auto &l = std::get<LinePoint>(loc);
  return l.infinite ? INFINITY : l.value;
}

std::string describe(const Location &loc) {
  if (const auto *c = std::get_if<CirclePoint>(&loc))
    return "angle " + std::to_string(c->angle);
  const auto &l = std::get<LinePoint>(loc);
  return l.infinite ? std::string("infinity") : "nu " + std::to_string(l.value);
}

Complex tail_value(const std::vector<double> &tail, double angle) {
  // Horner in mu = e^{i angle}.
  const Complex mu = std::polar(1.0, angle);
  Complex acc = 0.0;
  for (auto it = tail.rbegin(); it != tail.rend(); ++it)
    acc = acc * mu + *it;
  return acc;
}

void check_not_at_jump(const SymbolSpec &spec, const Location &where) {
  for (const auto &j : spec.jumps) {
    if (j.location.index() != where.index())
      continue;
    if (location_distance(j.location, where) <= kPointTolerance)
      throw EvaluationAtJump("symbol evaluated at its jump, " +
                             describe(where));
  }
}

// Circle value without the jump-proximity check (quadrature nodes).
Complex circle_value(const SymbolSpec &spec, double angle, bool with_tail);
Complex line_value(const SymbolSpec &spec, double nu);

Complex jump_model_circle(const std::vector<JumpDatum> &jumps, double angle) {
  Complex sum = 0.0;
  for (const auto &j : jumps) {
    const auto &a = circle_of(j);
    if (a.is_real(kDuplicateTolerance)) {
      const double kappa = j.value.imag() / 2.0;
      const int sign = angular_distance(a.angle, 0.0) < 1.0 ? +1 : -1;
      sum += kappa * models::v_symbol(angle, sign);
    } else if (a.angle < pi) {
      const double kappa = std::abs(j.value) / 2.0;
      const double psi = std::arg(j.value);
      const double phi = psi + a.angle - pi / 2.0;
      sum += kappa * models::omega_phi_theta(phi, a.angle, angle);
    }
  }
  return sum;
}

Complex jump_model_line(const std::vector<JumpDatum> &jumps, double nu) {
  Complex sum = 0.0;
  for (const auto &j : jumps) {
    const auto &b = line_of(j);
    if (b.infinite)
      sum += models::line_model_infinity(j.value, nu);
    else if (std::abs(b.value) <= kDuplicateTolerance)
      sum += models::line_model_zero(j.value, nu);
    else if (b.value < 0.0)
      sum += models::line_model_pair(j.value, b.value, nu);
  }
  return sum;
}

Complex circle_value(const SymbolSpec &spec, double angle, bool with_tail) {
  return std::visit(
      overloaded{
          [&](const JumpModelBody &body) -> Complex {
            Complex v = jump_model_circle(spec.jumps, angle);
            if (with_tail)
              v += tail_value(body.tail, angle);
            return v;
          },
          [&](const PresetBody &body) -> Complex {
            Complex v = body.scale * models::model_symbol(body.preset, angle);
            if (with_tail)
              v += tail_value(body.tail, angle);
            return v;
          },
          [&](const ConformalBody &body) -> Complex {
            const Complex mu = std::polar(1.0, angle);
            const Complex m = (mu - body.alpha) / (1.0 - body.alpha * mu);
            return m / mu * circle_value(*body.source, std::arg(m), true);
          },
          [&](const CayleyBody &) -> Complex {
            throw ValidationError("line symbol evaluated on the circle");
          }},
      spec.body);
}

Complex line_value(const SymbolSpec &spec, double nu) {
  return std::visit(
      overloaded{
          [&](const JumpModelBody &body) -> Complex {
            if (!body.tail.empty())
              throw ValidationError("coefficient tails are circle-only");
            return jump_model_line(spec.jumps, nu);
          },
          [&](const PresetBody &body) -> Complex {
            if (!body.tail.empty())
              throw ValidationError("coefficient tails are circle-only");
            return body.scale * models::model_symbol(body.preset, nu);
          },
          [&](const ConformalBody &) -> Complex {
            throw ValidationError("conformal bodies are circle-only");
          },
          [&](const CayleyBody &body) -> Complex {
            const Complex mu = (nu - 0.5 * kI) / (nu + 0.5 * kI);
            return -mu * circle_value(*body.source, std::arg(mu), true);
          }},
      spec.body);
}

std::optional<std::vector<double>> closed_form_coefficients(const PresetBody &body,
                                                            std::size_t count) {
  using models::PresetId;
  switch (body.preset.id) {
  case PresetId::OmegaPlus:
  case PresetId::OmegaMinus:
  case PresetId::HilbertCoeffs:
  case PresetId::AlternatingCoeffs:
  case PresetId::OscillatoryCoeffs:
    break;
  default:
    return std::nullopt;
  }
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = body.scale * models::discrete_model_coefficients(
                              body.preset, static_cast<long>(n));
    if (n < body.tail.size())
      out[n] += body.tail[n];
  }
  return out;
}

const std::vector<double> *tail_of(const SymbolBody &body) {
  if (const auto *j = std::get_if<JumpModelBody>(&body))
    return &j->tail;
  if (const auto *p = std::get_if<PresetBody>(&body))
    return &p->tail;
  return nullptr;
}

} // namespace

// ---------------------------------------------------------------------------

SymbolSpec make_preset_symbol(const models::ModelPreset &preset, double scale) {
  SymbolSpec spec;
  spec.representation = models::is_line_preset(preset) ? Representation::Line
                                                       : Representation::Circle;
  spec.body = PresetBody{preset, scale, {}};
  for (auto j : models::preset_jumps(preset)) {
    j.value *= scale;
    spec.jumps.push_back(j);
  }
  return spec;
}

SymbolSpec validate_symbol(const SymbolSpec &input) {
  if (!(input.beta0 > 0.0))
    throw NonPositiveBeta0("beta0 = " + std::to_string(input.beta0));
  SymbolSpec spec = input;
  if (const auto *p = std::get_if<PresetBody>(&spec.body)) {
    models::check_preset(p->preset);
    const bool line = models::is_line_preset(p->preset);
    if (line != (spec.representation == Representation::Line))
      throw ValidationError("preset " + models::preset_name(p->preset) +
                            " does not match the representation");
    if (spec.jumps.empty()) {
      for (auto j : models::preset_jumps(p->preset)) {
        j.value *= p->scale;
        spec.jumps.push_back(j);
      }
    }
  }
  const bool want_circle = spec.representation == Representation::Circle;

  std::vector<JumpDatum> kept;
  for (auto j : spec.jumps) {
    if (is_circle(j) != want_circle)
      throw ValidationError("jump location does not match the representation");
    if (is_circle(j))
      j.location = CirclePoint::at(circle_of(j).angle);
    if (std::abs(j.value) == 0.0)
      continue;
    for (const auto &k : kept)
      if (location_distance(k.location, j.location) < kDuplicateTolerance)
        throw DuplicateLocation(describe(j.location));
    kept.push_back(j);
  }

  std::vector<JumpDatum> completed = kept;
  for (const auto &j : kept) {
    if (self_conjugate(j.location)) {
      if (std::abs(j.value.real()) > kImaginaryTolerance)
        throw SelfAdjointnessViolation("jump at " + describe(j.location) +
                                       " must be purely imaginary");
      continue;
    }
    const Location partner = partner_of(j.location);
    const Complex expected = -std::conj(j.value);
    bool found = false;
    for (const auto &k : kept) {
      if (location_distance(k.location, partner) < kDuplicateTolerance) {
        found = true;
        if (std::abs(k.value - expected) >
            kImaginaryTolerance * std::max(1.0, std::abs(expected)))
          throw SelfAdjointnessViolation(
              "jump at " + describe(partner) +
              " must equal -conj of the jump at " + describe(j.location));
      }
    }
    if (!found) {
      bool already = false;
      for (const auto &k : completed)
        if (location_distance(k.location, partner) < kDuplicateTolerance)
          already = true;
      if (!already)
        completed.push_back({partner, expected});
    }
  }
  std::sort(completed.begin(), completed.end(),
            [](const JumpDatum &a, const JumpDatum &b) {
              return sort_key(a.location) < sort_key(b.location);
            });
  spec.jumps = std::move(completed);
  return spec;
}

NormalizedJumps normalize_jumps(const std::vector<JumpDatum> &jumps) {
  NormalizedJumps nj;
  for (const auto &j : jumps) {
    if (!is_circle(j))
      throw ValidationError("normalize_jumps expects circle jumps");
    const auto &a = circle_of(j);
    if (angular_distance(a.angle, 0.0) <= kDuplicateTolerance) {
      nj.kappa_plus = j.value.imag() / 2.0;
    } else if (angular_distance(a.angle, pi) <= kDuplicateTolerance) {
      nj.kappa_minus = j.value.imag() / 2.0;
    } else if (a.angle < pi) {
      nj.pairs.push_back({a.angle, std::abs(j.value) / 2.0, std::arg(j.value)});
    }
  }
  return nj;
}

NormalizedJumps normalize_jumps(const SymbolSpec &spec) {
  if (spec.representation != Representation::Circle)
    throw ValidationError("normalize_jumps expects a circle symbol");
  return normalize_jumps(spec.jumps);
}

LineNormalizedJumps normalize_line_jumps(const std::vector<JumpDatum> &jumps) {
  LineNormalizedJumps nj;
  for (const auto &j : jumps) {
    if (is_circle(j))
      throw ValidationError("normalize_line_jumps expects line jumps");
    const auto &b = line_of(j);
    if (b.infinite)
      nj.kappa_infinity = j.value.imag() / 2.0;
    else if (std::abs(b.value) <= kDuplicateTolerance)
      nj.kappa_zero = j.value.imag() / 2.0;
    else if (b.value < 0.0)
      nj.pairs.push_back({b.value, std::abs(j.value) / 2.0, std::arg(j.value)});
  }
  return nj;
}

std::vector<JumpDatum> reconstruct_jumps(const NormalizedJumps &nj) {
  std::vector<JumpDatum> out;
  if (nj.kappa_plus != 0.0)
    out.push_back({CirclePoint::plus_one(), 2.0 * kI * nj.kappa_plus});
  for (const auto &p : nj.pairs) {
    const Complex k = 2.0 * p.kappa * std::polar(1.0, p.psi);
    out.push_back({CirclePoint::at(p.theta), k});
    out.push_back({CirclePoint::at(-p.theta), -std::conj(k)});
  }
  if (nj.kappa_minus != 0.0)
    out.push_back({CirclePoint::minus_one(), 2.0 * kI * nj.kappa_minus});
  std::sort(out.begin(), out.end(), [](const JumpDatum &a, const JumpDatum &b) {
    return sort_key(a.location) < sort_key(b.location);
  });
  return out;
}

Complex evaluate(const SymbolSpec &spec, const CirclePoint &point) {
  if (spec.representation != Representation::Circle)
    throw ValidationError("circle point given to a line symbol");
  check_not_at_jump(spec, point);
  return circle_value(spec, point.angle, true);
}

Complex evaluate(const SymbolSpec &spec, double nu) {
  if (spec.representation != Representation::Line)
    throw ValidationError("real argument given to a circle symbol");
  check_not_at_jump(spec, LinePoint::finite(nu));
  return line_value(spec, nu);
}

std::vector<double> fourier_coefficients(const SymbolSpec &spec,
                                         std::size_t count,
                                         const FourierOptions &opt) {
  if (spec.representation != Representation::Circle)
    throw ValidationError("fourier_coefficients expects a circle symbol");
  if (count == 0)
    throw std::invalid_argument("count must be at least 1");
  if (opt.mode == FourierMode::Auto) {
    if (const auto *p = std::get_if<PresetBody>(&spec.body)) {
      if (auto closed = closed_form_coefficients(*p, count))
        return *closed;
    }
  }

  std::vector<double> breaks{0.0, kTwoPi};
  for (const auto &j : spec.jumps) {
    const double a = circle_of(j).angle;
    if (a > 0.0 && a < kTwoPi)
      breaks.push_back(a);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x < 1e-14; }),
               breaks.end());

  const auto *tail = tail_of(spec.body);
  const bool analytic_tail = tail != nullptr;

  quad::Options qopt;
  // The 1/(2pi) normalization is applied afterwards.
  qopt.abs_tol = opt.abs_tol * kTwoPi;
  qopt.max_subdivisions = opt.max_subdivisions;

  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double nn = static_cast<double>(n);
    auto integrand = [&](double angle) {
      return circle_value(spec, angle, !analytic_tail) *
             std::polar(1.0, -nn * angle);
    };
    const auto r = quad::integrate_pieces(integrand, breaks, qopt);
    const Complex h = r.value / kTwoPi;
    if (std::abs(h.imag()) > 1e-10)
      throw SelfAdjointnessViolation("coefficient " + std::to_string(n) +
                                     " has imaginary part " +
                                     std::to_string(h.imag()));
    out[n] = h.real();
    if (analytic_tail && n < tail->size())
      out[n] += (*tail)[n];
  }
  return out;
}

LinePoint cayley_location(const CirclePoint &a) {
  if (angular_distance(a.angle, 0.0) <= kPointTolerance)
    return LinePoint::infinity();
  const double half = 0.5 * a.angle;
  return LinePoint::finite(-0.5 * std::cos(half) / std::sin(half));
}

CirclePoint inverse_cayley_location(const LinePoint &b) {
  if (b.infinite)
    return CirclePoint::plus_one();
  const Complex mu = (b.value - 0.5 * kI) / (b.value + 0.5 * kI);
  return CirclePoint::from_complex(mu);
}

std::vector<JumpDatum> circle_to_line_jumps(const std::vector<JumpDatum> &jumps) {
  std::vector<JumpDatum> out;
  for (const auto &j : jumps) {
    const auto &a = circle_of(j);
    const LinePoint b = cayley_location(a);
    if (a.is_real(kDuplicateTolerance))
      out.push_back({b, j.value});
    else
      out.push_back({b, -a.value() * j.value});
  }
  std::sort(out.begin(), out.end(), [](const JumpDatum &x, const JumpDatum &y) {
    return sort_key(x.location) < sort_key(y.location);
  });
  return out;
}

std::vector<JumpDatum> line_to_circle_jumps(const std::vector<JumpDatum> &jumps) {
  std::vector<JumpDatum> out;
  for (const auto &j : jumps) {
    const auto &b = line_of(j);
    const CirclePoint a = inverse_cayley_location(b);
    if (b.is_self_conjugate(kDuplicateTolerance))
      out.push_back({a, j.value});
    else
      out.push_back({a, -j.value / a.value()});
  }
  std::sort(out.begin(), out.end(), [](const JumpDatum &x, const JumpDatum &y) {
    return sort_key(x.location) < sort_key(y.location);
  });
  return out;
}

SymbolSpec circle_to_line(const SymbolSpec &input) {
  if (input.representation != Representation::Circle)
    throw ValidationError("circle_to_line expects a circle symbol");
  const SymbolSpec spec = validate_symbol(input);
  SymbolSpec line;
  line.representation = Representation::Line;
  line.beta0 = spec.beta0;
  line.jumps = circle_to_line_jumps(spec.jumps);
  line.body = CayleyBody{std::make_shared<const SymbolSpec>(spec)};
  return line;
}

} // namespace hankel::symbols
