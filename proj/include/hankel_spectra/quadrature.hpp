#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hankel_spectra/errors.hpp"

namespace hankel::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
  // When false, hitting the budget returns the best estimate instead of
  // throwing.
  bool throw_on_failure = true;
};

template <class T> struct Result {
  T value{};
  double error = 0.0;
  std::size_t subdivisions = 0;
  bool converged = true;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double> &x) { return std::abs(x); }

template <class T> struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment &o) const { return error < o.error; }
};

template <class F>
auto gauss_kronrod_15(F &&f, double a, double b)
    -> Segment<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const T sum = f(c - dx) + f(c + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1)
      gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) on [a, b]. The interval with the
/// largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol*|I|).
template <class F>
auto integrate(F &&f, double a, double b, const Options &opt = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b)
    return out;
  std::priority_queue<detail::Segment<T>> heap;
  auto first = detail::gauss_kronrod_15(f, a, b);
  T total = first.value;
  double err = first.error;
  heap.push(first);
  std::size_t splits = 0;
  auto tolerance = [&] {
    return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
  };
  while (err > tolerance()) {
    if (splits >= opt.max_subdivisions) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval exhausted at machine resolution.
      out.converged = false;
      heap.push(worst);
      break;
    }
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to shed the drift of the running updates.
  T resum{};
  double reerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    reerr += heap.top().error;
    heap.pop();
  }
  out.value = resum;
  out.error = reerr;
  out.subdivisions = splits;
  if (!out.converged && opt.throw_on_failure)
    throw QuadratureNonConvergence(
        "error estimate " + std::to_string(reerr) + " above tolerance on [" +
        std::to_string(a) + ", " + std::to_string(b) + "]");
  return out;
}

/// Sum of integrate() over consecutive breakpoints; the tolerance is shared
/// evenly among the pieces.
template <class F>
auto integrate_pieces(F &&f, std::span<const double> breakpoints,
                      const Options &opt = {})
    -> Result<std::decay_t<decltype(f(breakpoints[0]))>> {
  using T = std::decay_t<decltype(f(breakpoints[0]))>;
  Result<T> out;
  if (breakpoints.size() < 2)
    return out;
  Options piece = opt;
  piece.abs_tol = opt.abs_tol / static_cast<double>(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    auto r = integrate(f, breakpoints[i], breakpoints[i + 1], piece);
    out.value += r.value;
    out.error += r.error;
    out.subdivisions += r.subdivisions;
    out.converged = out.converged && r.converged;
  }
  return out;
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussRule gauss_legendre(std::size_t n);

} // namespace hankel::quad
