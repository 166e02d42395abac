#pragma once

// Independent reference computations used only by the tests. None of these
// call the library's quadrature or eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

struct Rule {
  std::vector<double> x, w;
};

/// Gauss-Legendre on [-1, 1] by Newton iteration from Chebyshev guesses.
inline Rule gauss_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

template <class F>
auto gauss_panel(const Rule &r, F &&f, double a, double b) {
  using T = decltype(f(a));
  T s{};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (std::size_t i = 0; i < r.x.size(); ++i)
    s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

/// zeta(nu) = (1/pi) int_0^inf sin(nu t)/(2+t) dt summed half-period by
/// half-period, with the tail from repeated integration by parts.
inline double zeta_direct(double nu) {
  if (nu < 0)
    return -zeta_direct(-nu);
  static const Rule r = gauss_rule(24);
  const double half = pi / nu;
  const int k = static_cast<int>(std::ceil(2000.0 / pi)) + 1;
  double s = 0.0;
  auto f = [nu](double t) { return std::sin(nu * t) / (2.0 + t); };
  // 1/(2+t) varies on a unit scale: grade the first half period.
  double lo = 0.0;
  for (double hi = 0.5; hi < half; hi *= 2.0) {
    s += gauss_panel(r, f, lo, hi);
    lo = hi;
  }
  s += gauss_panel(r, f, lo, half);
  for (int j = 1; j < k; ++j)
    s += gauss_panel(r, f, j * half, (j + 1) * half);
  const double T = k * half;
  const double y = nu * (2.0 + T);
  const double c = (k % 2 == 0) ? 1.0 : -1.0; // cos(nu T)
  s += c / y * (1.0 - 2.0 / (y * y) + 24.0 / (y * y * y * y));
  return s / pi;
}

/// P_{-1/2+i tau}(cosh a) from the raw Mehler-Dirichlet integral with a
/// tanh-sinh rule clustering at the inverse-square-root endpoint s = a.
inline double legendre_tanh_sinh(double tau, double x) {
  if (x == 1.0)
    return 1.0;
  const double a = std::acosh(x);
  const double h = 1.0 / 64.0;
  double sum = 0.0;
  for (int k = -400; k <= 400; ++k) {
    const double t = k * h;
    const double u = 0.5 * pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    // 1 -+ tanh(u) without cancellation
    const double one_minus = u >= 0 ? 2.0 * e / (1.0 + e) : 2.0 / (1.0 + e);
    const double one_plus = 2.0 - one_minus;
    const double s = 0.5 * a * one_plus;
    const double gap = 0.5 * a * one_minus; // a - s
    if (gap <= 0.0 || s <= 0.0)
      continue;
    const double ch = std::cosh(u);
    const double weight = 0.5 * a * 0.5 * pi * std::cosh(t) / (ch * ch);
    if (weight == 0.0)
      continue;
    const double denom = 4.0 * std::sinh(0.5 * (a + s)) * std::sinh(0.5 * gap);
    sum += weight * std::cos(tau * s) / std::sqrt(denom);
  }
  return 2.0 / pi * sum * h;
}

/// Fourier coefficients int_0^{2pi} f(e^{i psi}) e^{-i n psi} dpsi / (2pi)
/// with panels graded geometrically toward the endpoints 0 and 2pi (where
/// the jump sits) and uniform panels in between.
inline std::vector<Complex> graded_fourier(const std::function<Complex(double)> &f,
                                           int count) {
  static const Rule r = gauss_rule(16);
  std::vector<double> edges;
  const double first = 0.25;
  for (int k = 30; k >= 0; --k)
    edges.push_back(first * std::pow(0.5, k));
  const int middle = 96;
  const double last = 2.0 * pi - first;
  for (int k = 1; k <= middle; ++k)
    edges.push_back(first + (last - first) * k / middle);
  for (int k = 1; k <= 30; ++k)
    edges.push_back(2.0 * pi - first * std::pow(0.5, k));
  std::vector<Complex> out(count);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double psi = c + h * r.x[i];
      const Complex v = f(psi) * (r.w[i] * h);
      for (int n = 0; n < count; ++n)
        out[n] += v * std::polar(1.0, -n * psi);
    }
  }
  for (auto &v : out)
    v /= 2.0 * pi;
  return out;
}

/// Cyclic Jacobi eigenvalues of a dense symmetric matrix (row-major).
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double & { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        off += at(i, j) * at(i, j);
    if (off < 1e-30)
      break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300)
          continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i)
    ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Extreme eigenvalues {min, max} of the Hankel section [h_{i+j}] from `steps`
/// Lanczos steps with full reorthogonalization; Ritz values by Jacobi.
inline std::pair<double, double> lanczos_extremes(const std::vector<double> &h, int n,
                                                  int steps) {
  std::vector<std::vector<double>> q;
  std::vector<double> v(n), alpha, beta;
  unsigned long long state = 88172645463325252ULL; // xorshift start vector
  for (auto &x : v) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    x = static_cast<double>(state % 1000003) / 1000003.0 - 0.5;
  }
  auto normalize = [&](std::vector<double> &x) {
    double s = 0.0;
    for (double y : x)
      s += y * y;
    s = std::sqrt(s);
    for (auto &y : x)
      y /= s;
    return s;
  };
  normalize(v);
  for (int k = 0; k < steps; ++k) {
    q.push_back(v);
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w[i] += h[i + j] * v[j];
    double a = 0.0;
    for (int i = 0; i < n; ++i)
      a += w[i] * v[i];
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &qq : q) {
        double c = 0.0;
        for (int i = 0; i < n; ++i)
          c += w[i] * qq[i];
        for (int i = 0; i < n; ++i)
          w[i] -= c * qq[i];
      }
    const double b = normalize(w);
    if (k + 1 == steps || b < 1e-14)
      break;
    beta.push_back(b);
    v = w;
  }
  const int m = static_cast<int>(alpha.size());
  std::vector<double> t(m * m, 0.0);
  for (int i = 0; i < m; ++i) {
    t[i * m + i] = alpha[i];
    if (i + 1 < m)
      t[i * m + i + 1] = t[(i + 1) * m + i] = beta[i];
  }
  const auto ritz = jacobi_eigenvalues(t, m);
  return {ritz.front(), ritz.back()};
}

/// One-sided difference f(x + eps) - f(x - eps).
template <class F> Complex measured_jump(F &&f, double x, double eps) {
  return f(x + eps) - f(x - eps);
}

} // namespace oracle
