#include "hankel_spectra/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hankel_spectra/errors.hpp"

namespace hankel::linalg {

namespace {

using Complex = std::complex<double>;

// Reduces the lower triangle of `a` in place. On return a(k+1, k) holds
// nothing useful; the reflector for step k is stored in a(k+2.., k) with
// an implicit leading 1 at row k+1.
Tridiagonal reduce(SymmetricMatrix &a, std::vector<double> &tau) {
  const std::size_t n = a.order();
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.off.assign(n > 0 ? n - 1 : 0, 0.0);
  tau.assign(n > 1 ? n - 1 : 0, 0.0);
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    // x = a(k+1.., k)
    double sigma = 0.0;
    for (std::size_t i = k + 2; i < n; ++i)
      sigma += a(i, k) * a(i, k);
    const double x0 = a(k + 1, k);
    if (sigma == 0.0) {
      tau[k] = 0.0;
      t.off[k] = x0;
      for (std::size_t i = k + 2; i < n; ++i)
        a.row(i)[k] = 0.0;
      continue;
    }
    const double norm = std::sqrt(x0 * x0 + sigma);
    const double beta = x0 <= 0.0 ? norm : -norm;
    const double v0 = x0 - beta;
    tau[k] = (beta - x0) / beta;
    t.off[k] = beta;
    const std::size_t m0 = k + 1;
    v[m0] = 1.0;
    for (std::size_t i = k + 2; i < n; ++i) {
      v[i] = a(i, k) / v0;
      a.row(i)[k] = v[i];
    }
    // p = tau * A22 v using the lower triangle.
    std::fill(p.begin() + m0, p.end(), 0.0);
    for (std::size_t i = m0; i < n; ++i) {
      const double *ri = a.row(i);
      double acc = 0.0;
      const double vi = v[i];
      for (std::size_t j = m0; j < i; ++j) {
        acc += ri[j] * v[j];
        p[j] += ri[j] * vi;
      }
      p[i] += acc + ri[i] * vi;
    }
    double pv = 0.0;
    for (std::size_t i = m0; i < n; ++i) {
      p[i] *= tau[k];
      pv += p[i] * v[i];
    }
    const double half = 0.5 * tau[k] * pv;
    for (std::size_t i = m0; i < n; ++i)
      p[i] -= half * v[i]; // p is now w
    for (std::size_t i = m0; i < n; ++i) {
      double *ri = a.row(i);
      const double vi = v[i], wi = p[i];
      for (std::size_t j = m0; j <= i; ++j)
        ri[j] -= vi * p[j] + wi * v[j];
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    t.diag[k] = a(k, k);
  if (n >= 2)
    t.off[n - 2] = a(n - 1, n - 2);
  return t;
}

} // namespace

HouseholderTridiagonal::HouseholderTridiagonal(SymmetricMatrix a)
    : n_(a.order()), work_(std::move(a)) {
  t_ = reduce(work_, tau_);
}

void HouseholderTridiagonal::apply_qt(std::vector<Complex> &x) const {
  // Q^T = H_{n-3} ... H_0: apply H_0 first.
  for (std::size_t k = 0; k + 2 < n_; ++k) {
    if (tau_[k] == 0.0)
      continue;
    Complex s = x[k + 1];
    for (std::size_t i = k + 2; i < n_; ++i)
      s += work_(i, k) * x[i];
    s *= tau_[k];
    x[k + 1] -= s;
    for (std::size_t i = k + 2; i < n_; ++i)
      x[i] -= s * work_(i, k);
  }
}

void HouseholderTridiagonal::apply_q(std::vector<Complex> &x) const {
  for (std::size_t kk = n_ >= 2 ? n_ - 2 : 0; kk-- > 0;) {
    const std::size_t k = kk;
    if (tau_[k] == 0.0)
      continue;
    Complex s = x[k + 1];
    for (std::size_t i = k + 2; i < n_; ++i)
      s += work_(i, k) * x[i];
    s *= tau_[k];
    x[k + 1] -= s;
    for (std::size_t i = k + 2; i < n_; ++i)
      x[i] -= s * work_(i, k);
  }
}

Tridiagonal tridiagonalize(SymmetricMatrix a) {
  std::vector<double> tau;
  return reduce(a, tau);
}

std::vector<double> tridiagonal_eigenvalues(Tridiagonal t) {
  const std::size_t n = t.diag.size();
  std::vector<double> &d = t.diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    e[i] = t.off[i];
  const std::size_t budget = 30 * std::max<std::size_t>(n, 1);
  std::size_t iterations = 0;
  // Deflation relative to the matrix scale (as in EISPACK tql2); a purely
  // local test never fires on blocks of tiny or denormal entries.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(d[i]) + std::abs(e[i]));
  const double small = std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m)
        if (std::abs(e[m]) <= small)
          break;
      if (m == l)
        break;
      if (++iterations > budget)
        throw NonConvergence("implicit QL exceeded " + std::to_string(budget) +
                             " iterations");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated)
        continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigenvalues_symmetric(const SymmetricMatrix &a) {
  return tridiagonal_eigenvalues(tridiagonalize(a));
}

std::vector<Complex> tridiagonal_shifted_solve(const Tridiagonal &t, Complex z,
                                               std::vector<Complex> b) {
  const std::size_t n = t.diag.size();
  if (n == 0)
    return b;
  // Banded LU with row interchanges: row i keeps dl (sub), d (diag),
  // du (super) and du2 (second super, filled by pivoting).
  std::vector<Complex> dl(n, 0.0), d(n), du(n, 0.0), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = t.diag[i] - z;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dl[i] = t.off[i];
    du[i] = t.off[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0)
        throw SingularShift("singular shifted tridiagonal system");
      const Complex f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      du2[i] = 0.0;
    } else {
      const Complex f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const Complex tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
    }
  }
  if (d[n - 1] == 0.0)
    throw SingularShift("singular shifted tridiagonal system");
  b[n - 1] /= d[n - 1];
  if (n > 1)
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;)
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  return b;
}

} // namespace hankel::linalg
