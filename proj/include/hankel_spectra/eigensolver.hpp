#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hankel::linalg {

/// Dense real symmetric matrix, row-major, both triangles stored.
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  /// Writes both (i, j) and (j, i), so symmetry holds by construction.
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  const std::vector<double> &data() const { return a_; }
  double *row(std::size_t i) { return a_.data() + i * n_; }
  const double *row(std::size_t i) const { return a_.data() + i * n_; }

private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off; // off[k] couples k and k+1
};

/// Householder reduction A = Q T Q^T with Q kept as a product of reflectors
/// H_k = I - tau_k v_k v_k^T acting on indices k+1..n-1.
class HouseholderTridiagonal {
public:
  explicit HouseholderTridiagonal(SymmetricMatrix a);

  const Tridiagonal &tridiagonal() const { return t_; }
  std::size_t order() const { return n_; }
  /// x <- Q^T x
  void apply_qt(std::vector<std::complex<double>> &x) const;
  /// x <- Q x
  void apply_q(std::vector<std::complex<double>> &x) const;

private:
  std::size_t n_ = 0;
  SymmetricMatrix work_; // reflector vectors below the subdiagonal
  std::vector<double> tau_;
  Tridiagonal t_;
};

/// Values-only Householder tridiagonalization.
Tridiagonal tridiagonalize(SymmetricMatrix a);

/// Implicit-shift QL on a symmetric tridiagonal matrix; ascending output.
/// Throws NonConvergence when more than 30 n iterations are needed.
std::vector<double> tridiagonal_eigenvalues(Tridiagonal t);

/// All eigenvalues of A, ascending (tridiagonalization + implicit QL).
std::vector<double> eigenvalues_symmetric(const SymmetricMatrix &a);

/// Solves (T - z) y = rhs for complex z by Gaussian elimination with
/// partial pivoting.
std::vector<std::complex<double>> tridiagonal_shifted_solve(
    const Tridiagonal &t, std::complex<double> z,
    std::vector<std::complex<double>> rhs);

} // namespace hankel::linalg
