#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wignerlab {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. General purpose (no symmetry).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix conjugate_transpose() const;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

// Determinant by LU factorisation with partial pivoting.
Complex determinant(const ComplexMatrix& m);

// Solves A X = B for square A (partial-pivot LU). Throws on a singular A.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

// Dense n x n complex Hermitian matrix. Immutable after construction; the
// stored array always satisfies a(i,j) == conj(a(j,i)) bit-exactly and has a
// real diagonal.
class HermitianMatrix {
 public:
  // Accepts a nearly Hermitian array: asymmetry max|a - a^*| up to 1e-12
  // (relative to max(1, max|a_ij|)) is averaged away, anything larger throws.
  static HermitianMatrix from_dense(const ComplexMatrix& a);
  static HermitianMatrix from_real_rows(const std::vector<std::vector<double>>& rows);

  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);

  // Builds the matrix from its upper triangle: entry(i, j) is queried for
  // i <= j only, the lower triangle is its conjugate mirror and the diagonal
  // keeps the real part.
  template <class Entry>
  static HermitianMatrix from_upper(std::size_t n, Entry&& entry) {
    HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.data_[i * n + i] = Complex(std::real(Complex(entry(i, i))), 0.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        const Complex v(entry(i, j));
        m.data_[i * n + j] = v;
        m.data_[j * n + i] = std::conj(v);
      }
    }
    m.refresh_real_flag();
    return m;
  }

  std::size_t size() const { return n_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const Complex> data() const { return data_; }

  // True when every entry has zero imaginary part (real symmetric).
  bool is_real() const { return real_; }
  double max_abs_entry() const;

  ComplexMatrix to_dense() const;

  HermitianMatrix operator+(const HermitianMatrix& rhs) const;
  HermitianMatrix operator-(const HermitianMatrix& rhs) const;
  HermitianMatrix scaled(double factor) const;

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * n) {}
  void refresh_real_flag();

  std::size_t n_ = 0;
  std::vector<Complex> data_;
  bool real_ = true;
};

struct EigenDecomposition {
  // Sorted non-increasing: lambda_1 >= ... >= lambda_n.
  std::vector<double> eigenvalues;
  // Columns are orthonormal eigenvectors in the same order, when requested.
  std::optional<ComplexMatrix> basis;
  // Largest imaginary part dropped from a diagonal entry during the
  // reduction to real tridiagonal form (zero in exact arithmetic).
  double max_discarded_imag = 0.0;
};

// Householder reduction to real symmetric tridiagonal form followed by
// implicit-shift QL. O(n^3); the eigenvalue-only path skips all vector
// accumulation.
EigenDecomposition eigen_decompose(const HermitianMatrix& a, bool with_basis = true);

std::vector<double> eigenvalues_desc(const HermitianMatrix& a);

// sum_i lambda_i^k
double trace_power(const HermitianMatrix& a, int k);
double trace_power(std::span<const double> eigenvalues, int k);

double frobenius_norm(const HermitianMatrix& a);

// Number of eigenvalues with |lambda| > tol. Default tol is
// 1e-9 * n * max|a_ij|.
std::size_t numeric_rank(const HermitianMatrix& a, std::optional<double> tol = std::nullopt);

// Submatrix on the rows/columns listed in `keep` (0-based, any order,
// no duplicates). Throws "empty minor" for an empty index set.
HermitianMatrix principal_minor(const HermitianMatrix& a, std::span<const std::size_t> keep);

}  // namespace wignerlab
