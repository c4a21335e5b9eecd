#include "wignerlab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wignerlab {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < n_; ++l) {
      const Complex a = (*this)(i, l);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(l, j);
    }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign, or 0 when
// an exactly zero pivot is met.
int lu_factor(ComplexMatrix& m, std::vector<std::size_t>& perm) {
  const std::size_t n = m.size();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > best) best = std::abs(m(i, k)), p = i;
    if (best == 0.0) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / m(k, k);
      m(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return sign;
}

}  // namespace

Complex determinant(const ComplexMatrix& m) {
  ComplexMatrix lu = m;
  std::vector<std::size_t> perm;
  const int sign = lu_factor(lu, perm);
  if (sign == 0) return 0.0;
  Complex det = static_cast<double>(sign);
  for (std::size_t i = 0; i < lu.size(); ++i) det *= lu(i, i);
  return det;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("matrix size mismatch");
  ComplexMatrix lu = a;
  std::vector<std::size_t> perm;
  if (lu_factor(lu, perm) == 0) throw std::domain_error("singular matrix");
  ComplexMatrix x(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b(perm[i], col);
      for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x(j, col);
      x(i, col) = s / lu(i, i);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

void HermitianMatrix::refresh_real_flag() {
  real_ = std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

HermitianMatrix HermitianMatrix::from_dense(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  double scale = 1.0;
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(a(i, j)));
      asym = std::max(asym, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  if (asym > 1e-12 * scale)
    throw std::invalid_argument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  return from_upper(n, [&](std::size_t i, std::size_t j) {
    return 0.5 * (a(i, j) + std::conj(a(j, i)));
  });
}

HermitianMatrix HermitianMatrix::from_real_rows(const std::vector<std::vector<double>>& rows) {
  ComplexMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return from_dense(m);
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) { return HermitianMatrix(n); }

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  HermitianMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i * values.size() + i] = values[i];
  return m;
}

double HermitianMatrix::max_abs_entry() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix HermitianMatrix::to_dense() const {
  ComplexMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  return from_upper(n_, [&](std::size_t i, std::size_t j) { return (*this)(i, j) + rhs(i, j); });
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  return from_upper(n_, [&](std::size_t i, std::size_t j) { return (*this)(i, j) - rhs(i, j); });
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return from_upper(n_, [&](std::size_t i, std::size_t j) { return factor * (*this)(i, j); });
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return std::norm(z); }
inline double re(double x) { return x; }
inline double re(const Complex& z) { return z.real(); }
inline double im(double) { return 0.0; }
inline double im(const Complex& z) { return z.imag(); }

template <class T>
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<T> sub;  // sub[k] = T(k+1, k); size n-1
  double max_discarded_imag = 0.0;
  // Reflector k acts on indices k+1..n-1: H_k = I - beta_k u_k u_k^*.
  std::vector<std::vector<T>> reflectors;
  std::vector<double> betas;
};

// Householder reduction A -> H_{n-2} ... H_0 A H_0 ... H_{n-2} with Hermitian
// reflectors. `a` is a full row-major copy that is destroyed.
//
// One pass per step: while the trailing block is updated for step k, its
// product with the next reflector is accumulated row by row, so the block is
// streamed through memory once per step instead of twice.
template <class T>
Tridiagonal<T> tridiagonalize(std::vector<T>& a, std::size_t n, bool keep_reflectors) {
  Tridiagonal<T> out;
  out.diag.assign(n, 0.0);
  out.sub.assign(n > 0 ? n - 1 : 0, T{});
  if (keep_reflectors) {
    out.reflectors.resize(n > 0 ? n - 1 : 0);
    out.betas.assign(n > 0 ? n - 1 : 0, 0.0);
  }
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };

  std::vector<T> u(n), p(n), q(n);
  // Builds the reflector for step k from row k (conj of column k) and
  // returns beta; fills u[0..m). Returns 0 when no reflection is needed.
  auto make_reflector = [&](std::size_t k, T& sub_out) -> double {
    const std::size_t off = k + 1, m = n - off;
    const T* row = &at(k, off);
    double tail = 0.0;
    for (std::size_t j = 1; j < m; ++j) tail += abs2(row[j]);
    const T x0 = conj_of(row[0]);
    if (tail == 0.0) {
      sub_out = x0;
      return 0.0;
    }
    const double ax0 = std::sqrt(abs2(x0));
    const double alpha = std::sqrt(abs2(x0) + tail);
    const T phase = ax0 == 0.0 ? T(1.0) : x0 / ax0;
    sub_out = -phase * alpha;
    u[0] = x0 + phase * alpha;
    for (std::size_t j = 1; j < m; ++j) u[j] = conj_of(row[j]);
    const double unorm2 = 2.0 * alpha * alpha + 2.0 * alpha * ax0;
    return 2.0 / unorm2;
  };

  if (n == 0) return out;
  std::vector<T> saved_u(n), saved_q(n);
  bool have_p = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out.diag[k] = re(at(k, k));
    out.max_discarded_imag = std::max(out.max_discarded_imag, std::abs(im(at(k, k))));
    const std::size_t off = k + 1, m = n - off;
    const double beta = make_reflector(k, out.sub[k]);
    if (beta == 0.0) {
      have_p = false;
      continue;
    }
    if (keep_reflectors) {
      out.reflectors[k].assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(m));
      out.betas[k] = beta;
    }
    if (!have_p) {
      for (std::size_t r = 0; r < m; ++r) {
        const T* row = &at(off + r, off);
        T s{};
        for (std::size_t c = 0; c < m; ++c) s += row[c] * u[c];
        p[r] = beta * s;
      }
    }
    T upd{};
    for (std::size_t c = 0; c < m; ++c) upd += conj_of(u[c]) * p[c];
    const double kfac = 0.5 * beta * re(upd);
    for (std::size_t c = 0; c < m; ++c) {
      q[c] = p[c] - kfac * u[c];
      saved_u[c] = u[c];
      saved_q[c] = q[c];
    }

    // Rank-2 update A22 -= u q^* + q u^*.
    auto update_row = [&](std::size_t r) {
      T* row = &at(off + r, off);
      const T ur = saved_u[r], qr = saved_q[r];
      for (std::size_t c = 0; c < m; ++c)
        row[c] -= ur * conj_of(saved_q[c]) + qr * conj_of(saved_u[c]);
      return row;
    };
    update_row(0);
    // Row 0 of the block is final, so the next reflector is known now and
    // its matrix-vector product rides along with the remaining row updates.
    double next_beta = 0.0;
    if (m >= 3) {
      T ignored{};
      next_beta = make_reflector(off, ignored);
    }
    for (std::size_t r = 1; r < m; ++r) {
      const T* row = update_row(r);
      if (next_beta != 0.0) {
        T s{};
        for (std::size_t c = 1; c < m; ++c) s += row[c] * u[c - 1];
        p[r - 1] = next_beta * s;
      }
    }
    have_p = next_beta != 0.0;
  }
  out.diag[n - 1] = re(at(n - 1, n - 1));
  out.max_discarded_imag = std::max(out.max_discarded_imag, std::abs(im(at(n - 1, n - 1))));
  return out;
}

// Implicit-shift QL on a real symmetric tridiagonal matrix. `e[i]` couples
// i and i+1; e has size n with e[n-1] unused. When z is non-null it is an
// n x n row-major matrix whose columns are rotated alongside.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 200) throw std::runtime_error("tridiagonal QL failed to converge");
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
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              double* zk = z->data() + k * n;
              f = zk[i + 1];
              zk[i + 1] = s * zk[i] + c * f;
              zk[i] = c * zk[i] - s * f;
            }
          }
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

template <class T>
EigenDecomposition decompose(const HermitianMatrix& a, bool with_basis) {
  const std::size_t n = a.size();
  std::vector<T> work(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if constexpr (std::is_same_v<T, double>)
      work[i] = a.data()[i].real();
    else
      work[i] = a.data()[i];
  }
  Tridiagonal<T> tri = tridiagonalize(work, n, with_basis);
  work.clear();
  work.shrink_to_fit();

  // Unitary diagonal scaling makes the subdiagonal real and nonnegative.
  std::vector<T> phase(n, T(1.0));
  std::vector<double> e(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mag = std::sqrt(abs2(tri.sub[k]));
    e[k] = mag;
    phase[k + 1] = mag == 0.0 ? phase[k] : phase[k] * (tri.sub[k] / mag);
  }

  EigenDecomposition out;
  out.max_discarded_imag = tri.max_discarded_imag;
  std::vector<double> d = tri.diag;
  std::vector<double> z;
  if (with_basis) {
    z.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  }
  tridiagonal_ql(d, e, with_basis ? &z : nullptr);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = d[order[i]];

  if (with_basis) {
    // Q = H_0 H_1 ... H_{n-2}
    ComplexMatrix q = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (tri.betas[k] == 0.0) continue;
      const auto& u = tri.reflectors[k];
      const std::size_t off = k + 1;
      for (std::size_t r = 0; r < n; ++r) {
        Complex s{};
        for (std::size_t c = 0; c < u.size(); ++c) s += q(r, off + c) * Complex(u[c]);
        s *= tri.betas[k];
        for (std::size_t c = 0; c < u.size(); ++c) q(r, off + c) -= s * std::conj(Complex(u[c]));
      }
    }
    ComplexMatrix basis(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += q(r, j) * Complex(phase[j]) * z[j * n + src];
        basis(r, col) = s;
      }
    out.basis = std::move(basis);
  }
  return out;
}

}  // namespace

EigenDecomposition eigen_decompose(const HermitianMatrix& a, bool with_basis) {
  if (a.is_real()) return decompose<double>(a, with_basis);
  return decompose<Complex>(a, with_basis);
}

std::vector<double> eigenvalues_desc(const HermitianMatrix& a) {
  return eigen_decompose(a, false).eigenvalues;
}

double trace_power(std::span<const double> eigenvalues, int k) {
  if (k < 1) throw std::invalid_argument("trace_power requires k >= 1");
  double s = 0.0;
  for (double l : eigenvalues) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= l;
    s += v;
  }
  return s;
}

double trace_power(const HermitianMatrix& a, int k) {
  return trace_power(eigenvalues_desc(a), k);
}

double frobenius_norm(const HermitianMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

std::size_t numeric_rank(const HermitianMatrix& a, std::optional<double> tol) {
  if (tol && *tol < 0.0) throw std::invalid_argument("rank tolerance must be nonnegative");
  const double t = tol.value_or(1e-9 * static_cast<double>(a.size()) * a.max_abs_entry());
  const auto ev = eigenvalues_desc(a);
  return static_cast<std::size_t>(
      std::count_if(ev.begin(), ev.end(), [t](double l) { return std::abs(l) > t; }));
}

HermitianMatrix principal_minor(const HermitianMatrix& a, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("empty minor");
  std::vector<std::size_t> seen(keep.begin(), keep.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("duplicate index in minor");
  if (seen.back() >= a.size()) throw std::out_of_range("minor index out of range");
  return HermitianMatrix::from_upper(keep.size(), [&](std::size_t i, std::size_t j) {
    return a(keep[i], keep[j]);
  });
}

}  // namespace wignerlab
