#pragma once

// Reference computations used only by tests. Each one takes a different
// route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "wignerlab/hermitian.hpp"
#include "wignerlab/spectral.hpp"
#include "wignerlab/walks.hpp"

namespace oracle {

using wignerlab::Complex;
using wignerlab::ComplexMatrix;
using wignerlab::HermitianMatrix;

// ---------------------------------------------------------------------------
// quadrature

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                               int depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// substitution x = 2 sin(theta) removes the square-root endpoint singularity
inline double semicircle_integral(const std::function<double(double)>& g, double tol = 1e-13) {
  // fixed panels first: a single symmetric panel can fool the error estimate
  const auto f = [&](double th) {
    const double c = std::cos(th);
    return g(2.0 * std::sin(th)) * 2.0 * c * c / std::numbers::pi;
  };
  constexpr int panels = 16;
  const double h = std::numbers::pi / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -std::numbers::pi / 2 + p * h;
    total += adaptive_simpson(f, a, a + h, tol / panels);
  }
  return total;
}

// ---------------------------------------------------------------------------
// linear algebra

inline Complex leibniz_determinant(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Complex det = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Complex term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Number of eigenvalues of A below x, from the inertia of A - xI
// (Hermitian Gaussian elimination without pivoting, Sylvester's law).
inline std::size_t count_below(const HermitianMatrix& a, double x) {
  const std::size_t n = a.size();
  std::vector<Complex> m(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= x;
  std::size_t negative = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = m[k * n + k].real();
    if (d == 0.0) d = 1e-300;
    if (d < 0.0) ++negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = m[i * n + k] / d;
      for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= l * std::conj(m[j * n + k]);
    }
  }
  return negative;
}

// Eigenvalues (descending) by bisection on the inertia count.
inline std::vector<double> bisection_eigenvalues(const HermitianMatrix& a) {
  const std::size_t n = a.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    r = std::max(r, row);
  }
  r += 1.0;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k-th smallest: smallest x with count_below(x) >= k+1
    double lo = -r, hi = r;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * r; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(a, mid) >= k + 1)
        hi = mid;
      else
        lo = mid;
    }
    out[n - 1 - k] = 0.5 * (lo + hi);
  }
  return out;
}

inline ComplexMatrix dense_power(const ComplexMatrix& a, int k) {
  ComplexMatrix p = a;
  for (int i = 1; i < k; ++i) p = p * a;
  return p;
}

inline double dense_trace_real(const ComplexMatrix& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a(i, i).real();
  return t;
}

// ---------------------------------------------------------------------------
// distributions

// Smallest eps on a uniform grid of step `step` satisfying the Levy
// corridor at every x in a dense test set.
template <class F, class G>
double brute_levy(const F& f, const G& g, std::vector<double> points, double step = 1e-4) {
  std::vector<double> xs;
  for (double p : points)
    for (double d : {-1e-9, 0.0, 1e-9}) xs.push_back(p + d);
  auto ok = [&](double eps) {
    std::vector<double> test = xs;
    for (double p : points)
      for (double s : {-eps, eps})
        for (double d : {-1e-9, 0.0, 1e-9}) test.push_back(p + s + d);
    for (double x : test)
      if (f.cdf(x - eps) - eps > g.cdf(x) + 1e-12 || g.cdf(x) > f.cdf(x + eps) + eps + 1e-12) return false;
    return true;
  };
  for (double eps = 0.0; eps <= 1.0 + step; eps += step)
    if (ok(eps)) return eps;
  return 1.0;
}

// ---------------------------------------------------------------------------
// combinatorics

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::uint64_t catalan(unsigned m) { return binomial(2 * m, m) / (m + 1); }

// All closed walks of length k over labels {1..k+1}, filtered by the
// canonical predicate written directly from its definition.
inline std::vector<std::vector<std::size_t>> brute_canonical_walks(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t L = k + 1;
  std::vector<std::size_t> seq(k + 1, 1);
  for (;;) {
    if (seq[0] == 1 && seq[k] == 1) {
      bool canon = true;
      std::size_t mx = 0;
      for (std::size_t s = 0; s <= k && canon; ++s) {
        if (seq[s] > mx + 1) canon = false;
        mx = std::max(mx, seq[s]);
      }
      if (canon) out.push_back(seq);
    }
    std::size_t p = k + 1;
    while (p > 0) {
      --p;
      if (++seq[p] <= L) break;
      seq[p] = 1;
      if (p == 0) return out;
    }
  }
}

// Dyck paths as +-1 words of length k filtered for nonnegativity.
inline std::set<std::vector<int>> brute_dyck(std::size_t k) {
  std::set<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    std::vector<int> h{0};
    bool ok = true;
    for (std::size_t s = 0; s < k && ok; ++s) {
      h.push_back(h.back() + ((mask >> s) & 1 ? 1 : -1));
      ok = h.back() >= 0;
    }
    if (ok && h.back() == 0) out.insert(h);
  }
  return out;
}

// Direct enumeration of injective labellings for tree sums.
inline double brute_tree_sum(const wignerlab::Tree& t, const std::function<double(std::size_t, std::size_t)>& s2,
                             std::size_t n, std::optional<wignerlab::Pin> pin) {
  std::vector<std::size_t> f(t.vertices);
  std::vector<bool> used(n, false);
  double total = 0.0;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == t.vertices) {
      double p = 1.0;
      for (auto [a, b] : t.edges) p *= s2(f[a], f[b]);
      total += p;
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (pin && pin->vertex == v && pin->index != i) continue;
      used[i] = true;
      f[v] = i;
      rec(v + 1);
      used[i] = false;
    }
  };
  rec(0);
  return total;
}

// E[(1/n) tr W^k] over all sign patterns of the upper triangle for
// W_ij = s_ij * a_ij.
inline double exhaustive_sign_moment(std::size_t n, const std::function<double(std::size_t, std::size_t)>& amp, int k) {
  const std::size_t m = n * (n + 1) / 2;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    ComplexMatrix w(n);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++bit) {
        const double v = ((mask >> bit) & 1 ? 1.0 : -1.0) * amp(i, j);
        w(i, j) = v;
        w(j, i) = v;
      }
    total += dense_trace_real(dense_power(w, k)) / static_cast<double>(n);
  }
  return total / static_cast<double>(1ULL << m);
}

// ---------------------------------------------------------------------------
// random instances (std::mt19937_64, independent of the library streams)

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

  HermitianMatrix hermitian(std::size_t n, bool complex = true, double scale = 1.0) {
    return HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) {
      if (i == j || !complex) return Complex(scale * normal(), 0.0);
      return Complex(scale * normal(), scale * normal());
    });
  }

  // Hermitian matrix of rank <= r: sum of r random rank-one terms.
  HermitianMatrix low_rank(std::size_t n, std::size_t r) {
    ComplexMatrix m(n);
    for (std::size_t t = 0; t < r; ++t) {
      std::vector<Complex> v(n);
      for (auto& x : v) x = Complex(normal(), normal());
      const double sign = uniform() < 0.5 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += sign * v[i] * std::conj(v[j]);
    }
    return HermitianMatrix::from_dense(m);
  }

  wignerlab::Tree tree(std::size_t vertices) {
    wignerlab::Tree t;
    t.vertices = vertices;
    for (std::size_t v = 1; v < vertices; ++v) t.edges.emplace_back(index(0, v - 1), v);
    return t;
  }

  std::vector<Complex> unit_vector(std::size_t n) {
    std::vector<Complex> v(n);
    double norm = 0.0;
    for (auto& x : v) {
      x = Complex(normal(), normal());
      norm += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(norm);
    return v;
  }
};

}  // namespace oracle
