#include "wignerlab/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wignerlab/random.hpp"

namespace wignerlab {

UpperHalfPoint::UpperHalfPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !(im > 0.0) || !std::isfinite(im))
    throw std::domain_error("point must lie in the open upper half plane");
}

double GridDensity::mass() const {
  double m = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) m += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return m;
}

Complex stieltjes_atomic(const StepDistribution& f, const UpperHalfPoint& z) {
  Complex s = 0.0;
  const auto atoms = f.atoms();
  const auto weights = f.weights();
  for (std::size_t i = 0; i < atoms.size(); ++i) s += weights[i] / (atoms[i] - z.z());
  return s;
}

namespace {

Complex upper_sqrt(Complex w) {
  const Complex r = std::sqrt(w);
  return r.imag() < 0.0 ? -r : r;
}

}  // namespace

Complex semicircle_branch_root(Complex z) { return upper_sqrt(z - 2.0) * upper_sqrt(z + 2.0); }

Complex semicircle_stieltjes(const UpperHalfPoint& z) { return 0.5 * (-z.z() + semicircle_branch_root(z.z())); }

GridDensity invert_on_grid(const TransformFn& s, double b, std::span<const double> grid) {
  if (!(b > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
  GridDensity d;
  d.bandwidth = b;
  d.grid.assign(grid.begin(), grid.end());
  d.values.reserve(grid.size());
  for (double a : grid) d.values.push_back(std::max(0.0, s(UpperHalfPoint(a, b)).imag() / std::numbers::pi));
  return d;
}

Complex resolvent_trace(std::span<const double> eigenvalues, const UpperHalfPoint& z) {
  if (eigenvalues.empty()) throw std::invalid_argument("resolvent trace of an empty spectrum");
  std::vector<double> re(eigenvalues.size()), im(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const Complex r = 1.0 / (eigenvalues[i] - z.z());
    re[i] = r.real();
    im[i] = r.imag();
  }
  const double inv = 1.0 / static_cast<double>(eigenvalues.size());
  return {pairwise_sum(re) * inv, pairwise_sum(im) * inv};
}

Complex resolvent_trace(const HermitianMatrix& a, const UpperHalfPoint& z) {
  return resolvent_trace(eigenvalues_desc(a), z);
}

Complex resolvent_quadratic_form(const HermitianMatrix& a, std::span<const Complex> u, const UpperHalfPoint& z) {
  if (u.size() != a.size()) throw std::invalid_argument("vector dimension mismatch");
  const auto dec = eigen_decompose(a, true);
  const ComplexMatrix& q = *dec.basis;
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Complex proj = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) proj += std::conj(q(i, k)) * u[i];
    s += std::norm(proj) / (dec.eigenvalues[k] - z.z());
  }
  return s;
}

double resolvent_hs_norm_sq(const HermitianMatrix& a, const UpperHalfPoint& z) {
  double s = 0.0;
  for (double l : eigenvalues_desc(a)) s += 1.0 / std::norm(l - z.z());
  return s;
}

std::vector<Complex> mean_resolvent_trace(const EnsembleSpec& spec, std::span<const UpperHalfPoint> zs,
                                          std::size_t trials, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::vector<std::vector<Complex>> per_trial(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto eig = eigenvalues_desc(sample(spec, static_cast<std::uint64_t>(t)));
    per_trial[t].reserve(zs.size());
    for (const auto& z : zs) per_trial[t].push_back(resolvent_trace(eig, z));
  });
  std::vector<Complex> out;
  std::vector<double> re(trials), im(trials);
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    for (std::size_t t = 0; t < trials; ++t) {
      re[t] = per_trial[t][zi].real();
      im[t] = per_trial[t][zi].imag();
    }
    const double inv = 1.0 / static_cast<double>(trials);
    out.emplace_back(pairwise_sum(re) * inv, pairwise_sum(im) * inv);
  }
  return out;
}

Complex mean_resolvent_trace(const EnsembleSpec& spec, const UpperHalfPoint& z, std::size_t trials,
                             unsigned threads) {
  return mean_resolvent_trace(spec, std::span<const UpperHalfPoint>(&z, 1), trials, threads).front();
}

double recursion_residual(Complex s, const UpperHalfPoint& z) { return std::abs(s + 1.0 / (z.z() + s)); }

double recursion_residual(const EnsembleSpec& spec, const UpperHalfPoint& z, std::size_t trials, unsigned threads) {
  return recursion_residual(mean_resolvent_trace(spec, z, trials, threads), z);
}

double schur_det_check(const ComplexMatrix& m, std::size_t split) {
  const std::size_t n = m.size();
  if (split == 0 || split >= n) throw std::invalid_argument("split must lie strictly inside the matrix");
  const std::size_t r = n - split;
  ComplexMatrix a(split), schur(r);
  for (std::size_t i = 0; i < split; ++i)
    for (std::size_t j = 0; j < split; ++j) a(i, j) = m(i, j);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) schur(i, j) = m(split + i, split + j);
  const Complex det_a = determinant(a);
  if (std::abs(det_a) <= 1e-12) throw std::domain_error("schur split singular");
  // D - C A^-1 B, with A^-1 B formed split columns at a time
  for (std::size_t c0 = 0; c0 < r; c0 += split) {
    const std::size_t width = std::min(split, r - c0);
    ComplexMatrix rhs(split);
    for (std::size_t i = 0; i < split; ++i)
      for (std::size_t q = 0; q < width; ++q) rhs(i, q) = m(i, split + c0 + q);
    const ComplexMatrix x = solve(a, rhs);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t q = 0; q < width; ++q) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < split; ++k) s += m(split + i, k) * x(k, q);
        schur(i, c0 + q) -= s;
      }
  }
  const Complex det_m = determinant(m);
  return std::abs(det_m - det_a * determinant(schur)) / std::max(1.0, std::abs(det_m));
}

double minor_quadratic_form_gap(const HermitianMatrix& w, const UpperHalfPoint& z) {
  const std::size_t n = w.size();
  if (n < 2) throw std::invalid_argument("minor comparison needs n >= 2");
  std::vector<double> gaps(n);
  std::vector<std::size_t> keep(n - 1);
  std::vector<Complex> col(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0, p = 0; j < n; ++j)
      if (j != i) {
        keep[p] = j;
        col[p] = w(j, i);
        ++p;
      }
    const HermitianMatrix minor = principal_minor(w, keep);
    const auto dec = eigen_decompose(minor, true);
    const ComplexMatrix& q = *dec.basis;
    Complex form = 0.0, trace = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      Complex proj = 0.0;
      for (std::size_t r = 0; r + 1 < n; ++r) proj += std::conj(q(r, k)) * col[r];
      const Complex inv = 1.0 / (dec.eigenvalues[k] - z.z());
      form += std::norm(proj) * inv;
      trace += inv;
    }
    gaps[i] = std::abs(form - trace / static_cast<double>(n));
  }
  return pairwise_sum(gaps) / static_cast<double>(n);
}

}  // namespace wignerlab
