#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/hermitian.hpp"
#include "wignerlab/spectral.hpp"

namespace wignerlab {

// Point of the open upper half plane. Throws unless im > 0.
class UpperHalfPoint {
 public:
  UpperHalfPoint(double re, double im);
  double re() const { return re_; }
  double im() const { return im_; }
  Complex z() const { return {re_, im_}; }

 private:
  double re_, im_;
};

struct GridDensity {
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0.0;
  // trapezoid rule over the grid
  double mass() const;
};

using TransformFn = std::function<Complex(const UpperHalfPoint&)>;

// sum_atoms weight / (x - z)
Complex stieltjes_atomic(const StepDistribution& f, const UpperHalfPoint& z);

// (-z + sqrt(z - 2) sqrt(z + 2)) / 2, each root on the branch with
// nonnegative imaginary part.
Complex semicircle_stieltjes(const UpperHalfPoint& z);

// sqrt(z - 2) sqrt(z + 2) with the same branch choice.
Complex semicircle_branch_root(Complex z);

// (1/pi) Im s(a + ib) at each grid point. Throws on an unsorted grid.
GridDensity invert_on_grid(const TransformFn& s, double b, std::span<const double> grid);

// (1/n) tr (A - z)^-1 from the eigenvalues.
Complex resolvent_trace(const HermitianMatrix& a, const UpperHalfPoint& z);
Complex resolvent_trace(std::span<const double> eigenvalues, const UpperHalfPoint& z);

// u^* (A - z)^-1 u
Complex resolvent_quadratic_form(const HermitianMatrix& a, std::span<const Complex> u, const UpperHalfPoint& z);

// tr ((A - z)(A - conj z))^-1 = sum_i 1 / |lambda_i - z|^2
double resolvent_hs_norm_sq(const HermitianMatrix& a, const UpperHalfPoint& z);

// Mean of resolvent_trace over `trials` samples of the spec (trial t uses
// sample(spec, t)); deterministic for any thread count.
Complex mean_resolvent_trace(const EnsembleSpec& spec, const UpperHalfPoint& z, std::size_t trials,
                             unsigned threads = 1);
std::vector<Complex> mean_resolvent_trace(const EnsembleSpec& spec, std::span<const UpperHalfPoint> zs,
                                          std::size_t trials, unsigned threads = 1);

// |s_n + 1 / (z + s_n)| with s_n = mean_resolvent_trace.
double recursion_residual(const EnsembleSpec& spec, const UpperHalfPoint& z, std::size_t trials,
                          unsigned threads = 1);
double recursion_residual(Complex s, const UpperHalfPoint& z);

// |det M - det(A) det(D - C A^-1 B)| / max(1, |det M|) for the leading
// split x split block A. Throws "schur split singular" when |det A| <= 1e-12.
double schur_det_check(const ComplexMatrix& m, std::size_t split);

// Mean over rows i of |w_i^* S_{W^(i)}(z) w_i - (1/n) tr S_{W^(i)}(z)|, where
// W^(i) deletes row and column i and w_i is column i without entry i.
double minor_quadratic_form_gap(const HermitianMatrix& w, const UpperHalfPoint& z);

}  // namespace wignerlab
