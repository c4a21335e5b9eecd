#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/hermitian.hpp"
#include "wignerlab/random.hpp"

namespace wignerlab {

// Symmetric n x n coefficient matrix c_ij in [0, 1], row-major.
struct RescaleCoefficients {
  std::size_t n = 0;
  std::vector<double> values;
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

struct StageDelta {
  std::string stage;
  double delta;  // (1/n) ||before - after||_F^2
};

struct ReductionTrace {
  double eta = 0.0;
  std::size_t truncated_count = 0;  // matrix positions zeroed (both mirrors counted)
  double centering_norm_sq = 0.0;   // sum_ij |E[w_ij ; |w_ij| <= eta]|^2
  RescaleCoefficients rescale_coeffs;
  std::vector<StageDelta> frobenius_delta_sq_per_stage;
  std::size_t replaced_count = 0;                 // unit-variance replacement: entries resampled
  std::size_t zero_variance_diagonal_count = 0;   // left at zero
};

// Zeroes entries with modulus > eta.
std::pair<HermitianMatrix, ReductionTrace> truncate(const HermitianMatrix& w, double eta);

// Entrywise W - M. Throws unless M is Hermitian-symmetric.
HermitianMatrix centralize(const HermitianMatrix& w, const ComplexMatrix& conditional_means);

// Greedy row-by-row lowering: row k's free coefficients (those not fixed by
// an earlier row) share one multiplier chosen so that sum_j c_kj^2 s2_kj = C,
// then c_jk = c_kj. If the fixed coefficients alone already exceed C, the
// free ones go to 0 and the fixed ones of that row are scaled as well (this
// cannot happen when every earlier row was processed the same way).
RescaleCoefficients rescale_to_row_bound(const VarianceProfile& profile, std::size_t n, double c);

// Off-diagonal entries with s2 <= 1/(2n) become fresh +-1/sqrt(n) signs
// (entry (i,j) uses stream.derive(i*n + j)); all other entries with s2 > 0
// are multiplied by 1/sqrt(n s2); zero-variance diagonals stay 0.
std::pair<HermitianMatrix, ReductionTrace> unit_variance_replace(const HermitianMatrix& w,
                                                                 const VarianceProfile& profile,
                                                                 const RandomStream& stream);

// Law-level variance of entry (i, j) after unit_variance_replace.
double replaced_variance(const EntryLaw& law, const VarianceProfile& profile, std::size_t n, std::size_t i,
                         std::size_t j);

// Conditional means E[w_ij ; |w_ij| <= eta] of the spec's laws.
ComplexMatrix truncated_means(const EnsembleSpec& spec, double eta);

// truncate -> centralize -> rescale, with each stage's (1/n)||delta||_F^2.
// Rescaling uses the truncated-and-centred variances
// Var[w 1(|w| <= eta)] as the profile.
std::pair<HermitianMatrix, ReductionTrace> pipeline(const HermitianMatrix& w, const EnsembleSpec& spec, double eta,
                                                    double c);

// max(n^-1/4, smallest grid epsilon whose Lindeberg sum is <= epsilon);
// the grid maximum when none qualifies.
double auto_eta(const EnsembleSpec& spec, std::span<const double> grid);

}  // namespace wignerlab
