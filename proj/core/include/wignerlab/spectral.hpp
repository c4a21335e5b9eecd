#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wignerlab {

// Atomic probability distribution on the real line. Atoms are strictly
// increasing; equal positions are merged on construction and weights sum
// to one within 1e-12.
class StepDistribution {
 public:
  StepDistribution(std::vector<double> atoms, std::vector<double> weights);

  static StepDistribution point_mass(double x) { return StepDistribution({x}, {1.0}); }

  std::span<const double> atoms() const { return atoms_; }
  std::span<const double> weights() const { return weights_; }

  // Right-continuous distribution function P(X <= x).
  double cdf(double x) const;
  // Left limit P(X < x).
  double cdf_left(double x) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

// Semicircle distribution on [-2, 2] with density sqrt(4 - x^2) / (2 pi).
struct SemicircleLaw {
  static double density(double x);
  static double cdf(double x);
  static double cdf_left(double x) { return cdf(x); }
  // Integral of t * density(t) over (-inf, x].
  static double first_moment_cdf(double x);
  // Inverse distribution function on (0, 1), by safeguarded Newton.
  static double quantile(double u);
};

// f_{p,q}: 1 on (-inf, p], 0 on [q, inf), linear in between. p < q.
class RampFunction {
 public:
  RampFunction(double p, double q);
  double p() const { return p_; }
  double q() const { return q_; }
  double operator()(double x) const;

 private:
  double p_, q_;
};

// Uniform measure on the eigenvalues (with multiplicity).
StepDistribution esd(std::span<const double> eigenvalues);

// Semicircle quantiles at (i + 1/2) / m, i = 0..m-1, as an equal-weight ESD.
StepDistribution semicircle_discretization(std::size_t m);

// Levy distance by bisection on epsilon; each candidate is checked at the
// merged breakpoint set (values and left limits) plus a 4096-point grid over
// the joint support hull. Accurate to 1e-10.
double levy_distance(const StepDistribution& f, const StepDistribution& g);
double levy_distance(const StepDistribution& f, const SemicircleLaw& g);
double levy_distance(const SemicircleLaw& f, const StepDistribution& g);

// sup_x |F(x) - G(x)|. Exact for two step functions; against the semicircle
// the supremum is taken over atoms (both one-sided values) and a 10^4 grid.
double kolmogorov_distance(const StepDistribution& f, const StepDistribution& g);
double kolmogorov_distance(const StepDistribution& f, const SemicircleLaw& g);

// k-th moment of the semicircle law: 0 for odd k, Catalan(k/2) for even k.
// Exact; throws std::overflow_error for k > 72 (Catalan(37) exceeds 64 bits).
std::uint64_t semicircle_moment(unsigned k);

// Pooled-atom Monte Carlo estimate of the expected ESD: each input weight is
// divided by the number of samples.
StepDistribution expected_esd(std::span<const StepDistribution> samples);

// Integrals of a ramp function against the two measure types (exact).
double integrate(const RampFunction& f, const StepDistribution& mu);
double integrate(const RampFunction& f, const SemicircleLaw& mu);

struct RampDiscrepancy {
  double p;
  double q;
  double discrepancy;  // |int f dF - int f d(mu_sc)|
};

std::vector<RampDiscrepancy> weak_convergence_report(const StepDistribution& f,
                                                     const SemicircleLaw& target,
                                                     std::span<const RampFunction> grid);

}  // namespace wignerlab
