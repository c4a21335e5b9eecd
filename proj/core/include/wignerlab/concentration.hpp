#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/random.hpp"
#include "wignerlab/spectral.hpp"

namespace wignerlab {

// 2 exp(-lambda^2 / 8)
double mcdiarmid_bound(double lambda);
// 2 exp(-n t^2 / 32)
double spectral_bound(std::size_t n, double t);
// exp(-x^2 / (2 (E[S^2] + x)))
double bernstein_bound(double second_moment, double x);
// exp(2 (b - a)^2)
double hoeffding_mgf_bound(double a, double b);

struct TailEstimate {
  double t = 0.0;
  double empirical_prob = 0.0;
  double bound = 0.0;
  std::size_t trials = 0;
  std::string statistic_name;
  // binomial standard error sqrt(p (1 - p) / trials) of empirical_prob
  double std_error = 0.0;
};

// Per t: frequency over trials of |int f dmu_X - mean_trials int f dmu_X| >= t
// against spectral_bound(n, t). The cross-trial mean stands in for the
// expectation (bias O(1/sqrt(trials))). Requires trials >= 100.
std::vector<TailEstimate> empirical_tail(const EnsembleSpec& spec, const RampFunction& f, std::span<const double> ts,
                                         std::size_t trials, unsigned threads = 1);

// Frequency of sum_i (B_i - p_i) >= x over independent Bernoulli(p_i)
// coins against bernstein_bound(sum p_i (1 - p_i), x).
TailEstimate bernstein_tail_check(std::span<const double> probs, double x, std::size_t trials,
                                  const RandomStream& stream);

struct MgfEstimate {
  double a = 0.0, b = 0.0;
  double empirical_mean = 0.0;  // sample mean of exp(X - E X)
  double bound = 0.0;           // hoeffding_mgf_bound(a, b)
  std::size_t samples = 0;
  double std_error = 0.0;
};

// Monte Carlo E[exp(X - E X)] for X = draw(stream) with values in [a, b];
// `mean` is the exact E X.
MgfEstimate hoeffding_mgf_check(double a, double b, double mean, const std::function<double(RandomStream&)>& draw,
                                 std::size_t samples, const RandomStream& stream);

}  // namespace wignerlab
