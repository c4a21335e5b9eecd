#include "wignerlab/concentration.hpp"

#include <cmath>
#include <stdexcept>

#include "wignerlab/hermitian.hpp"

namespace wignerlab {

double mcdiarmid_bound(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  return 2.0 * std::exp(-lambda * lambda / 8.0);
}

double spectral_bound(std::size_t n, double t) {
  if (n == 0) throw std::domain_error("n must be >= 1");
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  return 2.0 * std::exp(-static_cast<double>(n) * t * t / 32.0);
}

double bernstein_bound(double second_moment, double x) {
  if (!(second_moment >= 0.0)) throw std::domain_error("second moment must be nonnegative");
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  return std::exp(-x * x / (2.0 * (second_moment + x)));
}

double hoeffding_mgf_bound(double a, double b) {
  if (!(a <= b)) throw std::domain_error("hoeffding bound needs a <= b");
  return std::exp(2.0 * (b - a) * (b - a));
}

namespace {

double binomial_se(double p, std::size_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace

std::vector<TailEstimate> empirical_tail(const EnsembleSpec& spec, const RampFunction& f, std::span<const double> ts,
                                         std::size_t trials, unsigned threads) {
  if (trials < 100) throw std::invalid_argument("empirical_tail needs trials >= 100");
  for (double t : ts)
    if (!(t > 0.0)) throw std::invalid_argument("thresholds must be positive");
  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto eig = eigenvalues_desc(sample(spec, static_cast<std::uint64_t>(t)));
    values[t] = integrate(f, esd(eig));
  });
  const double mean = pairwise_sum(values) / static_cast<double>(trials);
  std::vector<TailEstimate> out;
  for (double t : ts) {
    std::size_t hits = 0;
    for (double v : values)
      if (std::abs(v - mean) >= t) ++hits;
    TailEstimate e;
    e.t = t;
    e.trials = trials;
    e.empirical_prob = static_cast<double>(hits) / static_cast<double>(trials);
    e.bound = spectral_bound(spec.n, t);
    e.statistic_name = "ramp(" + std::to_string(f.p()) + "," + std::to_string(f.q()) + ")";
    e.std_error = binomial_se(e.empirical_prob, trials);
    out.push_back(std::move(e));
  }
  return out;
}

TailEstimate bernstein_tail_check(std::span<const double> probs, double x, std::size_t trials,
                                  const RandomStream& stream) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  double second = 0.0, mean = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
    second += p * (1.0 - p);
    mean += p;
  }
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream s = stream.derive(t);
    double sum = 0.0;
    for (double p : probs) sum += s.bernoulli(p) ? 1.0 : 0.0;
    if (sum - mean >= x) ++hits;
  }
  TailEstimate e;
  e.t = x;
  e.trials = trials;
  e.empirical_prob = static_cast<double>(hits) / static_cast<double>(trials);
  e.bound = bernstein_bound(second, x);
  e.statistic_name = "bernstein";
  e.std_error = binomial_se(e.empirical_prob, trials);
  return e;
}

MgfEstimate hoeffding_mgf_check(double a, double b, double mean, const std::function<double(RandomStream&)>& draw,
                                 std::size_t samples, const RandomStream& stream) {
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  std::vector<double> v(samples);
  RandomStream s = stream;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = draw(s);
    if (x < a || x > b) throw std::domain_error("draw outside [a, b]");
    v[i] = std::exp(x - mean);
  }
  const double m = pairwise_sum(v) / static_cast<double>(samples);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  MgfEstimate e;
  e.a = a;
  e.b = b;
  e.samples = samples;
  e.empirical_mean = m;
  e.bound = hoeffding_mgf_bound(a, b);
  e.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return e;
}

}  // namespace wignerlab
