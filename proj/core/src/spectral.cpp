#include "wignerlab/spectral.hpp"
#include "wignerlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wignerlab {

// ---------------------------------------------------------------------------
// StepDistribution

StepDistribution::StepDistribution(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.empty()) throw std::invalid_argument("step distribution needs at least one atom");
  if (atoms.size() != weights.size()) throw std::invalid_argument("atoms/weights size mismatch");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
  for (std::size_t idx : order) {
    const double x = atoms[idx], w = weights[idx];
    if (!std::isfinite(x)) throw std::invalid_argument("atom position must be finite");
    if (!(w > 0.0)) throw std::invalid_argument("atom weights must be positive");
    if (!atoms_.empty() && atoms_.back() == x)
      weights_.back() += w;
    else {
      atoms_.push_back(x);
      weights_.push_back(w);
    }
  }
  const double total = pairwise_sum(weights);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("atom weights sum to " + std::to_string(total) + ", not 1");
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
  for (auto& c : cumulative_) c = std::min(c, 1.0);
  cumulative_.back() = 1.0;
}

double StepDistribution::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  return it == atoms_.begin() ? 0.0 : cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double StepDistribution::cdf_left(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  return it == atoms_.begin() ? 0.0 : cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

// ---------------------------------------------------------------------------
// SemicircleLaw

double SemicircleLaw::density(double x) {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double SemicircleLaw::cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double v = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) + std::asin(x / 2.0) / std::numbers::pi;
  return std::clamp(v, 0.0, 1.0);
}

double SemicircleLaw::first_moment_cdf(double x) {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  const double r = 4.0 - x * x;
  return -r * std::sqrt(r) / (6.0 * std::numbers::pi);
}

double SemicircleLaw::quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("semicircle quantile needs u in (0,1)");
  double lo = -2.0, hi = 2.0;
  double x = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double fx = cdf(x) - u;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double d = density(x);
    double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * (1.0 + std::abs(x)) || hi - lo < 1e-15) return next;
    x = next;
  }
  return x;
}

// ---------------------------------------------------------------------------
// RampFunction

RampFunction::RampFunction(double p, double q) : p_(p), q_(q) {
  if (!(p < q)) throw std::invalid_argument("ramp function needs p < q");
}

double RampFunction::operator()(double x) const {
  if (x <= p_) return 1.0;
  if (x >= q_) return 0.0;
  return (q_ - x) / (q_ - p_);
}

// ---------------------------------------------------------------------------

StepDistribution esd(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) throw std::invalid_argument("esd of an empty spectrum");
  const double w = 1.0 / static_cast<double>(eigenvalues.size());
  return StepDistribution(std::vector<double>(eigenvalues.begin(), eigenvalues.end()),
                          std::vector<double>(eigenvalues.size(), w));
}

StepDistribution semicircle_discretization(std::size_t m) {
  if (m == 0) throw std::invalid_argument("discretization needs m >= 1");
  std::vector<double> atoms(m);
  for (std::size_t i = 0; i < m; ++i)
    atoms[i] = SemicircleLaw::quantile((static_cast<double>(i) + 0.5) / static_cast<double>(m));
  return esd(atoms);
}

namespace {

// A point at which the Levy corridor is checked. The shifted arguments are
// carried explicitly so that (a + eps) - eps evaluates at a exactly.
struct Probe {
  double x, x_minus, x_plus;
};

template <class F, class G>
bool levy_feasible(const F& f, const G& g, std::span<const double> f_atoms,
                   std::span<const double> g_atoms, std::span<const double> grid, double eps) {
  auto ok = [&](const Probe& pr) {
    if (f.cdf(pr.x_minus) - eps > g.cdf(pr.x)) return false;
    if (f.cdf_left(pr.x_minus) - eps > g.cdf_left(pr.x)) return false;
    if (g.cdf(pr.x) > f.cdf(pr.x_plus) + eps) return false;
    if (g.cdf_left(pr.x) > f.cdf_left(pr.x_plus) + eps) return false;
    return true;
  };
  for (double b : g_atoms)
    if (!ok({b, b - eps, b + eps})) return false;
  for (double a : f_atoms) {
    if (!ok({a + eps, a, a + 2.0 * eps})) return false;
    if (!ok({a - eps, a - 2.0 * eps, a})) return false;
  }
  for (double x : grid)
    if (!ok({x, x - eps, x + eps})) return false;
  return true;
}

std::vector<double> hull_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

template <class F, class G>
double levy_bisect(const F& f, const G& g, std::span<const double> f_atoms,
                   std::span<const double> g_atoms, double lo_support, double hi_support) {
  const auto grid = hull_grid(lo_support, hi_support, 4096);
  if (levy_feasible(f, g, f_atoms, g_atoms, grid, 0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (levy_feasible(f, g, f_atoms, g_atoms, grid, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double levy_distance(const StepDistribution& f, const StepDistribution& g) {
  const double lo = std::min(f.atoms().front(), g.atoms().front());
  const double hi = std::max(f.atoms().back(), g.atoms().back());
  return levy_bisect(f, g, f.atoms(), g.atoms(), lo, hi);
}

double levy_distance(const StepDistribution& f, const SemicircleLaw& g) {
  const double lo = std::min(f.atoms().front(), -2.0);
  const double hi = std::max(f.atoms().back(), 2.0);
  return levy_bisect(f, g, f.atoms(), std::span<const double>{}, lo, hi);
}

double levy_distance(const SemicircleLaw& f, const StepDistribution& g) {
  const double lo = std::min(g.atoms().front(), -2.0);
  const double hi = std::max(g.atoms().back(), 2.0);
  return levy_bisect(f, g, std::span<const double>{}, g.atoms(), lo, hi);
}

double kolmogorov_distance(const StepDistribution& f, const StepDistribution& g) {
  double best = 0.0;
  for (auto atoms : {f.atoms(), g.atoms()})
    for (double x : atoms) best = std::max(best, std::abs(f.cdf(x) - g.cdf(x)));
  return best;
}

double kolmogorov_distance(const StepDistribution& f, const SemicircleLaw&) {
  double best = 0.0;
  for (double x : f.atoms()) {
    const double s = SemicircleLaw::cdf(x);
    best = std::max({best, std::abs(f.cdf(x) - s), std::abs(f.cdf_left(x) - s)});
  }
  for (double x : hull_grid(-2.0, 2.0, 10000)) best = std::max(best, std::abs(f.cdf(x) - SemicircleLaw::cdf(x)));
  return best;
}

std::uint64_t semicircle_moment(unsigned k) {
  if (k % 2 == 1) return 0;
  const unsigned m = k / 2;
  std::uint64_t c = 1;
  for (unsigned i = 0; i < m; ++i) {
    // C_{i+1} = C_i * 2(2i+1) / (i+2), divided out first so only the result can overflow
    const std::uint64_t den = i + 2;
    const std::uint64_t g = std::gcd(c, den);
    const std::uint64_t factor = 2 * (2 * static_cast<std::uint64_t>(i) + 1) / (den / g);
    if (__builtin_mul_overflow(c / g, factor, &c)) throw std::overflow_error("semicircle moment exceeds 64-bit range");
  }
  return c;
}

StepDistribution expected_esd(std::span<const StepDistribution> samples) {
  if (samples.empty()) throw std::invalid_argument("expected_esd needs at least one sample");
  const double inv = 1.0 / static_cast<double>(samples.size());
  std::vector<double> atoms, weights;
  for (const auto& s : samples)
    for (std::size_t i = 0; i < s.atoms().size(); ++i) {
      atoms.push_back(s.atoms()[i]);
      weights.push_back(s.weights()[i] * inv);
    }
  return StepDistribution(std::move(atoms), std::move(weights));
}

double integrate(const RampFunction& f, const StepDistribution& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) s += mu.weights()[i] * f(mu.atoms()[i]);
  return s;
}

double integrate(const RampFunction& f, const SemicircleLaw&) {
  const double p = f.p(), q = f.q();
  const double fp = SemicircleLaw::cdf(p), fq = SemicircleLaw::cdf(q);
  const double m1 = SemicircleLaw::first_moment_cdf(q) - SemicircleLaw::first_moment_cdf(p);
  return fp + (q * (fq - fp) - m1) / (q - p);
}

std::vector<RampDiscrepancy> weak_convergence_report(const StepDistribution& f,
                                                     const SemicircleLaw& target,
                                                     std::span<const RampFunction> grid) {
  if (grid.empty()) throw std::invalid_argument("weak convergence report needs a nonempty ramp grid");
  std::vector<RampDiscrepancy> out;
  out.reserve(grid.size());
  for (const auto& ramp : grid)
    out.push_back({ramp.p(), ramp.q(), std::abs(integrate(ramp, f) - integrate(ramp, target))});
  return out;
}

}  // namespace wignerlab
