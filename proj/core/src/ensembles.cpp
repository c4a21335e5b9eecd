#include "wignerlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wignerlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double double_factorial(int k) {
  double r = 1.0;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// standard gaussian: P(|g| > u), E[g^2; |g| > u]
double gauss_tail(double u) { return std::erfc(u / std::numbers::sqrt2); }
double gauss_tail_sq(double u) {
  return std::erfc(u / std::numbers::sqrt2) + std::sqrt(2.0 / std::numbers::pi) * u * std::exp(-0.5 * u * u);
}

}  // namespace

EntryLaw EntryLaw::pareto_symmetric(double alpha, double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("pareto alpha must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("pareto scale must be positive");
  EntryLaw law(LawKind::pareto_symmetric);
  law.alpha_ = alpha;
  law.scale_ = scale;
  return law;
}

std::string EntryLaw::name() const {
  switch (kind_) {
    case LawKind::rademacher_scaled: return "rademacher";
    case LawKind::gaussian_real: return "gaussian_real";
    case LawKind::gaussian_complex: return "gaussian_complex";
    case LawKind::uniform_bounded: return "uniform_bounded";
    case LawKind::constant_zero: return "constant_zero";
    case LawKind::pareto_symmetric: {
      std::ostringstream os;
      os.precision(17);
      os << "pareto(" << alpha_ << "," << scale_ << ")";
      return os.str();
    }
  }
  return "unknown";
}

double EntryLaw::moment_limit() const {
  return kind_ == LawKind::pareto_symmetric ? alpha_ : kInf;
}

std::optional<double> EntryLaw::variance(double s2) const {
  if (s2 == 0.0 || kind_ == LawKind::constant_zero) return 0.0;
  if (kind_ != LawKind::pareto_symmetric) return s2;
  if (alpha_ <= 2.0) return std::nullopt;
  const double c2 = scale_ * scale_ * s2;
  return c2 * alpha_ / (alpha_ - 2.0);
}

double EntryLaw::tail_probability(double s2, double x, bool diagonal) const {
  if (x < 0.0) return 1.0;
  if (s2 == 0.0 || kind_ == LawKind::constant_zero) return 0.0;
  const double sd = std::sqrt(s2);
  switch (kind_) {
    case LawKind::rademacher_scaled: return sd > x ? 1.0 : 0.0;
    case LawKind::gaussian_complex:
      if (!diagonal) return std::exp(-x * x / s2);
      [[fallthrough]];
    case LawKind::gaussian_real: return gauss_tail(x / sd);
    case LawKind::uniform_bounded: {
      const double a = std::sqrt(3.0 * s2);
      return x >= a ? 0.0 : 1.0 - x / a;
    }
    case LawKind::pareto_symmetric: {
      const double c = scale_ * sd;
      return x <= c ? 1.0 : std::pow(c / x, alpha_);
    }
    case LawKind::constant_zero: break;
  }
  return 0.0;
}

double EntryLaw::tail_second_moment(double s2, double x, bool diagonal) const {
  if (s2 == 0.0 || kind_ == LawKind::constant_zero) return 0.0;
  x = std::max(x, 0.0);
  const double sd = std::sqrt(s2);
  switch (kind_) {
    case LawKind::rademacher_scaled: return sd > x ? s2 : 0.0;
    case LawKind::gaussian_complex:
      if (!diagonal) {
        const double v = x * x / s2;
        return s2 * (1.0 + v) * std::exp(-v);
      }
      [[fallthrough]];
    case LawKind::gaussian_real: return s2 * gauss_tail_sq(x / sd);
    case LawKind::uniform_bounded: {
      const double a = std::sqrt(3.0 * s2);
      return x >= a ? 0.0 : (a * a * a - x * x * x) / (3.0 * a);
    }
    case LawKind::pareto_symmetric: {
      if (alpha_ <= 2.0) return kInf;
      const double c = scale_ * sd;
      const double m = std::max(x / c, 1.0);
      return c * c * alpha_ / (alpha_ - 2.0) * std::pow(m, 2.0 - alpha_);
    }
    case LawKind::constant_zero: break;
  }
  return 0.0;
}

double EntryLaw::truncated_second_moment(double s2, double x, bool diagonal) const {
  if (s2 == 0.0 || kind_ == LawKind::constant_zero || x <= 0.0) return 0.0;
  if (kind_ == LawKind::pareto_symmetric) {
    const double c = scale_ * std::sqrt(s2);
    const double m = x / c;
    if (m <= 1.0) return 0.0;
    if (alpha_ == 2.0) return c * c * 2.0 * std::log(m);
    return c * c * alpha_ / (2.0 - alpha_) * (std::pow(m, 2.0 - alpha_) - 1.0);
  }
  return std::max(0.0, s2 - tail_second_moment(s2, x, diagonal));
}

Complex EntryLaw::truncated_mean(double, double) const { return 0.0; }

Complex EntryLaw::mixed_moment(double s2, int p, int q, bool diagonal) const {
  if (p < 0 || q < 0) throw std::invalid_argument("moment orders must be nonnegative");
  const int k = p + q;
  if (k == 0) return 1.0;
  if (kind_ == LawKind::pareto_symmetric && static_cast<double>(k) >= alpha_)
    throw std::domain_error("oracle requires finite moments");
  if (s2 == 0.0 || kind_ == LawKind::constant_zero) return 0.0;
  if (kind_ == LawKind::gaussian_complex && !diagonal) return p == q ? factorial(p) * std::pow(s2, p) : 0.0;
  if (k % 2 == 1) return 0.0;
  switch (kind_) {
    case LawKind::rademacher_scaled: return std::pow(s2, k / 2);
    case LawKind::gaussian_real:
    case LawKind::gaussian_complex: return double_factorial(k - 1) * std::pow(s2, k / 2);
    case LawKind::uniform_bounded: return std::pow(3.0 * s2, k / 2) / (k + 1);
    case LawKind::pareto_symmetric: {
      const double c = scale_ * std::sqrt(s2);
      return std::pow(c, k) * alpha_ / (alpha_ - k);
    }
    case LawKind::constant_zero: break;
  }
  return 0.0;
}

Complex EntryLaw::draw(double s2, RandomStream& stream, bool diagonal) const {
  if (kind_ == LawKind::constant_zero || s2 == 0.0) return 0.0;
  const double sd = std::sqrt(s2);
  switch (kind_) {
    case LawKind::rademacher_scaled: return stream.sign() * sd;
    case LawKind::gaussian_real: return sd * stream.normal();
    case LawKind::gaussian_complex: {
      if (diagonal) return sd * stream.normal();
      const double re = stream.normal();
      const double im = stream.normal();
      return Complex(re, im) * (sd / std::numbers::sqrt2);
    }
    case LawKind::uniform_bounded: return std::sqrt(3.0 * s2) * (2.0 * stream.uniform() - 1.0);
    case LawKind::pareto_symmetric: {
      const double sg = stream.sign();
      return sg * scale_ * sd * std::pow(stream.uniform(), -1.0 / alpha_);
    }
    case LawKind::constant_zero: break;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

VarianceProfile VarianceProfile::uniform(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("profile values must be finite and nonnegative");
  VarianceProfile p;
  p.kind_ = ProfileKind::uniform;
  p.a_ = value;
  return p;
}

VarianceProfile VarianceProfile::banded(std::size_t width, double inside, double outside) {
  for (double v : {inside, outside})
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("profile values must be finite and nonnegative");
  VarianceProfile p;
  p.kind_ = ProfileKind::banded;
  p.width_ = width;
  p.a_ = inside;
  p.b_ = outside;
  return p;
}

VarianceProfile VarianceProfile::explicit_matrix(std::size_t n, std::vector<double> values) {
  if (n == 0 || values.size() != n * n) throw std::invalid_argument("explicit profile needs n*n values");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("profile values must be finite and nonnegative");
      if (v != values[j * n + i]) throw std::invalid_argument("explicit profile asymmetric");
    }
  VarianceProfile p;
  p.kind_ = ProfileKind::explicit_matrix;
  p.n_ = n;
  p.values_ = std::move(values);
  return p;
}

double VarianceProfile::operator()(std::size_t i, std::size_t j) const {
  switch (kind_) {
    case ProfileKind::uniform: return a_;
    case ProfileKind::banded: return (i > j ? i - j : j - i) <= width_ ? a_ : b_;
    case ProfileKind::explicit_matrix: return values_.at(i * n_ + j);
  }
  return 0.0;
}

std::optional<std::size_t> VarianceProfile::dimension() const {
  if (kind_ == ProfileKind::explicit_matrix) return n_;
  return std::nullopt;
}

std::vector<VarianceProfile::RowGroup> VarianceProfile::row_groups(std::size_t i, std::size_t n) const {
  std::vector<RowGroup> out;
  switch (kind_) {
    case ProfileKind::uniform:
      out.push_back({a_, 1, true});
      if (n > 1) out.push_back({a_, n - 1, false});
      break;
    case ProfileKind::banded: {
      out.push_back({a_, 1, true});
      const std::size_t in = std::min(i, width_) + std::min(n - 1 - i, width_);
      if (in > 0) out.push_back({a_, in, false});
      if (n - 1 - in > 0) out.push_back({b_, n - 1 - in, false});
      break;
    }
    case ProfileKind::explicit_matrix:
      for (std::size_t j = 0; j < n; ++j) out.push_back({(*this)(i, j), 1, i == j});
      break;
  }
  return out;
}

std::string VarianceProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case ProfileKind::uniform: os << "uniform(" << a_ << ")"; break;
    case ProfileKind::banded: os << "banded(" << width_ << "," << a_ << "," << b_ << ")"; break;
    case ProfileKind::explicit_matrix: os << "explicit(" << n_ << ")"; break;
  }
  return os.str();
}

void EnsembleSpec::validate() const {
  if (n == 0) throw std::invalid_argument("ensemble dimension must be positive");
  if (auto d = profile.dimension(); d && *d != n)
    throw std::invalid_argument("explicit profile dimension " + std::to_string(*d) + " does not match n = " +
                                std::to_string(n));
}

EnsembleSpec unit_wigner(std::size_t n, EntryLaw law, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("ensemble dimension must be positive");
  EnsembleSpec spec;
  spec.n = n;
  spec.law = law;
  spec.profile = VarianceProfile::uniform(1.0 / static_cast<double>(n));
  spec.seed = seed;
  return spec;
}

double heavy_tail_normaliser(std::size_t n) {
  if (n < 3) throw std::invalid_argument("heavy-tail ensemble needs n >= 3");
  const double nd = static_cast<double>(n);
  // larger root of x = n ln x; the map is a contraction there
  double x = nd * std::log(nd) + nd;
  for (int it = 0; it < 500; ++it) {
    const double next = nd * std::log(x);
    if (std::abs(next - x) <= 1e-15 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return std::sqrt(x);
}

EnsembleSpec heavy_tail(std::size_t n, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.n = n;
  spec.law = EntryLaw::pareto_symmetric(2.0, 1.0 / heavy_tail_normaliser(n));
  spec.profile = VarianceProfile::uniform(1.0);
  spec.seed = seed;
  return spec;
}

HermitianMatrix sample(const EnsembleSpec& spec, const RandomStream& stream) {
  spec.validate();
  const std::size_t n = spec.n;
  return HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) {
    RandomStream entry = stream.derive(static_cast<std::uint64_t>(i) * n + j);
    return spec.law_at(i, j).draw(spec.profile(i, j), entry, i == j);
  });
}

HermitianMatrix sample(const EnsembleSpec& spec, std::uint64_t trial) {
  return sample(spec, RandomStream(spec.seed).derive(trial));
}

ConditionReport condition_sums(const EnsembleSpec& spec, double c, std::span<const double> epsilons) {
  spec.validate();
  if (!(c >= 0.0)) throw std::invalid_argument("row bound C must be nonnegative");
  for (double e : epsilons)
    if (!(e > 0.0)) throw std::invalid_argument("epsilons must be positive");
  const std::size_t n = spec.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  ConditionReport r;
  r.c = c;
  std::vector<double> lind(epsilons.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (const auto& g : spec.profile.row_groups(i, n)) {
      const EntryLaw& law = g.diagonal ? spec.law_at(i, i) : spec.law;
      const auto v = law.variance(g.s2);
      const double cnt = static_cast<double>(g.count);
      row += v ? cnt * *v : kInf;
      for (std::size_t e = 0; e < epsilons.size(); ++e)
        lind[e] += cnt * law.tail_second_moment(g.s2, epsilons[e], g.diagonal);
    }
    r.var_row_sum_stat += std::abs(row - 1.0);
    r.row_excess_stat += std::max(0.0, row - c);
  }
  r.var_row_sum_stat *= inv_n;
  r.row_excess_stat *= inv_n;
  for (std::size_t e = 0; e < epsilons.size(); ++e) r.lindeberg.emplace_back(epsilons[e], lind[e] * inv_n);
  return r;
}

ConditionReport gaussian_row_check(const EnsembleSpec& spec, std::span<const double> epsilons) {
  spec.validate();
  if (!spec.law.is_symmetric() || (spec.diagonal_law && !spec.diagonal_law->is_symmetric()))
    throw std::domain_error("gauss_row_check requires symmetric entries");
  ConditionReport r = condition_sums(spec, 1.0, epsilons);
  const std::size_t n = spec.n;
  GaussConditions gc;
  std::vector<double> worst_tail(epsilons.size(), 0.0);
  double worst_dev = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> tail(epsilons.size(), 0.0);
    Complex mean = 0.0;
    double trunc_var = 0.0;
    for (const auto& g : spec.profile.row_groups(i, n)) {
      const EntryLaw& law = g.diagonal ? spec.law_at(i, i) : spec.law;
      const double cnt = static_cast<double>(g.count);
      for (std::size_t e = 0; e < epsilons.size(); ++e)
        tail[e] += cnt * law.tail_probability(g.s2, epsilons[e], g.diagonal);
      const Complex m = law.truncated_mean(g.s2, 1.0);
      mean += cnt * m;
      trunc_var += cnt * (law.truncated_second_moment(g.s2, 1.0, g.diagonal) - std::norm(m));
    }
    for (std::size_t e = 0; e < epsilons.size(); ++e) worst_tail[e] = std::max(worst_tail[e], tail[e]);
    gc.truncated_mean_sum = std::max(gc.truncated_mean_sum, std::abs(mean));
    if (std::abs(trunc_var - 1.0) > worst_dev) {
      worst_dev = std::abs(trunc_var - 1.0);
      gc.truncated_variance_sum = trunc_var;
      gc.worst_row = i;
    }
  }
  for (std::size_t e = 0; e < epsilons.size(); ++e) gc.tail_sums.emplace_back(epsilons[e], worst_tail[e]);
  r.gauss = std::move(gc);
  return r;
}

}  // namespace wignerlab
