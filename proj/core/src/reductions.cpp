#include "wignerlab/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wignerlab {

namespace {

double delta_sq(const HermitianMatrix& a, const HermitianMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return s / static_cast<double>(a.size());
}

}  // namespace

std::pair<HermitianMatrix, ReductionTrace> truncate(const HermitianMatrix& w, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("truncation level must be positive");
  ReductionTrace trace;
  trace.eta = eta;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(w(i, j)) > eta) ++trace.truncated_count;
  auto out = HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) {
    const Complex v = w(i, j);
    return std::abs(v) > eta ? Complex(0.0) : v;
  });
  trace.frobenius_delta_sq_per_stage.push_back({"truncate", delta_sq(w, out)});
  return {std::move(out), std::move(trace)};
}

HermitianMatrix centralize(const HermitianMatrix& w, const ComplexMatrix& m) {
  const std::size_t n = w.size();
  if (m.size() != n) throw std::invalid_argument("conditional means dimension mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (m(i, j) != std::conj(m(j, i))) throw std::invalid_argument("conditional means are not Hermitian");
  return HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) { return w(i, j) - m(i, j); });
}

RescaleCoefficients rescale_to_row_bound(const VarianceProfile& profile, std::size_t n, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("row bound C must be positive");
  if (auto d = profile.dimension(); d && *d != n) throw std::invalid_argument("profile dimension does not match n");
  RescaleCoefficients r;
  r.n = n;
  r.values.assign(n * n, 1.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return r.values[i * n + j]; };
  for (std::size_t k = 0; k < n; ++k) {
    // columns j < k were fixed while processing row j
    double fixed = 0.0, free = 0.0;
    for (std::size_t j = 0; j < k; ++j) fixed += at(k, j) * at(k, j) * profile(k, j);
    for (std::size_t j = k; j < n; ++j) free += profile(k, j);
    if (fixed + free <= c) continue;
    if (fixed <= c) {
      const double m = std::sqrt((c - fixed) / free);
      for (std::size_t j = k; j < n; ++j) at(k, j) = at(j, k) = m;
    } else {
      const double m = std::sqrt(c / fixed);
      for (std::size_t j = 0; j < k; ++j) at(k, j) = at(j, k) = at(k, j) * m;
      for (std::size_t j = k; j < n; ++j) at(k, j) = at(j, k) = 0.0;
    }
  }
  return r;
}

std::pair<HermitianMatrix, ReductionTrace> unit_variance_replace(const HermitianMatrix& w,
                                                                 const VarianceProfile& profile,
                                                                 const RandomStream& stream) {
  const std::size_t n = w.size();
  if (auto d = profile.dimension(); d && *d != n) throw std::invalid_argument("profile dimension does not match n");
  const double nd = static_cast<double>(n);
  const double unit = 1.0 / std::sqrt(nd);
  ReductionTrace trace;
  auto out = HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) -> Complex {
    const double s2 = profile(i, j);
    if (i != j && s2 <= 1.0 / (2.0 * nd)) {
      trace.replaced_count += 2;
      RandomStream entry = stream.derive(static_cast<std::uint64_t>(i) * n + j);
      return entry.sign() * unit;
    }
    if (s2 == 0.0) {
      ++trace.zero_variance_diagonal_count;
      return 0.0;
    }
    return w(i, j) / std::sqrt(nd * s2);
  });
  trace.frobenius_delta_sq_per_stage.push_back({"unit_variance_replace", delta_sq(w, out)});
  return {std::move(out), std::move(trace)};
}

double replaced_variance(const EntryLaw& law, const VarianceProfile& profile, std::size_t n, std::size_t i,
                         std::size_t j) {
  const double nd = static_cast<double>(n);
  const double s2 = profile(i, j);
  if (i != j && s2 <= 1.0 / (2.0 * nd)) return 1.0 / nd;
  if (s2 == 0.0) return 0.0;
  const auto v = law.variance(s2);
  if (!v) return std::numeric_limits<double>::infinity();
  return (*v / s2) / nd;
}

ComplexMatrix truncated_means(const EnsembleSpec& spec, double eta) {
  spec.validate();
  ComplexMatrix m(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = i; j < spec.n; ++j) {
      const Complex v = spec.law_at(i, j).truncated_mean(spec.profile(i, j), eta);
      m(i, j) = i == j ? Complex(v.real(), 0.0) : v;
      m(j, i) = std::conj(m(i, j));
    }
  return m;
}

std::pair<HermitianMatrix, ReductionTrace> pipeline(const HermitianMatrix& w, const EnsembleSpec& spec, double eta,
                                                    double c) {
  spec.validate();
  if (w.size() != spec.n) throw std::invalid_argument("matrix dimension does not match spec");
  const std::size_t n = spec.n;
  auto [truncated, trace] = truncate(w, eta);

  const ComplexMatrix means = truncated_means(spec, eta);
  for (const Complex& v : means.data()) trace.centering_norm_sq += std::norm(v);
  HermitianMatrix centred = centralize(truncated, means);
  trace.frobenius_delta_sq_per_stage.push_back({"centralize", delta_sq(truncated, centred)});

  std::vector<double> var(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double s2 = spec.profile(i, j);
      const EntryLaw& law = spec.law_at(i, j);
      const double v = std::max(0.0, law.truncated_second_moment(s2, eta, i == j) - std::norm(means(i, j)));
      var[i * n + j] = var[j * n + i] = v;
    }
  trace.rescale_coeffs = rescale_to_row_bound(VarianceProfile::explicit_matrix(n, std::move(var)), n, c);
  const auto& coeffs = trace.rescale_coeffs;
  HermitianMatrix rescaled =
      HermitianMatrix::from_upper(n, [&](std::size_t i, std::size_t j) { return coeffs(i, j) * centred(i, j); });
  trace.frobenius_delta_sq_per_stage.push_back({"rescale", delta_sq(centred, rescaled)});
  return {std::move(rescaled), std::move(trace)};
}

double auto_eta(const EnsembleSpec& spec, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("auto_eta needs a nonempty grid");
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  const auto report = condition_sums(spec, 1.0, sorted);
  double chosen = sorted.back();
  for (const auto& [eps, value] : report.lindeberg)
    if (value <= eps) {
      chosen = eps;
      break;
    }
  return std::max(std::pow(static_cast<double>(spec.n), -0.25), chosen);
}

}  // namespace wignerlab
