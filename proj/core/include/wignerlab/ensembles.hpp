#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/hermitian.hpp"
#include "wignerlab/random.hpp"

namespace wignerlab {

enum class LawKind {
  rademacher_scaled,
  gaussian_real,
  gaussian_complex,
  uniform_bounded,
  pareto_symmetric,
  constant_zero,
};

// Distribution of a single matrix entry, parameterised by the profile value
// s2 of its position.
//
// Finite-variance kinds are scaled so that Var[w] = s2 exactly. The Pareto
// kind is w = sign * scale * sqrt(s2) * T with P(T > t) = t^-alpha for
// t >= 1; there s2 acts as a squared scale, not a variance. All kinds are
// symmetric about zero.
//
// Complex laws produce real diagonal entries (a real gaussian of variance
// s2 for gaussian_complex).
class EntryLaw {
 public:
  static EntryLaw rademacher() { return EntryLaw(LawKind::rademacher_scaled); }
  static EntryLaw gaussian_real() { return EntryLaw(LawKind::gaussian_real); }
  static EntryLaw gaussian_complex() { return EntryLaw(LawKind::gaussian_complex); }
  static EntryLaw uniform_bounded() { return EntryLaw(LawKind::uniform_bounded); }
  static EntryLaw pareto_symmetric(double alpha, double scale);
  static EntryLaw constant_zero() { return EntryLaw(LawKind::constant_zero); }

  LawKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double scale() const { return scale_; }
  std::string name() const;

  bool is_complex() const { return kind_ == LawKind::gaussian_complex; }
  bool is_symmetric() const { return true; }
  bool has_finite_variance() const { return kind_ != LawKind::pareto_symmetric || alpha_ > 2.0; }
  // Largest k with E|w|^k finite (max() for bounded/gaussian laws).
  double moment_limit() const;

  // Var[w]; nullopt when infinite.
  std::optional<double> variance(double s2) const;
  // P(|w| > x)
  double tail_probability(double s2, double x, bool diagonal = false) const;
  // E[|w|^2 ; |w| > x]  (+inf when the second moment diverges)
  double tail_second_moment(double s2, double x, bool diagonal = false) const;
  // E[|w|^2 ; |w| <= x]
  double truncated_second_moment(double s2, double x, bool diagonal = false) const;
  // E[w ; |w| <= x]  (zero for every symmetric law)
  Complex truncated_mean(double s2, double x) const;
  // E[w^p conj(w)^q]; throws std::domain_error("oracle requires finite
  // moments") when the moment diverges.
  Complex mixed_moment(double s2, int p, int q, bool diagonal) const;

  Complex draw(double s2, RandomStream& stream, bool diagonal) const;

  friend bool operator==(const EntryLaw&, const EntryLaw&) = default;

 private:
  explicit EntryLaw(LawKind kind) : kind_(kind) {}
  LawKind kind_;
  double alpha_ = 0.0;
  double scale_ = 1.0;
};

enum class ProfileKind { uniform, banded, explicit_matrix };

// Array sigma^2_ij of per-position law parameters (variances for finite
// variance laws). Symmetric and nonnegative.
class VarianceProfile {
 public:
  static VarianceProfile uniform(double value);
  // inside for |i - j| <= width, outside otherwise.
  static VarianceProfile banded(std::size_t width, double inside, double outside);
  // Row-major n x n values; throws "explicit profile asymmetric" unless
  // exactly symmetric, and on negative entries.
  static VarianceProfile explicit_matrix(std::size_t n, std::vector<double> values);

  ProfileKind kind() const { return kind_; }
  double operator()(std::size_t i, std::size_t j) const;
  // Only explicit profiles carry a dimension.
  std::optional<std::size_t> dimension() const;

  struct RowGroup {
    double s2;
    std::size_t count;
    bool diagonal;
  };
  // Row i of an n x n profile as (value, multiplicity) groups; the diagonal
  // position is always its own group.
  std::vector<RowGroup> row_groups(std::size_t i, std::size_t n) const;

  std::string describe() const;

 private:
  ProfileKind kind_ = ProfileKind::uniform;
  double a_ = 0.0, b_ = 0.0;
  std::size_t width_ = 0, n_ = 0;
  std::vector<double> values_;
};

struct EnsembleSpec {
  std::size_t n = 1;
  EntryLaw law = EntryLaw::gaussian_real();
  VarianceProfile profile = VarianceProfile::uniform(1.0);
  std::optional<EntryLaw> diagonal_law;
  std::uint64_t seed = 0;

  const EntryLaw& law_at(std::size_t i, std::size_t j) const {
    return (i == j && diagonal_law) ? *diagonal_law : law;
  }
  // Throws when an explicit profile does not match n, or n == 0.
  void validate() const;
};

// sigma^2_ij = 1/n for every position.
EnsembleSpec unit_wigner(std::size_t n, EntryLaw law, std::uint64_t seed);

// Infinite-variance ensemble w_ij = s_ij T_ij / a_n with s_ij fair signs,
// P(T > t) = t^-2 (t >= 1), and a_n the root of a^2 = n ln(a^2) with
// a^2 > n. This normalisation makes each row's truncated variance
// sum_j Var[w_ij 1(|w_ij| <= 1)] exactly 1. Requires n >= 3.
EnsembleSpec heavy_tail(std::size_t n, std::uint64_t seed);
double heavy_tail_normaliser(std::size_t n);

// Independent upper triangle, entry (i, j) drawn from stream.derive(i*n + j).
HermitianMatrix sample(const EnsembleSpec& spec, const RandomStream& stream);
// Trial t of the spec's master seed.
HermitianMatrix sample(const EnsembleSpec& spec, std::uint64_t trial);

struct GaussConditions {
  // (epsilon, max_i sum_j P(|w_ij| > epsilon))
  std::vector<std::pair<double, double>> tail_sums;
  // max_i |sum_j E[w_ij ; |w_ij| <= 1]|
  double truncated_mean_sum = 0.0;
  // Row value of sum_j Var[w_ij 1(|w_ij| <= 1)] farthest from 1.
  double truncated_variance_sum = 0.0;
  std::size_t worst_row = 0;
};

// The three sums carry the 1/n normalisation under which they must vanish.
struct ConditionReport {
  // (1/n) sum_i | sum_j (Var[w_ij] - 1/n) |
  double var_row_sum_stat = 0.0;
  // (1/n) sum_i ( sum_j Var[w_ij] - C )_+
  double row_excess_stat = 0.0;
  double c = 0.0;
  // (epsilon, (1/n) sum_ij E[|w_ij|^2 ; |w_ij| > epsilon])
  std::vector<std::pair<double, double>> lindeberg;
  std::optional<GaussConditions> gauss;
};

// Finite-n values of the three variance/Lindeberg sums, from closed-form
// law moments (every law kind has one). Infinite variances give +inf.
ConditionReport condition_sums(const EnsembleSpec& spec, double c, std::span<const double> epsilons);

// Row conditions of the gaussian-convergence criterion, evaluated exactly.
// Throws "gauss_row_check requires symmetric entries" for asymmetric laws.
ConditionReport gaussian_row_check(const EnsembleSpec& spec, std::span<const double> epsilons);

}  // namespace wignerlab
