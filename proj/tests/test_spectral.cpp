#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "wignerlab/ensembles.hpp"
#include "wignerlab/spectral.hpp"

using namespace wignerlab;

namespace {

StepDistribution random_step(oracle::Gen& g, std::size_t atoms) {
  std::vector<double> x(atoms), w(atoms);
  double total = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    x[i] = g.uniform(-3.0, 3.0);
    w[i] = g.uniform(0.1, 1.0);
    total += w[i];
  }
  for (auto& v : w) v /= total;
  std::vector<std::size_t> idx(atoms);
  for (std::size_t i = 0; i < atoms; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> xs, ws;
  for (auto i : idx) xs.push_back(x[i]), ws.push_back(w[i]);
  return StepDistribution(xs, ws);
}

double ramp_integral_direct(const RampFunction& f, std::span<const double> ev) {
  double s = 0.0;
  for (double x : ev) s += f(x);
  return s / static_cast<double>(ev.size());
}

}  // namespace

TEST(Esd, Examples) {
  const std::vector<double> ones{1, 1, 1};
  const auto a = esd(ones);
  ASSERT_EQ(a.atoms().size(), 1u);
  EXPECT_EQ(a.atoms()[0], 1.0);
  EXPECT_NEAR(a.weights()[0], 1.0, 1e-15);

  const std::vector<double> pm{1, -1};
  const auto b = esd(pm);
  ASSERT_EQ(b.atoms().size(), 2u);
  EXPECT_EQ(b.atoms()[0], -1.0);
  EXPECT_EQ(b.weights()[0], 0.5);
  EXPECT_EQ(b.weights()[1], 0.5);

  EXPECT_THROW(esd(std::vector<double>{}), std::invalid_argument);
}

TEST(Esd, SampledWignerIsCentred) {
  const auto ev = eigenvalues_desc(sample(unit_wigner(256, EntryLaw::gaussian_real(), 42), 0));
  EXPECT_NEAR(esd(ev).cdf(0.0), 0.5, 0.08);
}

TEST(StepDistribution, MergesAndRejects) {
  const StepDistribution d({0.0, 0.0, 1.0}, {0.25, 0.25, 0.5});
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(d.weights()[0], 0.5);
  EXPECT_THROW(StepDistribution({0.0}, {0.5}), std::invalid_argument);
  EXPECT_THROW(StepDistribution({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(d.cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(d.cdf_left(0.0), 0.0);
  EXPECT_DOUBLE_EQ(d.cdf(1.0), 1.0);
}

TEST(Semicircle, Cdf) {
  EXPECT_NEAR(SemicircleLaw::cdf(0.0), 0.5, 1e-15);
  EXPECT_EQ(SemicircleLaw::cdf(-2.0), 0.0);
  EXPECT_EQ(SemicircleLaw::cdf(2.0), 1.0);
  EXPECT_EQ(SemicircleLaw::cdf(-7.0), 0.0);
  EXPECT_EQ(SemicircleLaw::cdf(7.0), 1.0);
  for (double x : {1.0, -1.3, 0.2, 1.9}) {
    const double q = oracle::adaptive_simpson(SemicircleLaw::density, -2.0, x, 1e-13);
    EXPECT_NEAR(SemicircleLaw::cdf(x), q, 1e-9) << x;
  }
}

TEST(Semicircle, DensityIntegratesToOne) {
  EXPECT_NEAR(oracle::semicircle_integral([](double) { return 1.0; }), 1.0, 1e-10);
  EXPECT_NEAR(oracle::adaptive_simpson(SemicircleLaw::density, -2.0, 2.0, 1e-14), 1.0, 1e-8);
}

TEST(Semicircle, FirstMomentCdfAndQuantile) {
  for (double x : {-1.5, 0.0, 0.7, 2.0}) {
    const double q = oracle::adaptive_simpson([](double t) { return t * SemicircleLaw::density(t); }, -2.0, x, 1e-13);
    EXPECT_NEAR(SemicircleLaw::first_moment_cdf(x), q, 1e-9);
  }
  for (double u : {0.01, 0.3, 0.5, 0.77, 0.999}) EXPECT_NEAR(SemicircleLaw::cdf(SemicircleLaw::quantile(u)), u, 1e-12);
}

TEST(Levy, Examples) {
  const auto d0 = StepDistribution::point_mass(0.0);
  EXPECT_NEAR(levy_distance(d0, d0), 0.0, 1e-10);
  EXPECT_NEAR(levy_distance(d0, StepDistribution::point_mass(0.5)), 0.5, 1e-6);
  EXPECT_NEAR(levy_distance(d0, StepDistribution::point_mass(0.5)), oracle::brute_levy(d0, StepDistribution::point_mass(0.5), {0.0, 0.5}), 1e-4);
}

TEST(Levy, MatchesBruteForceScan) {
  oracle::Gen g(41);
  for (int rep = 0; rep < 25; ++rep) {
    const auto f = random_step(g, g.index(1, 4)), h = random_step(g, g.index(1, 4));
    std::vector<double> pts(f.atoms().begin(), f.atoms().end());
    pts.insert(pts.end(), h.atoms().begin(), h.atoms().end());
    const double brute = oracle::brute_levy(f, h, pts, 1e-4);
    EXPECT_NEAR(levy_distance(f, h), brute, 1.01e-4) << rep;
  }
}

TEST(Levy, SymmetricAndBelowKolmogorov) {
  oracle::Gen g(42);
  for (int rep = 0; rep < 100; ++rep) {
    const auto f = random_step(g, g.index(1, 12)), h = random_step(g, g.index(1, 12));
    const double l = levy_distance(f, h);
    EXPECT_NEAR(l, levy_distance(h, f), 1e-9);
    EXPECT_LE(l, kolmogorov_distance(f, h) + 1e-9);
    EXPECT_GE(l, 0.0);
  }
}

TEST(Levy, AgainstSemicircle) {
  const auto disc = semicircle_discretization(10000);
  EXPECT_LE(levy_distance(disc, SemicircleLaw{}), 1e-4);
  EXPECT_NEAR(levy_distance(disc, SemicircleLaw{}), levy_distance(SemicircleLaw{}, disc), 1e-9);
  const auto d0 = StepDistribution::point_mass(0.0);
  EXPECT_LE(levy_distance(d0, SemicircleLaw{}), kolmogorov_distance(d0, SemicircleLaw{}) + 1e-9);
  EXPECT_NEAR(kolmogorov_distance(d0, SemicircleLaw{}), 0.5, 1e-9);
}

TEST(Kolmogorov, Examples) {
  const auto d0 = StepDistribution::point_mass(0.0);
  EXPECT_EQ(kolmogorov_distance(d0, d0), 0.0);
  EXPECT_EQ(kolmogorov_distance(d0, StepDistribution::point_mass(1.0)), 1.0);
  const double k = kolmogorov_distance(d0, StepDistribution::point_mass(1e-9));
  EXPECT_GT(k, 0.0);
  EXPECT_LE(k, 1.0);
}

TEST(Moments, CatalanValues) {
  EXPECT_EQ(semicircle_moment(0), 1u);
  EXPECT_EQ(semicircle_moment(2), 1u);
  EXPECT_EQ(semicircle_moment(4), 2u);
  EXPECT_EQ(semicircle_moment(6), 5u);
  EXPECT_EQ(semicircle_moment(8), 14u);
  EXPECT_EQ(semicircle_moment(3), 0u);
  EXPECT_EQ(semicircle_moment(71), 0u);
  for (unsigned m = 0; m <= 30; ++m) EXPECT_EQ(semicircle_moment(2 * m), oracle::catalan(m)) << m;
  EXPECT_EQ(semicircle_moment(72), 11959798385860453492ULL);
  EXPECT_THROW(semicircle_moment(74), std::overflow_error);
}

TEST(Moments, MatchQuadrature) {
  for (unsigned k = 0; k <= 12; ++k) {
    const double q = oracle::semicircle_integral([k](double x) { return std::pow(x, k); });
    EXPECT_NEAR(static_cast<double>(semicircle_moment(k)), q, 1e-8) << k;
  }
}

TEST(ExpectedEsd, Examples) {
  const auto d0 = StepDistribution::point_mass(0.0), d1 = StepDistribution::point_mass(1.0);
  const std::vector<StepDistribution> one{d1};
  const auto e1 = expected_esd(one);
  EXPECT_EQ(e1.atoms()[0], 1.0);
  EXPECT_EQ(e1.weights()[0], 1.0);
  const std::vector<StepDistribution> two{d0, d1};
  const auto e2 = expected_esd(two);
  ASSERT_EQ(e2.atoms().size(), 2u);
  EXPECT_EQ(e2.weights()[0], 0.5);
  EXPECT_EQ(e2.weights()[1], 0.5);
  EXPECT_THROW(expected_esd(std::vector<StepDistribution>{}), std::invalid_argument);
}

TEST(ExpectedEsd, CdfIsAverage) {
  const auto spec = unit_wigner(12, EntryLaw::rademacher(), 5);
  std::vector<StepDistribution> samples;
  for (std::uint64_t t = 0; t < 50; ++t) samples.push_back(esd(eigenvalues_desc(sample(spec, t))));
  const auto e = expected_esd(samples);
  for (double x = -3.0; x <= 3.0; x += 0.05) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s.cdf(x);
    EXPECT_NEAR(e.cdf(x), mean / 50.0, 1e-12);
  }
}

TEST(Ramp, ValuesAndErrors) {
  const RampFunction f(-0.5, 0.5);
  EXPECT_EQ(f(-1.0), 1.0);
  EXPECT_EQ(f(-0.5), 1.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.5);
  EXPECT_EQ(f(0.5), 0.0);
  EXPECT_THROW(RampFunction(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RampFunction(2.0, 1.0), std::invalid_argument);
}

TEST(WeakConvergence, Examples) {
  const auto disc = semicircle_discretization(10000);
  const std::vector<RampFunction> grid{RampFunction(-3, -2.5), RampFunction(2.5, 3)};
  const auto rep = weak_convergence_report(disc, SemicircleLaw{}, grid);
  ASSERT_EQ(rep.size(), 2u);
  EXPECT_LE(rep[0].discrepancy, 1e-12);
  EXPECT_LE(rep[1].discrepancy, 1e-12);
  EXPECT_EQ(integrate(grid[0], SemicircleLaw{}), 0.0);
  EXPECT_NEAR(integrate(grid[1], disc), 1.0, 1e-12);

  EXPECT_DOUBLE_EQ(integrate(RampFunction(-0.5, 0.5), StepDistribution::point_mass(0.0)), 0.5);
  EXPECT_THROW(weak_convergence_report(disc, SemicircleLaw{}, std::vector<RampFunction>{}), std::invalid_argument);
}

TEST(WeakConvergence, SemicircleIntegralMatchesQuadrature) {
  for (auto [p, q] : {std::pair{-0.5, 0.5}, {-2.5, -1.0}, {1.5, 2.5}, {-3.0, 3.0}}) {
    const RampFunction f(p, q);
    EXPECT_NEAR(integrate(f, SemicircleLaw{}), oracle::semicircle_integral([&](double x) { return f(x); }), 1e-9);
  }
}

// ---------------------------------------------------------------------------
// perturbation inequalities, 200 random instances each

TEST(Property, LevyCubePerturbation) {
  oracle::Gen g(51);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(1, 64);
    const auto a = g.hermitian(n, true, 1.0 / std::sqrt(static_cast<double>(n)));
    const auto b = a + g.hermitian(n, true, g.uniform(0.0, 0.3) / std::sqrt(static_cast<double>(n)));
    const double l = levy_distance(esd(eigenvalues_desc(a)), esd(eigenvalues_desc(b)));
    const double f = frobenius_norm(a - b);
    EXPECT_LE(l * l * l, f * f / static_cast<double>(n) + 1e-6) << n;
  }
}

TEST(Property, RankInequality) {
  oracle::Gen g(52);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(2, 64);
    const std::size_t r = g.index(0, std::min<std::size_t>(n, 4));
    const auto a = g.hermitian(n);
    const auto b = a + g.low_rank(n, r);
    const double k = kolmogorov_distance(esd(eigenvalues_desc(a)), esd(eigenvalues_desc(b)));
    EXPECT_LE(k, static_cast<double>(r) / static_cast<double>(n) + 1e-9) << n << " " << r;
  }
}

TEST(Property, BoundedVariationRankInequality) {
  oracle::Gen g(53);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(2, 64);
    const std::size_t r = g.index(0, 3);
    const auto a = g.hermitian(n);
    const auto b = a + g.low_rank(n, r);
    const double p = g.uniform(-5.0, 5.0);
    const RampFunction f(p, p + g.uniform(0.01, 5.0));
    const auto la = eigenvalues_desc(a), lb = eigenvalues_desc(b);
    const double d = std::abs(integrate(f, esd(la)) - integrate(f, esd(lb)));
    EXPECT_NEAR(integrate(f, esd(la)), ramp_integral_direct(f, la), 1e-12);
    EXPECT_LE(d, static_cast<double>(numeric_rank(a - b)) / static_cast<double>(n) + 1e-9);
  }
}
