#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support/oracles.hpp"
#include "wignerlab/hermitian.hpp"

using namespace wignerlab;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double frob_sq(const ComplexMatrix& m) {
  double s = 0.0;
  for (auto v : m.data()) s += std::norm(v);
  return s;
}

}  // namespace

TEST(Hermitian, ConstructionMirrorsExactly) {
  oracle::Gen g(1);
  const auto a = g.hermitian(9);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(a(i, i).imag(), 0.0);
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(a(i, j), std::conj(a(j, i)));
  }
}

TEST(Hermitian, FromDenseAveragesTinyAsymmetry) {
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = Complex(2.0, 1.0);
  m(1, 0) = Complex(2.0 + 1e-14, -1.0);
  m(1, 1) = Complex(3.0, 1e-15);
  const auto h = HermitianMatrix::from_dense(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
  EXPECT_EQ(h(1, 1).imag(), 0.0);
  EXPECT_NEAR(h(0, 1).real(), 2.0, 1e-13);
}

TEST(Hermitian, FromDenseRejectsAsymmetry) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.1;
  EXPECT_THROW(HermitianMatrix::from_dense(m), std::invalid_argument);
}

TEST(Hermitian, OneByOneIsLegal) {
  const auto a = HermitianMatrix::from_real_rows({{4.5}});
  EXPECT_EQ(eigenvalues_desc(a), std::vector<double>{4.5});
  EXPECT_DOUBLE_EQ(trace_power(a, 3), 4.5 * 4.5 * 4.5);
  EXPECT_EQ(numeric_rank(a), 1u);
}

TEST(Eigen, DiagonalSorted) {
  const std::vector<double> d{1, 3, 2};
  EXPECT_EQ(eigenvalues_desc(HermitianMatrix::diagonal(d)), (std::vector<double>{3, 2, 1}));
}

TEST(Eigen, SwapMatrix) {
  const auto ev = eigenvalues_desc(HermitianMatrix::from_real_rows({{0, 1}, {1, 0}}));
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], -1.0, 1e-14);
}

TEST(Eigen, MatchesInertiaBisectionOn5x5) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    oracle::Gen g(100 + seed);
    const auto a = g.hermitian(5, seed % 2 == 0);
    EXPECT_LE(max_abs_diff(eigenvalues_desc(a), oracle::bisection_eigenvalues(a)), 1e-8) << "seed " << seed;
  }
}

TEST(Eigen, MatchesInertiaBisectionWithDegenerateSpectrum) {
  oracle::Gen g(7);
  const auto a = g.low_rank(8, 2);  // six-fold zero eigenvalue
  EXPECT_LE(max_abs_diff(eigenvalues_desc(a), oracle::bisection_eigenvalues(a)), 1e-8);
}

TEST(Eigen, ReconstructionAndOrthonormality) {
  for (std::size_t n : {1, 2, 3, 8, 17, 32}) {
    oracle::Gen g(n);
    const auto a = g.hermitian(n);
    const auto d = eigen_decompose(a, true);
    ASSERT_TRUE(d.basis.has_value());
    const auto& u = *d.basis;
    ComplexMatrix ud(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ud(i, j) = u(i, j) * d.eigenvalues[j];
    const auto rec = ud * u.conjugate_transpose();
    ComplexMatrix diff(n), gram = u.conjugate_transpose() * u;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        diff(i, j) = rec(i, j) - a(i, j);
        gram(i, j) -= i == j ? 1.0 : 0.0;
      }
    const double tol = 1e-10 * static_cast<double>(n);
    EXPECT_LE(std::sqrt(frob_sq(diff)), tol * frobenius_norm(a)) << "n=" << n;
    EXPECT_LE(std::sqrt(frob_sq(gram)), tol) << "n=" << n;
  }
}

TEST(Eigen, EigenvalueOnlyPathAgreesWithBasisPath) {
  oracle::Gen g(5);
  const auto a = g.hermitian(24);
  EXPECT_LE(max_abs_diff(eigen_decompose(a, false).eigenvalues, eigen_decompose(a, true).eigenvalues), 1e-12);
}

TEST(Eigen, SumEqualsTrace) {
  oracle::Gen g(11);
  for (std::size_t n : {3, 10, 40}) {
    const auto a = g.hermitian(n);
    const auto ev = eigenvalues_desc(a);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += a(i, i).real();
    EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), tr,
                1e-10 * static_cast<double>(n) * a.max_abs_entry());
  }
}

TEST(TracePower, Examples) {
  EXPECT_NEAR(trace_power(HermitianMatrix::identity(3), 5), 3.0, 1e-12);
  EXPECT_NEAR(trace_power(HermitianMatrix::from_real_rows({{0, 1}, {1, 0}}), 2), 2.0, 1e-12);
  oracle::Gen g(3);
  const auto a = g.hermitian(4);
  const double direct = oracle::dense_trace_real(oracle::dense_power(a.to_dense(), 3));
  EXPECT_NEAR(trace_power(a, 3), direct, 1e-8 * std::max(1.0, std::abs(direct)));
}

TEST(TracePower, MatchesRepeatedMultiplication) {
  oracle::Gen g(21);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = g.index(1, 16);
    const auto a = g.hermitian(n);
    for (int k = 1; k <= 8; ++k) {
      const auto p = oracle::dense_power(a.to_dense(), k);
      const double direct = oracle::dense_trace_real(p);
      // relative to the scale sum |lambda|^k, since odd traces can cancel
      const double scale = trace_power(a, 2 * ((k + 1) / 2)) + 1.0;
      EXPECT_LE(std::abs(trace_power(a, k) - direct), 1e-8 * std::max(scale, std::abs(direct))) << n << " " << k;
    }
  }
}

TEST(Frobenius, Examples) {
  EXPECT_EQ(frobenius_norm(HermitianMatrix::zero(4)), 0.0);
  EXPECT_NEAR(frobenius_norm(HermitianMatrix::identity(7)), std::sqrt(7.0), 1e-14);
  EXPECT_NEAR(frobenius_norm(HermitianMatrix::from_real_rows({{0, 3}, {3, 0}})), std::sqrt(18.0), 1e-14);
}

TEST(Frobenius, EqualsRootTraceSquare) {
  oracle::Gen g(4);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = g.hermitian(g.index(1, 20));
    const double f = frobenius_norm(a);
    EXPECT_NEAR(f, std::sqrt(trace_power(a, 2)), 1e-10 * f);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(numeric_rank(HermitianMatrix::zero(3)), 0u);
  EXPECT_EQ(numeric_rank(HermitianMatrix::identity(4)), 4u);
  std::vector<Complex> v{Complex(0.5, 0.5), Complex(0.5, 0.0), Complex(0.0, -0.5)};
  const auto r1 = HermitianMatrix::from_upper(3, [&](std::size_t i, std::size_t j) { return v[i] * std::conj(v[j]); });
  EXPECT_EQ(numeric_rank(r1), 1u);
  EXPECT_EQ(numeric_rank(HermitianMatrix::identity(4), 2.0), 0u);
}

TEST(Rank, LowRankConstruction) {
  oracle::Gen g(9);
  for (std::size_t r = 0; r <= 5; ++r) EXPECT_EQ(numeric_rank(g.low_rank(12, r)), r);
}

TEST(Minor, Examples) {
  oracle::Gen g(2);
  const auto a = g.hermitian(4);
  const std::vector<std::size_t> all{0, 1, 2, 3};
  EXPECT_EQ(principal_minor(a, all), a);

  const std::vector<double> d{3, 1, 2};
  const std::vector<std::size_t> k13{0, 2};
  const std::vector<double> d32{3, 2};
  EXPECT_EQ(principal_minor(HermitianMatrix::diagonal(d), k13), HermitianMatrix::diagonal(d32));

  const std::vector<std::size_t> k234{1, 2, 3};
  const auto m = principal_minor(a, k234);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), a(i + 1, j + 1));
}

TEST(Minor, EmptyThrows) {
  const std::vector<std::size_t> none;
  try {
    principal_minor(HermitianMatrix::identity(2), none);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_STREQ(e.what(), "empty minor");
  }
}

TEST(Determinant, LuMatchesLeibniz) {
  oracle::Gen g(13);
  for (std::size_t n = 1; n <= 6; ++n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g.normal(), g.normal());
    const Complex ref = oracle::leibniz_determinant(m);
    EXPECT_LE(std::abs(determinant(m) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

// ---------------------------------------------------------------------------
// properties, 200 random instances each

TEST(Property, SpectrumIsReal) {
  oracle::Gen g(31);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = g.hermitian(g.index(1, 32));
    EXPECT_LE(eigen_decompose(a, false).max_discarded_imag, 1e-10);
  }
}

TEST(Property, CauchyInterlacing) {
  oracle::Gen g(32);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(2, 32);
    const auto a = g.hermitian(n, rep % 2 == 0);
    std::vector<std::size_t> keep(n - 1);
    std::iota(keep.begin(), keep.end(), 0);
    const auto la = eigenvalues_desc(a);
    const auto lb = eigenvalues_desc(principal_minor(a, keep));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      EXPECT_LE(la[i + 1], lb[i] + 1e-8);
      EXPECT_LE(lb[i], la[i] + 1e-8);
    }
  }
}

TEST(Property, CourantFischerSpotCheck) {
  oracle::Gen g(33);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(1, 6);
    const auto a = g.hermitian(n);
    const auto ev = eigenvalues_desc(a);
    const auto rayleigh = [&](const std::vector<Complex>& v) {
      Complex q = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += std::conj(v[i]) * a(i, j) * v[j];
      return q.real();
    };
    // random unit vectors drawn around the running maximiser (stochastic ascent)
    auto centre = g.unit_vector(n);
    double best = rayleigh(centre), radius = 1.0;
    for (int s = 1; s < 10000; ++s) {
      auto v = g.unit_vector(n);
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = centre[i] + radius * v[i];
        norm += std::norm(v[i]);
      }
      for (auto& x : v) x /= std::sqrt(norm);
      const double q = rayleigh(v);
      if (q > best) {
        best = q;
        centre = v;
      } else {
        radius = std::max(1e-6, radius * 0.995);
      }
    }
    const double spread = std::max(std::abs(ev.front()), ev.front() - ev.back());
    EXPECT_LE(best, ev.front() + 1e-10);
    EXPECT_GE(best, ev.front() - 0.05 * spread) << "n=" << n;
  }
}

TEST(Property, HoffmanWielandt) {
  oracle::Gen g(34);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = g.index(1, 32);
    const auto a = g.hermitian(n), b = g.hermitian(n);
    const auto la = eigenvalues_desc(a), lb = eigenvalues_desc(b);
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) lhs += (la[i] - lb[i]) * (la[i] - lb[i]);
    const double f = frobenius_norm(a - b);
    EXPECT_LE(lhs, f * f + 1e-8);
  }
}
