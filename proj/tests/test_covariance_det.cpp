#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "holelab/coeff_models.hpp"
#include "holelab/covariance_det.hpp"
#include "holelab/errors.hpp"

using namespace holelab;

TEST(CovarianceSpec, Defaults) {
  const auto s = CovarianceSpec::from_radius(2.0);
  EXPECT_NEAR(*s.delta(), std::pow(2.0, -0.8), 1e-15);
  EXPECT_NEAR(s.kappa(), 1.0 - std::sqrt(std::pow(2.0, -0.8)), 1e-15);
  EXPECT_EQ(s.n(), 10);
  EXPECT_THROW(CovarianceSpec::from_radius(1.0), std::invalid_argument);
  EXPECT_THROW(CovarianceSpec::custom(1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(CovarianceSpec::custom(1.0, 0.5, 0), std::invalid_argument);
}

TEST(GridPoints, FourthRoots) {
  const auto z = grid_points(CovarianceSpec::custom(1.0, 0.5, 4));
  ASSERT_EQ(z.size(), 4u);
  const std::complex<double> expect[] = {{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0, -0.5}};
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(z[j] - expect[j]), 0.0, 1e-15);
  EXPECT_EQ(z[0].imag(), 0.0);
}

TEST(GridPoints, ModulusAndProductIdentity) {
  for (long n : {3L, 8L, 17L}) {
    const auto spec = CovarianceSpec::custom(2.0, 0.6, n);
    const auto z = grid_points(spec);
    std::complex<double> prod = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      EXPECT_NEAR(std::abs(z[j]), 1.2, 1e-15);
      if (j > 0) prod *= z[0] - z[j];
    }
    const double expect = n * std::pow(1.2, n - 1);
    EXPECT_NEAR(prod.real(), expect, 1e-12 * expect);
    EXPECT_NEAR(prod.imag(), 0.0, 1e-12 * expect);
  }
}

TEST(LogdetCirculant, OneByOne) {
  const auto spec = CovarianceSpec::custom(1.5, 0.8, 1);
  EXPECT_NEAR(logdet_circulant(spec), 1.44, 1e-14);
  EXPECT_NEAR(logdet_dense(spec), 1.44, 1e-14);
}

TEST(LogdetCirculant, TwoByTwo) {
  const auto spec = CovarianceSpec::custom(1.3, 0.7, 2);
  const double x = spec.x();
  const double expect = 2 * x + std::log1p(-std::exp(-4 * x));
  EXPECT_NEAR(logdet_circulant(spec), expect, 1e-10 * std::abs(expect));
  EXPECT_NEAR(logdet_dense(spec), expect, 1e-10 * std::abs(expect));
}

TEST(LogdetCirculant, MatchesHighPrecisionDeterminant) {
  // 50-digit determinants of the explicit matrix
  EXPECT_NEAR(logdet_circulant(CovarianceSpec::custom(1.5, 0.8, 8)), 1.2911985783872025614, 1e-10);
  EXPECT_NEAR(logdet_circulant(CovarianceSpec::from_radius(1.5)), -44.506195254368234571, 1e-9);
  EXPECT_NEAR(logdet_circulant(CovarianceSpec::from_radius(2.0)), -91.193088604307862968, 1e-9);
  EXPECT_NEAR(logdet_circulant(CovarianceSpec::from_radius(2.5)), -196.45775799631526555, 1e-8);
}

TEST(LogdetDense, AgreesWithCirculant) {
  const auto custom = CovarianceSpec::custom(1.5, 0.8, 8);
  EXPECT_NEAR(logdet_dense(custom), logdet_circulant(custom), 1e-8 * std::abs(logdet_circulant(custom)));
  for (double r : {1.5, 2.0, 2.5, 3.0}) {
    const auto spec = CovarianceSpec::from_radius(r);
    const double c = logdet_circulant(spec);
    EXPECT_NEAR(logdet_dense(spec), c, 1e-8 * std::abs(c)) << r;
  }
}

TEST(LogdetDense, PivotsPositive) {
  for (double r : {1.5, 2.0, 2.5}) {
    const auto p = dense_cholesky_pivots(CovarianceSpec::from_radius(r));
    for (double v : p) EXPECT_GT(v, 0.0);
  }
}

TEST(LogdetDense, Preconditions) {
  EXPECT_THROW(logdet_dense(CovarianceSpec::custom(2.0, 0.5, 65)), std::invalid_argument);
  EXPECT_THROW(logdet_dense(CovarianceSpec::custom(20.0, 0.9, 10)), std::invalid_argument);
}

TEST(LogdetDense, SingularMatrixReportsPivot) {
  // 64 points on a tiny circle: numerically rank deficient even in 100 digits
  try {
    logdet_dense(CovarianceSpec::custom(1.01, 0.01, 64));
    FAIL() << "expected a numeric failure";
  } catch (const NumericFailure& e) {
    EXPECT_NE(std::string(e.what()).find("pivot"), std::string::npos) << e.what();
  }
}

TEST(CirculantEigenvalues, PositiveAndSumToTrace) {
  for (double r : {1.5, 3.0, 10.0, 20.0}) {
    const auto spec = CovarianceSpec::from_radius(r);
    const auto lam = circulant_log_eigenvalues(spec);
    ASSERT_EQ(static_cast<long>(lam.size()), spec.n());
    double m = -HUGE_VAL;
    for (double l : lam) {
      EXPECT_TRUE(std::isfinite(l));
      m = std::max(m, l);
    }
    // trace = N e^x
    double acc = 0.0;
    for (double l : lam) acc += std::exp(l - m);
    const double log_trace = m + std::log(acc);
    EXPECT_NEAR(log_trace, std::log(static_cast<double>(spec.n())) + spec.x(), 1e-10 * (1 + spec.x()));
  }
}

TEST(Vandermonde, RegroupingIdentity) {
  for (double r : {1.5, 2.0, 3.0, 10.0}) {
    const auto spec = CovarianceSpec::from_radius(r);
    const double a = vandermonde_lower_bound(spec);
    EXPECT_NEAR(a, vandermonde_minor_regrouped(spec), 1e-10 * std::abs(a)) << r;
  }
}

TEST(Vandermonde, SinglePoint) {
  for (double kr : {0.3, 1.0, 2.0}) {
    const auto spec = CovarianceSpec::custom(kr / 0.5, 0.5, 1);
    EXPECT_NEAR(vandermonde_lower_bound(spec), 2 * std::log(kr), 1e-14);
    EXPECT_LE(vandermonde_lower_bound(spec), logdet_circulant(spec));
  }
}

TEST(Vandermonde, MinorBoundsDeterminant) {
  for (double r : {1.5, 2.0, 2.5, 3.0, 5.0, 10.0}) {
    const auto spec = CovarianceSpec::from_radius(r);
    EXPECT_LE(vandermonde_lower_bound(spec), logdet_circulant(spec)) << r;
  }
  const auto custom = CovarianceSpec::custom(1.5, 0.8, 8);
  EXPECT_LE(vandermonde_lower_bound(custom), logdet_circulant(custom));
}

// With N = floor(e r^2) points on the circle of radius kappa r, the minor contains
// a_n (kappa r)^n for n far beyond (kappa r)^2, so it does not reach S(kappa r).
TEST(Vandermonde, GapToSAtInnerRadius) {
  const auto gef = CoefficientModel::gef();
  for (double r : {1.5, 2.0, 2.5, 3.0}) {
    const auto spec = CovarianceSpec::from_radius(r);
    const double s = s_of_r(gef, spec.grid_radius());
    const double ld = logdet_circulant(spec);
    const double minor = vandermonde_lower_bound(spec);
    std::cout << "r=" << r << " logdet=" << ld << " minor=" << minor << " S(kr)=" << s
              << " gap(logdet - S)=" << ld - s << " gap(minor - S)=" << minor - s << '\n';
    EXPECT_LT(ld - s, 0.0);
  }
  // a generous kappa and a smaller grid restore the clean inequality
  const auto spec = CovarianceSpec::custom(3.0, 0.95, 12);
  EXPECT_GE(logdet_circulant(spec), s_of_r(gef, spec.grid_radius()) - 1e-9);
}
