#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holelab/coeff_models.hpp"
#include "holelab/sampling.hpp"

using namespace holelab;

namespace {

// 99% critical value of the one-sample KS statistic, asymptotic form
double ks_critical_99(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST(DrawCoeffs, RademacherSupport) {
  const auto d = draw_coeffs(Distribution::Rademacher, 8, 17);
  ASSERT_EQ(d.values.size(), 8u);
  EXPECT_EQ(d.truncation_degree(), 7);
  for (auto v : d.values) {
    EXPECT_TRUE(v == std::complex<double>(1.0, 0.0) || v == std::complex<double>(-1.0, 0.0));
  }
  const auto many = draw_coeffs(Distribution::Rademacher, 100000, 3);
  long plus = 0;
  for (auto v : many.values) plus += v.real() > 0;
  EXPECT_NEAR(plus / 1e5, 0.5, 3 * 0.5 / std::sqrt(1e5));
}

TEST(DrawCoeffs, SteinhausUnitModulus) {
  const auto d = draw_coeffs(Distribution::Steinhaus, 1000, 5);
  for (auto v : d.values) EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
}

TEST(DrawCoeffs, GaussianSecondMoment) {
  const std::size_t n = 100000;
  const auto d = draw_coeffs(Distribution::ComplexGaussian, n, 11);
  double s = 0.0;
  for (auto v : d.values) {
    ASSERT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
    s += std::norm(v);
  }
  EXPECT_NEAR(s / n, 1.0, 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST(DrawCoeffs, GaussianLargeValueProbability) {
  const std::size_t n = 100000;
  const auto d = draw_coeffs(Distribution::ComplexGaussian, n, 12);
  long hits = 0;
  for (auto v : d.values) hits += std::abs(v) >= 1.0;
  const double p = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(hits) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(DrawCoeffs, GaussianComponentsHaveHalfVariance) {
  const std::size_t n = 100000;
  const auto d = draw_coeffs(Distribution::ComplexGaussian, n, 13);
  double re = 0, im = 0, re2 = 0, im2 = 0;
  for (auto v : d.values) {
    re += v.real();
    im += v.imag();
    re2 += v.real() * v.real();
    im2 += v.imag() * v.imag();
  }
  const double se = std::sqrt(0.5 / n);
  EXPECT_NEAR(re / n, 0.0, 4 * se);
  EXPECT_NEAR(im / n, 0.0, 4 * se);
  EXPECT_NEAR(re2 / n, 0.5, 4 * std::sqrt(0.5 / n));
  EXPECT_NEAR(im2 / n, 0.5, 4 * std::sqrt(0.5 / n));
}

TEST(DrawCoeffs, GaussianModulusSquaredIsExponentialKs) {
  const std::size_t n = 100000;
  const auto d = draw_coeffs(Distribution::ComplexGaussian, n, 21);
  std::vector<double> x;
  x.reserve(n);
  for (auto v : d.values) x.push_back(std::norm(v));
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 1.0 - std::exp(-x[i]);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  EXPECT_LT(ks, ks_critical_99(n));
}

TEST(DrawCoeffs, SteinhausPhaseMean) {
  const std::size_t n = 100000;
  const auto d = draw_coeffs(Distribution::Steinhaus, n, 31);
  std::complex<double> m = 0.0;
  for (auto v : d.values) m += v;
  m /= static_cast<double>(n);
  EXPECT_LE(std::abs(m), 3.0 / std::sqrt(1e5) / std::sqrt(2.0) * 2.0);
}

TEST(DrawCoeffs, ExtensionAndReproducibility) {
  for (auto dist : {Distribution::ComplexGaussian, Distribution::Rademacher, Distribution::Steinhaus}) {
    const auto a = draw_coeffs(dist, 100, 99);
    const auto b = draw_coeffs(dist, 50, 99);
    const auto c = draw_coeffs(dist, 100, 99);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(a.values[i], b.values[i]);
    EXPECT_EQ(a.values, c.values);
    const auto other = draw_coeffs(dist, 100, 100);
    EXPECT_NE(a.values, other.values);
  }
}

TEST(DrawCoeffs, DistributionsUseSeparateStreams) {
  const auto g = draw_coeffs(Distribution::ComplexGaussian, 20, 1);
  const auto s = draw_coeffs(Distribution::Steinhaus, 20, 1);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NE(std::arg(g.values[i]), std::arg(s.values[i]));
}

TEST(DrawCoeffs, RejectsEmpty) { EXPECT_THROW(draw_coeffs(Distribution::Steinhaus, 0, 1), std::invalid_argument); }

TEST(DistributionNames, RoundTrip) {
  for (auto d : {Distribution::ComplexGaussian, Distribution::Rademacher, Distribution::Steinhaus}) {
    EXPECT_EQ(distribution_from_string(to_string(d)), d);
  }
  EXPECT_THROW(distribution_from_string("cauchy"), std::invalid_argument);
}

TEST(SampleSeed, DistinctPerIndex) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 0; i < 1000; ++i) s.push_back(sample_seed(7, i));
  std::sort(s.begin(), s.end());
  EXPECT_EQ(std::unique(s.begin(), s.end()), s.end());
}

TEST(TruncationDegree, CertificateAtUnitRadius) {
  const auto g = CoefficientModel::gef();
  const long n = truncation_degree(g, 1.0, 1e-9, 1e-9);
  EXPECT_GE(n, 3);
  EXPECT_LE(truncation_failure_bound(g, 1.0, 1e-9, n), 1e-9);
  // smallest such degree
  if (n > 3) EXPECT_GT(truncation_failure_bound(g, 1.0, 1e-9, n - 1), 1e-9);
}

TEST(TruncationDegree, UnionBoundMatchesDirectSum) {
  const auto g = CoefficientModel::gef();
  const double r = 1.5, eps = 1e-6;
  const long degree = 12;
  double direct = 0.0;
  for (long n = degree + 1; n < degree + 200; ++n) {
    const double x = eps * std::pow(2.0, -(n - degree)) / std::exp(n * std::log(r) + g.log_coeff(n));
    direct += std::exp(-x * x);
  }
  EXPECT_NEAR(truncation_failure_bound(g, r, eps, degree), direct, 1e-12 * std::max(direct, 1e-300));
}

TEST(TruncationDegree, MonotoneAndAboveThreshold) {
  const auto g = CoefficientModel::gef();
  long prev = 0;
  for (double r : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
    const long n = truncation_degree(g, r, 1e-9, 1e-9);
    EXPECT_GE(n, static_cast<long>(std::floor(std::numbers::e * r * r)) + 1);
    EXPECT_GE(n, prev);
    prev = n;
  }
  EXPECT_LE(truncation_degree(g, 2.0, 1e-9, 1e-6), truncation_degree(g, 3.0, 1e-9, 1e-6));
}

TEST(TruncationDegree, RejectsBadArguments) {
  const auto g = CoefficientModel::gef();
  EXPECT_THROW(truncation_degree(g, 1.0, 0.0, 1e-3), std::invalid_argument);
  EXPECT_THROW(truncation_degree(g, 1.0, 1e-3, 1.0), std::invalid_argument);
  EXPECT_THROW(truncation_degree(g, -1.0, 1e-3, 1e-3), std::invalid_argument);
}
