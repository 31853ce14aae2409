#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "holelab/coeff_models.hpp"
#include "holelab/evaluate_zeros.hpp"
#include "holelab/hole_estimators.hpp"
#include "holelab/sampling.hpp"

using namespace holelab;

namespace {
const auto kGef = CoefficientModel::gef();
long floor_er2(double r) { return static_cast<long>(std::floor(std::numbers::e * r * r)); }
}  // namespace

TEST(Wilson, ReferenceValues) {
  // statsmodels proportion_confint(method="wilson")
  auto w = wilson_interval(50, 100);
  EXPECT_NEAR(w.low, 0.4038315303659956, 1e-9);
  EXPECT_NEAR(w.high, 0.5961684696340044, 1e-9);
  w = wilson_interval(0, 100);
  EXPECT_EQ(w.low, 0.0);
  EXPECT_NEAR(w.high, 0.03699349820698569, 1e-9);
  w = wilson_interval(997, 1000);
  EXPECT_NEAR(w.low, 0.9912169859464969, 1e-9);
  EXPECT_NEAR(w.high, 0.9989792161188614, 1e-9);
}

TEST(HoleMc, TinyDiskIsAlmostSurelyEmpty) {
  const auto e = hole_mc(kGef, 0.05, 2000, 5);
  EXPECT_EQ(e.method, HoleMethod::DirectMC);
  EXPECT_GE(e.ci_high, 0.99);
  EXPECT_LE(e.ci_low, e.point_value);
  EXPECT_LE(e.point_value, e.ci_high);
}

// Independent estimate: numpy.roots on 1e5 degree-30 truncations gave
// P_H(1) = 0.20618 +- 0.00128.
TEST(HoleMc, UnitRadiusAgreesWithIndependentEstimate) {
  const auto a = hole_mc(kGef, 1.0, 100000, 7);
  const double se_a = std::sqrt(a.point_value * (1 - a.point_value) / 1e5);
  EXPECT_NEAR(a.point_value, 0.20618, 3.0 * std::hypot(se_a, 0.00128));
  EXPECT_EQ(a.failures, 0);
  // rerun with another seed
  const auto b = hole_mc(kGef, 1.0, 100000, 8);
  EXPECT_NEAR(a.point_value, b.point_value, 3.0 * std::sqrt(2.0) * se_a);
  std::cout << "p_hat(1) seed 7: " << a.point_value << " [" << a.ci_low << ", " << a.ci_high << "]\n";
  // regression value for seed 7 at 1e5 samples
  EXPECT_EQ(a.hits, 20422);
}

TEST(HoleMc, MonotoneUnderCommonRandomNumbers) {
  const double radii[] = {0.6, 0.8, 1.0, 1.2};
  const auto est = hole_mc_common(kGef, radii, 20000, 3);
  for (std::size_t k = 1; k < est.size(); ++k) EXPECT_LE(est[k].hits, est[k - 1].hits);
  EXPECT_LT(est[3].ci_high, est[1].ci_low);
}

TEST(HoleMc, ThreadCountDoesNotChangeResult) {
  const auto one = hole_mc(kGef, 0.9, 3000, 11, 1);
  const auto eight = hole_mc(kGef, 0.9, 3000, 11, 8);
  EXPECT_EQ(one, eight);
  EXPECT_EQ(one, hole_mc(kGef, 0.9, 3000, 11, 3));
}

TEST(HoleMc, RejectsTooFewSamples) { EXPECT_THROW(hole_mc(kGef, 1.0, 99, 1), std::invalid_argument); }

TEST(Omega, FirstClauseIsExact) {
  for (double r : {1.0, 2.5, 7.0}) EXPECT_EQ(omega_log_prob_detail(r).log_clause_i, -4.0 * r * r);
}

TEST(Omega, MatchesHighPrecisionSum) {
  // 40-digit sums of log(1 - exp(-lambda^2)) and log(1 - exp(-mu^2))
  EXPECT_NEAR(omega_log_prob(1.0), -8.4585766468831743211, 1e-12);
  EXPECT_NEAR(omega_log_prob(2.0), -64.784790889167249621, 1e-11);
  EXPECT_NEAR(omega_log_prob(5.0), -1446.7601744896375744, 1e-9);
  EXPECT_NEAR(omega_log_prob(10.0), -19841.120822886329796, 1e-8);
  EXPECT_NEAR(omega_log_prob(20.0), -301805.1188725349098, 1e-6);
}

TEST(Omega, DominatesS) {
  const double l5 = omega_log_prob(5.0);
  EXPECT_TRUE(std::isfinite(l5));
  EXPECT_GE(-l5, s_of_r(kGef, 5.0));
  const double ratio = -omega_log_prob(20.0) / s_of_r(kGef, 20.0);
  EXPECT_NEAR(ratio, 1.0, 0.05);
}

TEST(Omega, ChainLowerBound) {
  for (double r : {5.0, 10.0, 20.0}) {
    const double lhs = -omega_log_prob(r);
    const double rhs = s_of_r(kGef, r) - floor_er2(r) * std::log(18.0 * r * r) - 2.0;
    EXPECT_GE(lhs, rhs) << r;
  }
}

TEST(Omega, DecreasingInR) {
  double prev = 0.0;
  for (double r = 1.0; r <= 20.0; r += 0.25) {
    const double l = omega_log_prob(r);
    EXPECT_LT(l, prev) << r;
    EXPECT_LE(l, 0.0);
    prev = l;
  }
}

TEST(Omega, SmallProbabilityBracket) {
  // lambda^2 / 2 <= 1 - exp(-lambda^2) <= lambda^2 for lambda^2 <= 1
  for (double r : {2.0, 5.0, 10.0}) {
    for (long n = 1; n <= floor_er2(r); ++n) {
      const double log_l2 = omega_log_bound_sq(kGef, r, n);
      if (log_l2 > 0.0) continue;
      const double l2 = std::exp(log_l2);
      const double p = -std::expm1(-l2);
      EXPECT_GE(p, 0.5 * l2);
      EXPECT_LE(p, l2);
    }
  }
}

TEST(Omega, RejectsSmallRadius) {
  EXPECT_THROW(omega_log_prob(0.5), std::invalid_argument);
  EXPECT_THROW(omega_certificate(0.9), std::invalid_argument);
}

TEST(Certificate, Examples) {
  const auto c1 = omega_certificate(1.0);
  EXPECT_FALSE(c1.valid);
  const double tail = 1.0 / (1.0 - std::exp(-0.25));
  EXPECT_NEAR(tail, 4.52, 0.01);
  EXPECT_NEAR(c1.margin, 2.0 - 2.0 / 3.0 - tail, 1e-14);
  const auto c10 = omega_certificate(10.0);
  EXPECT_TRUE(c10.valid);
  EXPECT_NEAR(c10.margin, 20.0 - floor_er2(10.0) / 30.0 - tail, 1e-12);
  EXPECT_EQ(c10.log_prob, omega_log_prob(10.0));
}

TEST(Certificate, MarginIncreasing) {
  // slope 2 - e/3 between jumps of the floor, each jump at most 1/(3r)
  bool seen_valid = false;
  for (int i = 10; i <= 300; ++i) {
    const double r = 0.1 * i;
    const auto c = omega_certificate(r);
    EXPECT_GT(omega_certificate(r + 0.5).margin, c.margin) << r;
    EXPECT_GT(c.margin, 2.0 * r - std::numbers::e * r / 3.0 - 1.0 / (1.0 - std::exp(-0.25)) - 1e-12) << r;
    EXPECT_EQ(c.valid, c.margin > 0.0);
    if (seen_valid) EXPECT_TRUE(c.valid) << r;
    seen_valid = seen_valid || c.valid;
  }
}

TEST(Certificate, SmallestRadiusOnHalfGrid) {
  const double r = smallest_certified_radius();
  EXPECT_EQ(r, 4.5);
  EXPECT_FALSE(omega_certificate(4.0).valid);
  EXPECT_NEAR(omega_certificate(4.5).margin, 0.40511426173812, 1e-10);
  // no radius is both certified and reachable by direct sampling
  EXPECT_GT(s_of_r(kGef, r), 10 * kMcFeasibleS);
}

TEST(Conditioned, DrawsRespectClauses) {
  const double r = 4.5;
  const long degree = omega_conditioned_degree(kGef, r);
  EXPECT_GT(degree, floor_er2(r));
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const auto d = omega_conditioned_draw(kGef, r, degree, s);
    ASSERT_EQ(d.truncation_degree(), degree);
    EXPECT_GE(std::abs(d.values[0]), 2.0 * r);
    for (long n = 1; n <= degree; ++n) {
      const double bound = std::exp(0.5 * omega_log_bound_sq(kGef, r, n));
      EXPECT_LE(std::abs(d.values[n]), bound * (1 + 1e-12)) << n;
    }
  }
}

TEST(Conditioned, CertifiedRadiusIsZeroFree) {
  const auto res = omega_conditioned_sample(kGef, 4.5, 300, 2);
  EXPECT_EQ(res.zero_free, 300);
  EXPECT_EQ(res.fraction(), 1.0);
}

TEST(Conditioned, UncertifiedRadiusIsReported) {
  const auto res = omega_conditioned_sample(kGef, 1.0, 300, 2);
  EXPECT_EQ(res.samples, 300);
  EXPECT_GE(res.fraction(), 0.0);
  EXPECT_LE(res.fraction(), 1.0);
  std::cout << "conditioned zero-free fraction at r=1: " << res.fraction() << '\n';
}

TEST(Conditioned, ThreadCountDoesNotChangeResult) {
  const auto a = omega_conditioned_sample(kGef, 2.0, 200, 9, 1);
  const auto b = omega_conditioned_sample(kGef, 2.0, 200, 9, 8);
  EXPECT_EQ(a.zero_free, b.zero_free);
}

TEST(BracketReport, UnitRadiusHasMcAndUncertifiedBound) {
  const auto rep = hole_bracket_report(kGef, 1.0, 2000, 4);
  ASSERT_TRUE(rep.mc.has_value());
  EXPECT_FALSE(rep.cert_valid);
  EXPECT_EQ(rep.bound_status, "uncertified");
  ASSERT_TRUE(rep.omega_log_prob.has_value());
  // the bound is still below the estimate here
  EXPECT_LE(std::exp(*rep.omega_log_prob), rep.mc->point_value + (rep.mc->ci_high - rep.mc->ci_low));
}

TEST(BracketReport, LargeRadiusSkipsMc) {
  const auto rep = hole_bracket_report(kGef, 20.0, 100000, 4);
  EXPECT_FALSE(rep.mc.has_value());
  EXPECT_TRUE(rep.cert_valid);
  EXPECT_EQ(rep.bound_status, "certified");
  const auto small = hole_bracket_report(kGef, 0.5, 500, 4);
  EXPECT_EQ(small.bound_status, "undefined");
  EXPECT_FALSE(small.omega_log_prob.has_value());
}

TEST(BracketReport, JsonRoundTrip) {
  for (double r : {0.5, 1.0, 20.0}) {
    const auto rep = hole_bracket_report(kGef, r, 500, 6);
    const auto text = to_json(rep).dump();
    const auto back = hole_bracket_from_json(nlohmann::ordered_json::parse(text));
    EXPECT_EQ(back, rep) << text;
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

TEST(HoleEstimate, JsonRoundTrip) {
  const auto e = hole_mc(kGef, 0.7, 500, 12);
  EXPECT_EQ(hole_estimate_from_json(nlohmann::ordered_json::parse(to_json(e).dump())), e);
  EXPECT_EQ(hole_method_from_string(to_string(HoleMethod::ConditionedCheck)), HoleMethod::ConditionedCheck);
}
