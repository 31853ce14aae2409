#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "holelab/coeff_models.hpp"
#include "holelab/sampling.hpp"

namespace holelab {

enum class HoleMethod { DirectMC, OmegaBound, ConditionedCheck };
std::string to_string(HoleMethod m);
HoleMethod hole_method_from_string(const std::string& s);

// Estimate of P_H(r) = P(f has no zero in |z| <= r).
struct HoleEstimate {
  double radius = 0.0;
  HoleMethod method = HoleMethod::DirectMC;
  double point_value = 0.0;  // probability, or log-probability when log_scale
  bool log_scale = false;
  double ci_low = 0.0;  // 95% Wilson interval for DirectMC; equal to point_value otherwise
  double ci_high = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  long hits = 0;      // zero-free draws
  long failures = 0;  // draws whose zero count could not be established
  long degree = 0;    // truncation degree used

  bool operator==(const HoleEstimate&) const = default;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
WilsonInterval wilson_interval(long hits, long samples, double z = 1.959963984540054);

// Direct Monte Carlo over complex Gaussian draws, truncated with
// truncation_degree(eps = 1e-9, fail_prob = 1e-6 / samples). Aborts with
// NumericFailure when more than 0.1% of the draws cannot be counted.
HoleEstimate hole_mc(const CoefficientModel& model, double r, long samples, std::uint64_t seed, unsigned threads = 1);

// Same draws (common random numbers) and one truncation degree, chosen for the
// largest radius, for every radius. Zero-free indicators are then monotone in r
// draw by draw.
std::vector<HoleEstimate> hole_mc_common(const CoefficientModel& model, std::span<const double> radii, long samples,
                                         std::uint64_t seed, unsigned threads = 1);

// --- the confinement event Omega_r (GEF) --------------------------------------
//   (i)   |phi_0| >= 2r
//   (ii)  |phi_n| <= (3r a_n r^n)^{-1}          1 <= n <= floor(e r^2)
//   (iii) |phi_n| <= exp((n - e r^2) / 4)        n >  floor(e r^2)

struct OmegaBreakdown {
  double log_clause_i = 0.0;
  double log_clause_ii = 0.0;
  double log_clause_iii = 0.0;
  long tail_cut = 0;  // last index summed in clause (iii)
  double total() const { return log_clause_i + log_clause_ii + log_clause_iii; }
};

// Exact log P(Omega_r) with P(|w| >= x) = exp(-x^2), P(|w| <= x) = 1 - exp(-x^2).
// The clause (iii) product is cut once the remainder is below 1e-15.
OmegaBreakdown omega_log_prob_detail(double r);
double omega_log_prob(double r);

struct OmegaCertificate {
  double r = 0.0;
  double log_prob = 0.0;
  // Worst-case lower bound for |f| on |z| <= r under Omega_r:
  //   2r - floor(e r^2)/(3r) - 1/(1 - e^{-1/4}).
  double margin = 0.0;
  bool valid = false;  // margin > 0: then P_H(r) >= exp(log_prob) rigorously
  long tail_cut = 0;
};
OmegaCertificate omega_certificate(double r);

// Smallest radius on the grid start, start + step, ... with a valid certificate.
double smallest_certified_radius(double start = 1.0, double step = 0.5);

// Draw conditioned on Omega_r by inverse-CDF sampling of truncated Exp(1)
// magnitudes |phi_n|^2; phases uniform. Index n depends only on (seed, n).
CoefficientDraw omega_conditioned_draw(const CoefficientModel& model, double r, long degree, std::uint64_t seed);

// Squared-modulus bounds of the clauses: lower bound 4r^2 at n = 0, upper
// bounds lambda_n^2 / mu_n^2 after that, all as logarithms.
double omega_log_bound_sq(const CoefficientModel& model, double r, long n);

// Degree N past which the clause (iii) tail sum_{n>N} mu_n a_n r^n is < 1e-12.
long omega_conditioned_degree(const CoefficientModel& model, double r);

struct ConditionedResult {
  double r = 0.0;
  long samples = 0;
  long zero_free = 0;
  long degree = 0;
  std::uint64_t seed = 0;
  double fraction() const { return samples == 0 ? 0.0 : static_cast<double>(zero_free) / static_cast<double>(samples); }
};
ConditionedResult omega_conditioned_sample(const CoefficientModel& model, double r, long samples, std::uint64_t seed,
                                           unsigned threads = 1);

// Both sides of the hole asymptotics at one radius.
struct HoleBracketReport {
  double r = 0.0;
  double s_of_r = 0.0;
  double s_asymptotic = 0.0;
  std::optional<double> omega_log_prob;  // defined for r >= 1
  std::optional<double> margin;
  bool cert_valid = false;
  std::optional<HoleEstimate> mc;  // skipped when S(r) > 25
  std::string bound_status;        // "certified", "uncertified" or "undefined"

  bool operator==(const HoleBracketReport&) const = default;
};

constexpr double kMcFeasibleS = 25.0;

HoleBracketReport hole_bracket_report(const CoefficientModel& model, double r, long samples, std::uint64_t seed,
                                      unsigned threads = 1);

nlohmann::ordered_json to_json(const HoleEstimate& e);
HoleEstimate hole_estimate_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const HoleBracketReport& r);
HoleBracketReport hole_bracket_from_json(const nlohmann::ordered_json& j);

}  // namespace holelab
