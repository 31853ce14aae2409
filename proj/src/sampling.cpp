#include "holelab/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holelab/rng.hpp"

namespace holelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t dist_tag(Distribution d) {
  switch (d) {
    case Distribution::ComplexGaussian: return 0x47415553ULL;
    case Distribution::Rademacher: return 0x52414445ULL;
    case Distribution::Steinhaus: return 0x53544549ULL;
  }
  return 0;
}

}  // namespace

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::ComplexGaussian: return "gaussian";
    case Distribution::Rademacher: return "rademacher";
    case Distribution::Steinhaus: return "steinhaus";
  }
  return "unknown";
}

Distribution distribution_from_string(const std::string& name) {
  if (name == "gaussian" || name == "complex-gaussian") return Distribution::ComplexGaussian;
  if (name == "rademacher") return Distribution::Rademacher;
  if (name == "steinhaus") return Distribution::Steinhaus;
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

std::complex<double> draw_coefficient(Distribution dist, std::uint64_t master_seed, std::uint64_t n) {
  const CounterRng rng(derive_key(master_seed ^ dist_tag(dist), n));
  switch (dist) {
    case Distribution::ComplexGaussian: {
      const double e = -std::log(rng.uniform(0));
      return std::polar(std::sqrt(e), kTwoPi * rng.uniform(1));
    }
    case Distribution::Rademacher:
      return {(rng.bits(0) >> 63) ? 1.0 : -1.0, 0.0};
    case Distribution::Steinhaus: {
      const double theta = kTwoPi * rng.uniform(1);
      return {std::cos(theta), std::sin(theta)};
    }
  }
  return {};
}

CoefficientDraw draw_coeffs(Distribution dist, std::size_t count, std::uint64_t master_seed) {
  if (count < 1) throw std::invalid_argument("draw_coeffs requires count >= 1");
  CoefficientDraw out;
  out.dist = dist;
  out.master_seed = master_seed;
  out.values.resize(count);
  for (std::size_t n = 0; n < count; ++n) out.values[n] = draw_coefficient(dist, master_seed, n);
  return out;
}

std::uint64_t sample_seed(std::uint64_t run_seed, std::uint64_t sample_index) {
  return derive_key(run_seed ^ 0x5a4d504c45ULL, sample_index);
}

double truncation_failure_bound(const CoefficientModel& model, double r, double eps, long degree) {
  const double log_r = std::log(r);
  const double log_eps = std::log(eps);
  double total = 0.0;
  double prev_exponent = -HUGE_VAL;
  for (long n = degree + 1;; ++n) {
    const long k = n - degree;
    // term = exp(-x^2), x = eps 2^{-k} / (a_n r^n)
    const double log_x = log_eps - static_cast<double>(k) * std::numbers::ln2 -
                         log_term(model, static_cast<std::size_t>(n), log_r);
    const double exponent = 2.0 * log_x;
    const double term = std::exp(-std::exp(exponent));
    total += term;
    // Once x^2 grows by a factor >= e per step and exp(-x^2) is negligible,
    // the remaining terms are bounded by a rapidly convergent series.
    if (exponent > std::log(800.0) && exponent - prev_exponent > 1.0) break;
    if (k > 100000) break;
    prev_exponent = exponent;
  }
  return total;
}

long truncation_degree(const CoefficientModel& model, double r, double eps, double fail_prob) {
  if (!(r > 0.0)) throw std::invalid_argument("truncation_degree requires r > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("truncation_degree requires eps in (0,1)");
  if (!(fail_prob > 0.0 && fail_prob < 1.0)) {
    throw std::invalid_argument("truncation_degree requires fail_prob in (0,1)");
  }
  long degree = static_cast<long>(std::floor(std::numbers::e * r * r)) + 1;
  while (truncation_failure_bound(model, r, eps, degree) > fail_prob) ++degree;
  return degree;
}

}  // namespace holelab
