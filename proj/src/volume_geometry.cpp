#include "holelab/volume_geometry.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "holelab/hole_estimators.hpp"
#include "holelab/parallel.hpp"
#include "holelab/rng.hpp"

namespace holelab {

VolumeQuery::VolumeQuery(int k, double log_t, double log_s) : k_(k), log_t_(log_t), log_s_(log_s) {
  if (k < 1) throw std::invalid_argument("volume query requires k >= 1");
  if (!std::isfinite(log_t) || !std::isfinite(log_s)) {
    throw std::invalid_argument("volume query requires finite positive t and s");
  }
}

VolumeQuery VolumeQuery::from_values(int k, double t, double s) {
  if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("volume query requires t > 0 and s > 0");
  return VolumeQuery(k, std::log(t), std::log(s));
}

VolumeQuery VolumeQuery::from_logs(int k, double log_t, double log_s) { return VolumeQuery(k, log_t, log_s); }

double VolumeQuery::t() const { return std::exp(log_t_); }
double VolumeQuery::s() const { return std::exp(log_s_); }

double log_volume_exact(const VolumeQuery& q) {
  const double big_l = q.log_ratio();
  if (big_l <= 0.0) return q.k() * q.log_t();
  // log-sum-exp of m log L - log m!, built from the ratio L / m.
  std::vector<double> logs(static_cast<std::size_t>(q.k()));
  const double log_l = std::log(big_l);
  logs[0] = 0.0;
  for (int m = 1; m < q.k(); ++m) logs[m] = logs[m - 1] + log_l - std::log(static_cast<double>(m));
  const double peak = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - peak);
  return q.log_s() + peak + std::log(sum);
}

double volume_exact(const VolumeQuery& q) { return std::exp(log_volume_exact(q)); }

bool volume_bound_hypothesis(const VolumeQuery& q) { return q.log_ratio() >= static_cast<double>(q.k()); }

double log_volume_upper_bound(const VolumeQuery& q) {
  if (!volume_bound_hypothesis(q)) {
    throw std::invalid_argument("volume bound requires log(t^k/s) >= k; got log(t^k/s) = " +
                                std::to_string(q.log_ratio()) + ", k = " + std::to_string(q.k()));
  }
  return q.log_s() - boost::math::lgamma(static_cast<double>(q.k())) + q.k() * std::log(q.log_ratio());
}

double volume_upper_bound(const VolumeQuery& q) { return std::exp(log_volume_upper_bound(q)); }

VolumeEstimate volume_mc(const VolumeQuery& q, long samples, std::uint64_t seed, unsigned threads) {
  if (q.k() > 8) throw std::invalid_argument("volume_mc supports k <= 8");
  if (samples < 1) throw std::invalid_argument("volume_mc requires samples >= 1");
  const int k = q.k();
  const double t = q.t();
  const double s = q.s();
  const CounterRng rng(seed);

  constexpr std::size_t kChunk = 1 << 14;
  const std::size_t chunks = (static_cast<std::size_t>(samples) + kChunk - 1) / kChunk;
  std::vector<long> chunk_hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(static_cast<std::size_t>(samples), begin + kChunk);
    long hits = 0;
    for (std::size_t i = begin; i < end; ++i) {
      double prod = 1.0;
      for (int j = 0; j < k; ++j) prod *= t * rng.uniform(i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j));
      hits += prod <= s;
    }
    chunk_hits[c] = hits;
  });

  VolumeEstimate out;
  out.samples = samples;
  for (long h : chunk_hits) out.hits += h;
  const double box = std::exp(k * q.log_t());
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = box * p;
  out.std_error = box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  const auto ci = wilson_interval(out.hits, samples);
  out.ci_low = box * ci.low;
  out.ci_high = box * ci.high;
  return out;
}

CorollaryAnnotation corollary_annotation(double r, double c, std::optional<double> delta) {
  if (!(r > 1.0)) throw std::invalid_argument("corollary annotation requires r > 1");
  CorollaryAnnotation a;
  a.r = r;
  a.c = c;
  a.delta = delta.value_or(std::pow(r, -0.8));
  a.n = static_cast<long>(std::floor(std::numbers::e * r * r));
  a.log_t = 2.0 * r * r;
  a.log_s = 4.0 * static_cast<double>(a.n) * std::log(r) + c * r * r / (a.delta * a.delta);
  const auto q = VolumeQuery::from_logs(static_cast<int>(a.n), a.log_t, a.log_s);
  a.hypothesis_holds = volume_bound_hypothesis(q);
  const double prefix = static_cast<double>(a.n) * std::numbers::ln2 + a.log_s;
  a.log_i_prime_exact = prefix + log_volume_exact(q);
  if (a.hypothesis_holds) a.log_i_prime_bound = prefix + log_volume_upper_bound(q);
  a.reference_scale = (std::log(r) + 1.0 / (a.delta * a.delta)) * r * r;
  return a;
}

}  // namespace holelab
