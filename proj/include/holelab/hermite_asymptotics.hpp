#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "holelab/sampling.hpp"

namespace holelab {

// Scaled Taylor coefficients h_n = g_n(beta) sqrt(n!) of
//   exp(z^2/2 + beta z) = sum g_n(beta) z^n,
// generated by h_{n+1} = beta h_n / sqrt(n+1) + h_{n-1} sqrt(n/(n+1)),
// the scaled form of (n+1) g_{n+1} = beta g_n + g_{n-1}.
// Entries are kept as mantissa * exp(log_scale) because |h_n| ~ e^{|beta| sqrt n}.
class HermiteSeries {
 public:
  HermiteSeries(std::complex<double> beta, long nmax);

  std::complex<double> beta() const { return beta_; }
  long nmax() const { return static_cast<long>(mantissa_.size()) - 1; }

  // h_n; overflows to infinity when |h_n| exceeds the double range.
  std::complex<double> value(long n) const;
  double log_abs(long n) const;
  // log h_n (principal branch of the argument).
  std::complex<double> log_value(long n) const;
  // log g_n = log h_n - log sqrt(n!)
  std::complex<double> log_g(long n) const;

 private:
  std::complex<double> beta_;
  std::vector<std::complex<double>> mantissa_;
  std::vector<double> log_scale_;
};

HermiteSeries hermite_coeffs(std::complex<double> beta, long nmax);

// Log of the two-saddle approximation of g_{n-1}(beta):
//   (4 pi)^{-1/2} n^{-n/2} e^{n/2 - beta^2/4} (e^{beta sqrt n} - (-1)^n e^{-beta sqrt n}).
// Requires n >= 16 and beta != 0.
std::complex<double> saddle_point_log_approx(std::complex<double> beta, long n);

// g_{n-1} / approximation, with g taken from the series (needs n - 1 <= nmax).
std::complex<double> saddle_point_ratio(const HermiteSeries& series, long n);

// Smallest n <= nmax with |h_n| outside [c1, c2]; nullopt if none.
std::optional<long> annulus_escape(std::complex<double> beta, double c1, double c2, long nmax);
std::optional<long> annulus_escape(const HermiteSeries& series, double c1, double c2);

struct ForcedZeroStats {
  Distribution dist = Distribution::Rademacher;
  long samples = 0;
  long degree = 0;
  std::uint64_t seed = 0;
  double phase_twist = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
  bool all_finite = true;
  std::vector<double> min_moduli;  // per sample, sample 0 is the all-ones draw
};

// Min zero modulus of sum phi_n z^n / sqrt(n!) truncated at `degree` for
// bounded coefficient laws. Sample 0 is phi_n = 1 for all n; the rest are
// independent draws. A nonzero phase_twist multiplies phi_n by e^{i twist n^2},
// which leaves the Steinhaus law unchanged.
ForcedZeroStats forced_zero_experiment(Distribution dist, long samples, long degree, std::uint64_t seed,
                                       unsigned threads = 1, double phase_twist = 0.0);

}  // namespace holelab
