#include "holelab/hermite_asymptotics.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holelab/coeff_models.hpp"
#include "holelab/evaluate_zeros.hpp"
#include "holelab/parallel.hpp"

namespace holelab {

namespace {

using cd = std::complex<double>;

double log_sqrt_factorial(long n) { return 0.5 * boost::math::lgamma(static_cast<double>(n) + 1.0); }

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

}  // namespace

HermiteSeries::HermiteSeries(cd beta, long nmax) : beta_(beta) {
  if (nmax < 2) throw std::invalid_argument("hermite_coeffs requires nmax >= 2");
  mantissa_.reserve(static_cast<std::size_t>(nmax) + 1);
  log_scale_.reserve(static_cast<std::size_t>(nmax) + 1);
  mantissa_.push_back(1.0);
  log_scale_.push_back(0.0);
  mantissa_.push_back(beta);
  log_scale_.push_back(0.0);

  cd prev = 1.0, cur = beta;
  double scale = 0.0;
  for (long n = 1; n < nmax; ++n) {
    const double dn = static_cast<double>(n);
    const cd next = beta * cur / std::sqrt(dn + 1.0) + prev * std::sqrt(dn / (dn + 1.0));
    mantissa_.push_back(next);
    log_scale_.push_back(scale);
    prev = cur;
    cur = next;
    const double m = std::max(std::abs(prev), std::abs(cur));
    if (m > 1e150 || (m > 0.0 && m < 1e-150)) {
      prev /= m;
      cur /= m;
      scale += std::log(m);
    }
  }
}

cd HermiteSeries::value(long n) const {
  const auto i = static_cast<std::size_t>(n);
  return mantissa_.at(i) * std::exp(log_scale_.at(i));
}

double HermiteSeries::log_abs(long n) const {
  const auto i = static_cast<std::size_t>(n);
  return std::log(std::abs(mantissa_.at(i))) + log_scale_.at(i);
}

cd HermiteSeries::log_value(long n) const {
  const auto i = static_cast<std::size_t>(n);
  return {log_abs(n), std::arg(mantissa_.at(i))};
}

cd HermiteSeries::log_g(long n) const { return log_value(n) - log_sqrt_factorial(n); }

HermiteSeries hermite_coeffs(cd beta, long nmax) { return HermiteSeries(beta, nmax); }

cd saddle_point_log_approx(cd beta, long n) {
  if (n < 16) throw std::invalid_argument("saddle_point_approx requires n >= 16");
  if (beta == 0.0) throw std::invalid_argument("saddle_point_approx requires beta != 0");
  const double dn = static_cast<double>(n);
  const double root = std::sqrt(dn);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  // log(e^{b} - s e^{-b}) with b = beta sqrt(n), factoring out the larger exponential.
  const cd b = beta * root;
  cd log_bracket;
  if (b.real() >= 0.0) {
    log_bracket = b + std::log(1.0 - sign * std::exp(-2.0 * b));
  } else {
    const cd lead = sign > 0.0 ? cd(0.0, std::numbers::pi) : cd(0.0, 0.0);  // log(-s)
    log_bracket = lead - b + std::log(1.0 - sign * std::exp(2.0 * b));
  }
  return -0.5 * std::log(4.0 * std::numbers::pi) - 0.5 * dn * std::log(dn) + 0.5 * dn - beta * beta / 4.0 +
         log_bracket;
}

cd saddle_point_ratio(const HermiteSeries& series, long n) {
  if (n - 1 > series.nmax()) throw std::invalid_argument("saddle_point_ratio: series too short");
  return std::exp(series.log_g(n - 1) - saddle_point_log_approx(series.beta(), n));
}

std::optional<long> annulus_escape(const HermiteSeries& series, double c1, double c2) {
  if (!(c1 > 0.0 && c1 <= c2)) throw std::invalid_argument("annulus_escape requires 0 < c1 <= c2");
  const double lo = std::log(c1), hi = std::log(c2);
  for (long n = 0; n <= series.nmax(); ++n) {
    const double la = series.log_abs(n);
    if (!(la >= lo && la <= hi)) return n;
  }
  return std::nullopt;
}

std::optional<long> annulus_escape(cd beta, double c1, double c2, long nmax) {
  return annulus_escape(HermiteSeries(beta, std::max(nmax, 2L)), c1, c2);
}

ForcedZeroStats forced_zero_experiment(Distribution dist, long samples, long degree, std::uint64_t seed,
                                       unsigned threads, double phase_twist) {
  if (degree < 50) throw std::invalid_argument("forced_zero_experiment requires degree >= 50");
  if (samples < 1) throw std::invalid_argument("forced_zero_experiment requires samples >= 1");
  if (dist == Distribution::ComplexGaussian) {
    throw std::invalid_argument("forced_zero_experiment needs bounded coefficients (rademacher or steinhaus)");
  }
  const auto model = CoefficientModel::gef();
  ForcedZeroStats out;
  out.dist = dist;
  out.samples = samples;
  out.degree = degree;
  out.seed = seed;
  out.phase_twist = phase_twist;
  out.min_moduli.assign(static_cast<std::size_t>(samples), 0.0);

  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    CoefficientDraw draw;
    if (i == 0) {
      draw.dist = dist;
      draw.master_seed = seed;
      draw.values.assign(static_cast<std::size_t>(degree) + 1, 1.0);
    } else {
      draw = draw_coeffs(dist, static_cast<std::size_t>(degree) + 1, sample_seed(seed, i));
    }
    if (phase_twist != 0.0) {
      for (std::size_t n = 0; n < draw.values.size(); ++n) {
        const double dn = static_cast<double>(n);
        draw.values[n] *= std::polar(1.0, phase_twist * dn * dn);
      }
    }
    out.min_moduli[i] = min_zero_modulus(TruncatedSeries(draw, model));
  });

  std::vector<double> sorted = out.min_moduli;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) {
    out.all_finite = out.all_finite && std::isfinite(v);
    sum += v;
  }
  out.mean = sum / static_cast<double>(samples);
  out.max = sorted.back();
  out.q05 = quantile_sorted(sorted, 0.05);
  out.q25 = quantile_sorted(sorted, 0.25);
  out.median = quantile_sorted(sorted, 0.5);
  out.q75 = quantile_sorted(sorted, 0.75);
  out.q95 = quantile_sorted(sorted, 0.95);
  return out;
}

}  // namespace holelab
