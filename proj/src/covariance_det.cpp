#include "holelab/covariance_det.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "holelab/coeff_models.hpp"
#include "holelab/errors.hpp"

namespace holelab {

namespace {

using mp = boost::multiprecision::cpp_bin_float_100;

struct MpComplex {
  mp re;
  mp im;
};

}  // namespace

CovarianceSpec::CovarianceSpec(double r, double kappa, long n, std::optional<double> delta)
    : r_(r), kappa_(kappa), n_(n), delta_(delta) {
  if (!(r > 0.0)) throw std::invalid_argument("covariance spec requires r > 0");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("covariance spec requires 0 < kappa < 1, got " + std::to_string(kappa));
  }
  if (n < 1) throw std::invalid_argument("covariance spec requires N >= 1");
}

CovarianceSpec CovarianceSpec::from_radius(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("default covariance spec requires r > 1");
  const double delta = std::pow(r, -0.8);
  const double kappa = 1.0 - std::sqrt(delta);
  const long n = static_cast<long>(std::floor(std::numbers::e * r * r));
  return CovarianceSpec(r, kappa, n, delta);
}

CovarianceSpec CovarianceSpec::custom(double r, double kappa, long n) {
  return CovarianceSpec(r, kappa, n, std::nullopt);
}

std::vector<std::complex<double>> grid_points(const CovarianceSpec& spec) {
  std::vector<std::complex<double>> z(static_cast<std::size_t>(spec.n()));
  const double rho = spec.grid_radius();
  for (long j = 0; j < spec.n(); ++j) {
    z[static_cast<std::size_t>(j)] =
        std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(spec.n()));
  }
  z[0] = {rho, 0.0};
  return z;
}

std::vector<double> circulant_log_eigenvalues(const CovarianceSpec& spec) {
  const long n = spec.n();
  const double x = spec.x();
  const double log_x = std::log(x);
  const double log_n = std::log(static_cast<double>(n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long m = 0; m < n; ++m) {
    // Terms x^k / k! for k = m, m + N, m + 2N, ... in log scale; they rise
    // until k ~ x and then decay factorially.
    double running = -HUGE_VAL;  // log of the partial sum
    for (long k = m;; k += n) {
      const double lt = static_cast<double>(k) * log_x - boost::math::lgamma(static_cast<double>(k) + 1.0);
      if (running == -HUGE_VAL) {
        running = lt;
      } else {
        const double hi = std::max(running, lt);
        running = hi + std::log1p(std::exp(std::min(running, lt) - hi));
      }
      if (static_cast<double>(k) > x && lt < running + std::log(1e-18)) break;
    }
    out[static_cast<std::size_t>(m)] = log_n + running;
  }
  return out;
}

double logdet_circulant(const CovarianceSpec& spec) {
  const auto logs = circulant_log_eigenvalues(spec);
  double sum = 0.0;
  for (double v : logs) sum += v;
  return sum;
}

namespace {

std::vector<mp> cholesky_pivots_mp(const CovarianceSpec& spec) {
  const long n = spec.n();
  if (n > 64) throw std::invalid_argument("logdet_dense requires N <= 64");
  if (spec.x() > 300.0) throw std::invalid_argument("logdet_dense requires (kappa r)^2 <= 300");

  // Sigma_ij = exp(x w^{i-j}), w = exp(2 pi i / N): depends on (i - j) mod N only,
  // but it is filled entry by entry here.
  const mp x = mp(spec.kappa()) * mp(spec.r()) * mp(spec.kappa()) * mp(spec.r());
  const mp two_pi = 2 * boost::math::constants::pi<mp>();
  std::vector<MpComplex> a(static_cast<std::size_t>(n * n));
  auto at = [&](long i, long j) -> MpComplex& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const mp theta = two_pi * mp(i - j) / mp(n);
      const mp mag = exp(x * cos(theta));
      const mp phase = x * sin(theta);
      at(i, j) = {mag * cos(phase), mag * sin(phase)};
    }
  }

  // Lower Cholesky, L L^* = Sigma; pivots are the squared diagonal of L.
  mp max_diag = 0;
  for (long i = 0; i < n; ++i) max_diag = std::max(max_diag, at(i, i).re);
  const mp floor_rel = mp("1e-90");
  std::vector<mp> pivots(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    mp d = at(j, j).re;
    for (long k = 0; k < j; ++k) d -= at(j, k).re * at(j, k).re + at(j, k).im * at(j, k).im;
    if (!(d > floor_rel * max_diag)) {
      throw NumericFailure("dense Cholesky: nonpositive or unresolvable pivot at index " + std::to_string(j) +
                           " (value " + d.str(6) + ")");
    }
    pivots[static_cast<std::size_t>(j)] = d;
    const mp ljj = sqrt(d);
    at(j, j) = {ljj, 0};
    for (long i = j + 1; i < n; ++i) {
      mp re = at(i, j).re;
      mp im = at(i, j).im;
      // subtract sum_k L_ik conj(L_jk)
      for (long k = 0; k < j; ++k) {
        const auto& p = at(i, k);
        const auto& q = at(j, k);
        re -= p.re * q.re + p.im * q.im;
        im -= p.im * q.re - p.re * q.im;
      }
      at(i, j) = {re / ljj, im / ljj};
    }
  }
  return pivots;
}

}  // namespace

double logdet_dense(const CovarianceSpec& spec) {
  const auto pivots = cholesky_pivots_mp(spec);
  mp sum = 0;
  for (const auto& p : pivots) sum += log(p);
  return static_cast<double>(sum);
}

std::vector<double> dense_cholesky_pivots(const CovarianceSpec& spec) {
  const auto pivots = cholesky_pivots_mp(spec);
  std::vector<double> out;
  out.reserve(pivots.size());
  for (const auto& p : pivots) out.push_back(static_cast<double>(p));
  return out;
}

double vandermonde_lower_bound(const CovarianceSpec& spec) {
  const auto model = CoefficientModel::gef();
  const double nn = static_cast<double>(spec.n());
  const double log_rho = std::log(spec.grid_radius());
  double pi1 = 0.0;
  for (long k = 1; k <= spec.n(); ++k) pi1 += 2.0 * model.log_coeff(static_cast<std::size_t>(k));
  const double pi2 = 2.0 * nn * log_rho;
  const double pi3 = nn * (nn - 1.0) * log_rho + nn * std::log(nn);
  return pi1 + pi2 + pi3;
}

double vandermonde_minor_regrouped(const CovarianceSpec& spec) {
  const auto model = CoefficientModel::gef();
  const double log_rho = std::log(spec.grid_radius());
  double sum = 0.0;
  for (long k = 1; k <= spec.n(); ++k) sum += 2.0 * log_term(model, static_cast<std::size_t>(k), log_rho);
  const double nn = static_cast<double>(spec.n());
  return sum + nn * std::log(nn);
}

}  // namespace holelab
