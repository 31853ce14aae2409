#include "holelab/coeff_models.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holelab {

CoefficientModel::CoefficientModel(ModelKind kind, double alpha) : kind_(kind), alpha_(alpha) {
  cache_.push_back(0.0);
}

CoefficientModel CoefficientModel::gef() { return CoefficientModel(ModelKind::GEF, 0.5); }

CoefficientModel CoefficientModel::mittag_leffler(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("Mittag-Leffler alpha must be positive, got " + std::to_string(alpha));
  }
  return CoefficientModel(ModelKind::MittagLeffler, alpha);
}

double CoefficientModel::compute(std::size_t n) const {
  if (n == 0) return 0.0;
  const double x = static_cast<double>(n);
  if (kind_ == ModelKind::GEF) return -0.5 * boost::math::lgamma(x + 1.0);
  return -boost::math::lgamma(alpha_ * x + 1.0);
}

double CoefficientModel::log_coeff(std::size_t n) const {
  if (n < cache_.size()) return cache_[n];
  return compute(n);
}

void CoefficientModel::warm(std::size_t up_to) {
  cache_.reserve(up_to + 1);
  for (std::size_t n = cache_.size(); n <= up_to; ++n) cache_.push_back(compute(n));
}

SOfR s_of_r_detail(const CoefficientModel& model, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("s_of_r requires r > 0");
  const double log_r = std::log(r);
  SOfR out;
  out.index_set = {0, -1};
  // Neumaier summation; the sum has ~e r^2 positive terms.
  double sum = 0.0, comp = 0.0;
  double prev = -HUGE_VAL;
  for (std::size_t n = 0;; ++n) {
    const double t = log_term(model, n, log_r);
    if (t >= 0.0) {
      const double s = sum + t;
      comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
      sum = s;
      out.index_set.hi = static_cast<long>(n);
    } else if (t < prev) {
      // Concave sequence: once it is negative and decreasing it stays so.
      break;
    }
    prev = t;
  }
  out.value = 2.0 * (sum + comp);
  return out;
}

double s_of_r(const CoefficientModel& model, double r) { return s_of_r_detail(model, r).value; }

double s_asymptotic(const CoefficientModel& model, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("s_asymptotic requires r > 0");
  constexpr double e2 = std::numbers::e * std::numbers::e;
  if (model.kind() == ModelKind::GEF) return 0.75 * e2 * std::pow(r, 4);
  const double a = model.alpha();
  return std::pow(r, 2.0 / a) / (2.0 * a);
}

double s_integral_leading_term(const CoefficientModel& model, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("s_integral_leading_term requires r > 0");
  constexpr double e2 = std::numbers::e * std::numbers::e;
  if (model.kind() == ModelKind::GEF) return 0.25 * e2 * std::pow(r, 4);
  const double a = model.alpha();
  return e2 / (2.0 * a) * std::pow(r, 2.0 / a);
}

IndexInterval peak_index_range(const CoefficientModel& model, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("peak_index_range requires r >= 1");
  if (model.kind() == ModelKind::GEF) {
    const double r2 = r * r;
    return {static_cast<long>(std::ceil(r2 - 1.0)), static_cast<long>(std::floor(r2))};
  }
  // Scan: ties within a few ulps of the maximum count as part of the peak.
  const double log_r = std::log(r);
  double best = -HUGE_VAL;
  IndexInterval out{0, 0};
  for (std::size_t n = 0;; ++n) {
    const double t = log_term(model, n, log_r);
    const double tol = std::isfinite(best) ? 1e-12 * std::max(1.0, std::abs(best)) : 0.0;
    if (t > best + tol) {
      best = t;
      out = {static_cast<long>(n), static_cast<long>(n)};
    } else if (t >= best - tol) {
      out.hi = static_cast<long>(n);
    } else {
      break;
    }
  }
  return out;
}

double tail_log_bound(double r, long n) {
  const double er2 = std::numbers::e * r * r;
  if (static_cast<double>(n) < er2) {
    throw std::invalid_argument("tail_log_bound requires n >= e r^2 (n = " + std::to_string(n) +
                                ", e r^2 = " + std::to_string(er2) + ")");
  }
  return -0.5 * (static_cast<double>(n) - er2);
}

}  // namespace holelab
