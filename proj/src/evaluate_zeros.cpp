#include "holelab/evaluate_zeros.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "holelab/errors.hpp"

namespace holelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr int kMaxResolutionLog2 = 20;
constexpr double kTinyRelative = 1e-290;
constexpr double kStripRelative = 1e-300;

std::vector<cplx> effective_coeffs(const CoefficientDraw& draw, const CoefficientModel& model, long degree) {
  if (degree < 0 || degree > draw.truncation_degree()) {
    throw std::invalid_argument("truncation degree outside the draw");
  }
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = draw.values[n] * std::exp(model.log_coeff(n));
  return c;
}

double max_abs(std::span<const cplx> c) {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// p(z) and p'(z) together.
std::pair<cplx, cplx> horner_with_derivative(std::span<const cplx> c, cplx z) {
  cplx p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

struct ContourFailure {
  double min_abs = 0.0;
  bool tiny = false;
  bool depth_exhausted = false;
};

class ContourTracker {
 public:
  ContourTracker(std::span<const cplx> c, double r, double tiny_threshold, int max_depth)
      : c_(c), r_(r), tiny_threshold_(tiny_threshold), max_depth_(max_depth) {}

  cplx value(double theta) {
    const cplx f = horner(c_, std::polar(r_, theta));
    const double a = std::abs(f);
    if (a < failure_.min_abs || failure_.min_abs == 0.0) failure_.min_abs = a;
    if (!(a > tiny_threshold_)) failure_.tiny = true;
    return f;
  }

  // Argument increment of f from theta_a to theta_b.
  double increment(double theta_a, cplx fa, double theta_b, cplx fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < kHalfPi) return d;
    if (depth >= max_depth_ || failure_.tiny) {
      failure_.depth_exhausted = depth >= max_depth_;
      ok_ = false;
      return d;
    }
    deepest_ = std::max(deepest_, depth + 1);
    const double theta_m = 0.5 * (theta_a + theta_b);
    const cplx fm = value(theta_m);
    if (!ok_) return d;
    return increment(theta_a, fa, theta_m, fm, depth + 1) + increment(theta_m, fm, theta_b, fb, depth + 1);
  }

  bool ok() const { return ok_ && !failure_.tiny; }
  int deepest() const { return deepest_; }
  const ContourFailure& failure() const { return failure_; }

 private:
  std::span<const cplx> c_;
  double r_;
  double tiny_threshold_;
  int max_depth_;
  bool ok_ = true;
  int deepest_ = 0;
  ContourFailure failure_;
};

struct WindingAttempt {
  bool ok = false;
  long count = 0;
  int levels = 0;
  ContourFailure failure;
};

WindingAttempt winding_number(std::span<const cplx> c, double r) {
  const long degree = static_cast<long>(c.size()) - 1;
  long initial = 64;
  while (initial < 4 * (degree + 1)) initial *= 2;
  int max_depth = kMaxResolutionLog2;
  for (long k = initial; k > 1; k /= 2) --max_depth;
  max_depth = std::max(max_depth, 1);

  // Scale for the "zero on the circle" test: max |f| on the initial grid.
  std::vector<cplx> samples(static_cast<std::size_t>(initial));
  double m = 0.0;
  for (long k = 0; k < initial; ++k) {
    samples[k] = horner(c, std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(initial)));
    m = std::max(m, std::abs(samples[k]));
  }
  ContourTracker tracker(c, r, kTinyRelative * m, max_depth);
  WindingAttempt out;
  for (long k = 0; k < initial; ++k) {
    if (!(std::abs(samples[k]) > kTinyRelative * m)) {
      out.failure.tiny = true;
      out.failure.min_abs = std::abs(samples[k]);
      return out;
    }
  }
  double total = 0.0;
  const double step = kTwoPi / static_cast<double>(initial);
  for (long k = 0; k < initial && tracker.ok(); ++k) {
    const long k1 = (k + 1) % initial;
    total += tracker.increment(step * static_cast<double>(k), samples[k], step * static_cast<double>(k + 1),
                               samples[k1], 0);
  }
  out.failure = tracker.failure();
  out.levels = tracker.deepest();
  if (!tracker.ok()) return out;
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-3) return out;
  out.ok = true;
  out.count = static_cast<long>(rounded);
  return out;
}

Eigen::MatrixXcd balanced_companion(std::span<const cplx> monic_lower) {
  // monic_lower holds c_0..c_{d-1} of a monic polynomial.
  const Eigen::Index d = static_cast<Eigen::Index>(monic_lower.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) a(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) a(i, d - 1) = -monic_lower[static_cast<std::size_t>(i)];

  // Parlett-Reinsch style balancing with powers of two.
  constexpr double gamma = 0.9;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 200; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double row_norm = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      const double col_norm = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col_norm, exponent);
      const double scaled_row = std::ldexp(row_norm, -exponent);
      if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
        changed = true;
        a.row(i) *= std::ldexp(1.0, -exponent);
        a.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
  return a;
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
  for (const auto& v : coeffs_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("series coefficients must be finite");
    }
  }
  if (max_abs(coeffs_) == 0.0) throw std::invalid_argument("series is identically zero");
}

TruncatedSeries::TruncatedSeries(const CoefficientDraw& draw, const CoefficientModel& model)
    : TruncatedSeries(effective_coeffs(draw, model, draw.truncation_degree())) {}

TruncatedSeries::TruncatedSeries(const CoefficientDraw& draw, const CoefficientModel& model, long degree)
    : TruncatedSeries(effective_coeffs(draw, model, degree)) {}

TruncatedSeries TruncatedSeries::from_coefficients(std::vector<cplx> coeffs) {
  return TruncatedSeries(std::move(coeffs));
}

cplx eval_series(const TruncatedSeries& ts, cplx z) { return horner(ts.coeffs(), z); }

cplx eval_series_compensated(const TruncatedSeries& ts, cplx z) {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  auto add = [](double& s, double& c, double t) {
    const double n = s + t;
    c += std::abs(s) >= std::abs(t) ? (s - n) + t : (t - n) + s;
    s = n;
  };
  cplx power = 1.0;
  for (const auto& cn : ts.coeffs()) {
    const cplx term = cn * power;
    add(sr, cr, term.real());
    add(si, ci, term.imag());
    power *= z;
  }
  return {sr + cr, si + ci};
}

MaxModulus max_modulus_detail(const TruncatedSeries& ts, double r, long grid_size) {
  if (grid_size < 64) throw std::invalid_argument("max_modulus requires grid_size >= 64");
  if (!(r > 0.0)) throw std::invalid_argument("max_modulus requires r > 0");
  auto grid_max = [&](long m) {
    double best = 0.0;
    for (long k = 0; k < m; ++k) {
      const cplx z = std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
      best = std::max(best, std::abs(horner(ts.coeffs(), z)));
    }
    return best;
  };
  long m = grid_size;
  double current = grid_max(m);
  while (m < (1L << 22)) {
    const double next = grid_max(2 * m);
    m *= 2;
    const bool converged = std::abs(next - current) <= 1e-6 * std::max(next, current);
    current = std::max(current, next);
    if (converged) break;
  }
  return {current, m};
}

double max_modulus(const TruncatedSeries& ts, double r, long grid_size) {
  return max_modulus_detail(ts, r, grid_size).value;
}

ZeroCountResult count_zeros_disk(const TruncatedSeries& ts, double r, CountOptions options) {
  if (!(r > 0.0)) throw std::invalid_argument("count_zeros_disk requires r > 0");
  const auto c = ts.coeffs();

  auto attempt = [&](double radius) -> std::optional<ZeroCountResult> {
    const WindingAttempt w = winding_number(c, radius);
    if (!w.ok) return std::nullopt;
    return ZeroCountResult{w.count, radius, w.levels, false};
  };

  std::optional<ZeroCountResult> result = attempt(r);
  if (!result) {
    auto up = attempt(r * (1.0 + 1e-9));
    auto down = attempt(r * (1.0 - 1e-9));
    if (up && down && up->count == down->count) {
      result = up;
    } else {
      std::ostringstream msg;
      msg << "zero counting failed near |z| = " << r << ": possible zero on the contour; retries gave "
          << (up ? std::to_string(up->count) : std::string("failure")) << " and "
          << (down ? std::to_string(down->count) : std::string("failure"));
      throw NumericFailure(msg.str());
    }
  }

  if (options.verify_with_oracle) {
    const auto roots = roots_polynomial(c);
    if (count_roots_inside(roots, result->radius) == result->count) {
      result->verified_by_oracle = true;
    } else {
      for (const double factor : {1.0 + 1e-9, 1.0 - 1e-9}) {
        const double radius = r * factor;
        auto retry = attempt(radius);
        if (retry && count_roots_inside(roots, radius) == retry->count) {
          result = retry;
          result->verified_by_oracle = true;
          break;
        }
      }
      if (!result->verified_by_oracle) {
        std::ostringstream msg;
        msg << "argument principle (" << result->count << ") and companion oracle ("
            << count_roots_inside(roots, result->radius) << ") disagree at |z| = " << r;
        throw NumericFailure(msg.str());
      }
    }
  }
  return *result;
}

double root_residual_ratio(std::span<const cplx> coeffs, cplx z) {
  const double rho = std::abs(z);
  double scale = 0.0;
  double power = 1.0;
  for (const auto& c : coeffs) {
    scale = std::max(scale, std::abs(c) * power);
    power *= rho;
  }
  if (scale == 0.0) return 0.0;
  return std::abs(horner(coeffs, z)) / scale;
}

std::vector<cplx> roots_polynomial(std::span<const cplx> coeffs_in) {
  const double cmax = max_abs(coeffs_in);
  if (!(cmax > 0.0)) throw std::invalid_argument("degenerate polynomial: all coefficients are zero");
  std::size_t top = coeffs_in.size();
  while (top > 0 && std::abs(coeffs_in[top - 1]) < kStripRelative * cmax) --top;
  std::span<const cplx> coeffs = coeffs_in.first(top);

  std::vector<cplx> roots;
  // Exact zeros at the origin.
  std::size_t low = 0;
  while (low < coeffs.size() && std::abs(coeffs[low]) < kStripRelative * cmax) {
    roots.emplace_back(0.0, 0.0);
    ++low;
  }
  const std::span<const cplx> reduced = coeffs.subspan(low);
  const std::size_t degree = reduced.size() - 1;
  if (degree == 0) return roots;
  if (degree == 1) {
    roots.push_back(-reduced[0] / reduced[1]);
    return roots;
  }

  // Substitute z = scale * w so that |c_0| = |c_d| scale^d, then make monic.
  const double log_scale =
      (std::log(std::abs(reduced[0])) - std::log(std::abs(reduced[degree]))) / static_cast<double>(degree);
  const double scale = std::exp(log_scale);
  std::vector<cplx> monic(degree);
  for (std::size_t n = 0; n < degree; ++n) {
    if (reduced[n] == 0.0) continue;
    // c_n scale^n / (c_d scale^d), in log scale for the magnitude.
    const double log_mag = std::log(std::abs(reduced[n])) - std::log(std::abs(reduced[degree])) -
                           static_cast<double>(degree - n) * log_scale;
    monic[n] = std::polar(std::exp(log_mag), std::arg(reduced[n] / reduced[degree]));
  }
  const Eigen::MatrixXcd a = balanced_companion(monic);
  // already upper Hessenberg, so skip the reduction and go straight to QR
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.rows());
  schur.computeFromHessenberg(a, Eigen::MatrixXcd::Identity(a.rows(), a.cols()), false);
  if (schur.info() != Eigen::Success) throw NumericFailure("companion eigensolver did not converge");
  const Eigen::VectorXcd eig = schur.matrixT().diagonal();

  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    cplx z = eig[i] * scale;
    const auto [p, dp] = horner_with_derivative(reduced, z);
    if (std::abs(dp) > 0.0) {
      const cplx polished = z - p / dp;
      if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
          std::abs(horner(reduced, polished)) <= std::abs(p)) {
        z = polished;
      }
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<cplx> roots_truncated(const TruncatedSeries& ts) { return roots_polynomial(ts.coeffs()); }

double min_zero_modulus(const TruncatedSeries& ts) {
  const auto roots = roots_truncated(ts);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : roots) best = std::min(best, std::abs(z));
  return best;
}

long count_roots_inside(std::span<const cplx> roots, double r) {
  return static_cast<long>(std::count_if(roots.begin(), roots.end(), [r](const cplx& z) { return std::abs(z) < r; }));
}

}  // namespace holelab
