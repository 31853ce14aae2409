#pragma once

#include <complex>
#include <span>
#include <vector>

#include "holelab/coeff_models.hpp"
#include "holelab/sampling.hpp"

namespace holelab {

using cplx = std::complex<double>;

// Polynomial sum_{n<=N} c_n z^n with c_n = phi_n a_n.
class TruncatedSeries {
 public:
  // Uses every value of the draw (N = draw.truncation_degree()).
  TruncatedSeries(const CoefficientDraw& draw, const CoefficientModel& model);
  TruncatedSeries(const CoefficientDraw& draw, const CoefficientModel& model, long degree);
  // Raw coefficients c_0..c_N, lowest order first.
  static TruncatedSeries from_coefficients(std::vector<cplx> coeffs);

  std::span<const cplx> coeffs() const { return coeffs_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

 private:
  explicit TruncatedSeries(std::vector<cplx> coeffs);
  std::vector<cplx> coeffs_;
};

cplx eval_series(const TruncatedSeries& ts, cplx z);
// Term-by-term sum with Neumaier compensation; an independent route to
// eval_series used for cross-checking.
cplx eval_series_compensated(const TruncatedSeries& ts, cplx z);

struct MaxModulus {
  double value = 0.0;
  long grid_size = 0;
};

// Max of |f| over equispaced points on |z| = r, doubling the grid until the
// relative change drops below 1e-6. This is a lower bound for M(r).
MaxModulus max_modulus_detail(const TruncatedSeries& ts, double r, long grid_size = 64);
double max_modulus(const TruncatedSeries& ts, double r, long grid_size = 64);

struct ZeroCountResult {
  long count = 0;
  double radius = 0.0;        // radius actually used (perturbed on retry)
  int refinement_levels = 0;  // deepest bisection used by the contour tracker
  bool verified_by_oracle = false;
};

struct CountOptions {
  bool verify_with_oracle = false;
};

// Winding number of f along |z| = r. Adjacent samples are bisected until every
// argument increment is below pi/2 in magnitude. A suspected zero on the
// circle triggers retries at r (1 +- 1e-9); disagreement raises NumericFailure.
ZeroCountResult count_zeros_disk(const TruncatedSeries& ts, double r, CountOptions options = {});

// Roots of sum c_n z^n from the balanced companion matrix followed by one
// Newton step. Trailing coefficients below 1e-300 max|c| are dropped first.
// Throws std::invalid_argument when every coefficient is (numerically) zero.
std::vector<cplx> roots_polynomial(std::span<const cplx> coeffs);
std::vector<cplx> roots_truncated(const TruncatedSeries& ts);

// |p(z)| / max_n |c_n| |z|^n. The denominator is a lower bound for
// max_{|w|=|z|} |p(w)|, so this over-estimates the relative residual.
double root_residual_ratio(std::span<const cplx> coeffs, cplx z);

// Smallest root modulus; +infinity when the polynomial is a nonzero constant.
double min_zero_modulus(const TruncatedSeries& ts);

long count_roots_inside(std::span<const cplx> roots, double r);

}  // namespace holelab
