#pragma once

#include <cstddef>
#include <vector>

namespace holelab {

enum class ModelKind { GEF, MittagLeffler };

// Deterministic coefficient sequence a_n of f(z) = sum phi_n a_n z^n, kept in
// log scale:
//   GEF            a_n = (n!)^{-1/2}
//   Mittag-Leffler a_n = 1 / Gamma(alpha n + 1)
// Both have a_0 = 1 and log a_n concave in n.
//
// The cache is append-only and only grows through warm(), which must not run
// concurrently with readers. log_coeff() never mutates: indices past the cache
// are computed on the fly with the same formula, so values are cache-consistent.
class CoefficientModel {
 public:
  static CoefficientModel gef();
  static CoefficientModel mittag_leffler(double alpha);

  ModelKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  double log_coeff(std::size_t n) const;
  void warm(std::size_t up_to);
  std::size_t cached() const { return cache_.size(); }

 private:
  CoefficientModel(ModelKind kind, double alpha);
  double compute(std::size_t n) const;

  ModelKind kind_;
  double alpha_;
  std::vector<double> cache_;
};

// log(a_n r^n)
inline double log_term(const CoefficientModel& model, std::size_t n, double log_r) {
  return static_cast<double>(n) * log_r + model.log_coeff(n);
}

struct IndexInterval {
  long lo = 0;
  long hi = -1;
  bool empty() const { return hi < lo; }
  long size() const { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const IndexInterval&) const = default;
};

struct SOfR {
  double value = 0.0;
  // {n : a_n r^n >= 1}. The set is an interval starting at 0 by concavity.
  IndexInterval index_set;
};

// S(r) = 2 sum_{a_n r^n >= 1} log(a_n r^n), summed exactly in log scale.
SOfR s_of_r_detail(const CoefficientModel& model, double r);
double s_of_r(const CoefficientModel& model, double r);

// Leading-order term as stated for the model: 3e^2/4 r^4 (GEF) and
// r^{2/alpha} / (2 alpha) (Mittag-Leffler). Note that the GEF sum itself
// behaves like e^2/4 r^4; see s_integral_leading_term.
double s_asymptotic(const CoefficientModel& model, double r);

// Integral approximation of the S(r) sum: with a_n r^n = exp(A u (1 - log u))
// on the scaled index u in [0, e], the sum becomes e^2/4 r^4 (GEF) and
// e^2/(2 alpha) r^{2/alpha} (Mittag-Leffler).
double s_integral_leading_term(const CoefficientModel& model, double r);

// Indices where n -> a_n r^n attains its maximum. Closed form for GEF
// ({ceil(r^2 - 1), ..., floor(r^2)}); found by scanning for Mittag-Leffler.
IndexInterval peak_index_range(const CoefficientModel& model, double r);

// Upper bound -(n - e r^2)/2 on log(a_n r^n) for GEF, valid when n >= e r^2.
// Throws std::invalid_argument if n < e r^2.
double tail_log_bound(double r, long n);

}  // namespace holelab
