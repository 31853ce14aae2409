#pragma once

#include <cstdint>
#include <optional>

namespace holelab {

// Box [0, t]^k cut by the constraint prod r_j <= s. Stored with log t and
// log s so that the corollary-scale parameters (t = e^{2r^2}) stay representable.
class VolumeQuery {
 public:
  static VolumeQuery from_values(int k, double t, double s);
  static VolumeQuery from_logs(int k, double log_t, double log_s);

  int k() const { return k_; }
  double log_t() const { return log_t_; }
  double log_s() const { return log_s_; }
  double t() const;
  double s() const;
  // log(t^k / s)
  double log_ratio() const { return k_ * log_t_ - log_s_; }

 private:
  VolumeQuery(int k, double log_t, double log_s);
  int k_;
  double log_t_;
  double log_s_;
};

// V_k(t, s) = t^k if s >= t^k, otherwise s sum_{m<k} log^m(t^k/s) / m!.
double log_volume_exact(const VolumeQuery& q);
double volume_exact(const VolumeQuery& q);

// s / (k-1)! log^k(t^k / s); requires log(t^k / s) >= k (std::invalid_argument otherwise).
double log_volume_upper_bound(const VolumeQuery& q);
double volume_upper_bound(const VolumeQuery& q);
bool volume_bound_hypothesis(const VolumeQuery& q);

struct VolumeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // 95% Wilson interval scaled by t^k
  double ci_high = 0.0;
  long hits = 0;
  long samples = 0;
};

// Hit-or-miss estimate from uniform points in [0, t]^k; requires k <= 8.
VolumeEstimate volume_mc(const VolumeQuery& q, long samples, std::uint64_t seed, unsigned threads = 1);

// Volume bound evaluated at the parameters of the log-integral corollary:
//   N = floor(e r^2), t = exp(2 r^2), s = exp(4 N log r + C delta^{-2} r^2),
// giving log I' <= N log 2 + log s + log V_N(t, s). C has no fixed value and
// defaults to 1. The corollary's printed hypothesis on delta (delta >= r^{2-eps})
// contradicts the later choice delta = r^{-4/5}; neither form is enforced.
struct CorollaryAnnotation {
  double r = 0.0;
  double delta = 0.0;
  double c = 1.0;
  long n = 0;
  double log_t = 0.0;
  double log_s = 0.0;
  bool hypothesis_holds = false;  // log(t^N / s) >= N
  double log_i_prime_exact = 0.0;
  std::optional<double> log_i_prime_bound;
  double reference_scale = 0.0;  // (log r + delta^{-2}) r^2
};
CorollaryAnnotation corollary_annotation(double r, double c = 1.0, std::optional<double> delta = std::nullopt);

}  // namespace holelab
