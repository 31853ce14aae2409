#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace holelab {

// Grid of N points z_j = kappa r exp(2 pi i j / N) on which the covariance
// Sigma_ij = E f(z_i) conj(f(z_j)) = exp(z_i conj(z_j)) is formed.
class CovarianceSpec {
 public:
  // Default parameters: delta = r^{-4/5}, kappa = 1 - sqrt(delta), N = floor(e r^2).
  // Requires r > 1 so that kappa lies in (0, 1).
  static CovarianceSpec from_radius(double r);
  static CovarianceSpec custom(double r, double kappa, long n);

  double r() const { return r_; }
  double kappa() const { return kappa_; }
  long n() const { return n_; }
  std::optional<double> delta() const { return delta_; }
  double grid_radius() const { return kappa_ * r_; }
  // (kappa r)^2
  double x() const { return grid_radius() * grid_radius(); }

 private:
  CovarianceSpec(double r, double kappa, long n, std::optional<double> delta);
  double r_;
  double kappa_;
  long n_;
  std::optional<double> delta_;
};

std::vector<std::complex<double>> grid_points(const CovarianceSpec& spec);

// Sigma is circulant; its eigenvalues are lambda_m = N sum_{n = m mod N} x^n / n!.
// Returns log lambda_m for m = 0..N-1, each summed in log scale until the
// terms fall below 1e-18 of the running sum.
std::vector<double> circulant_log_eigenvalues(const CovarianceSpec& spec);
double logdet_circulant(const CovarianceSpec& spec);

// Dense oracle: forms Sigma entrywise and runs a Cholesky factorization in
// 100-digit floating point. Requires N <= 64 and x <= 300. A pivot that is not
// safely positive raises NumericFailure naming its index.
double logdet_dense(const CovarianceSpec& spec);
// Pivots of that factorization (as doubles), for diagnostics.
std::vector<double> dense_cholesky_pivots(const CovarianceSpec& spec);

// log of the squared principal minor built from columns 1..N of V:
//   sum_{n=1}^N 2 log a_n + 2N log(kappa r) + N(N-1) log(kappa r) + N log N.
double vandermonde_lower_bound(const CovarianceSpec& spec);
// The same quantity after regrouping: sum_{n=1}^N 2 log(a_n (kappa r)^n) + N log N.
double vandermonde_minor_regrouped(const CovarianceSpec& spec);

}  // namespace holelab
