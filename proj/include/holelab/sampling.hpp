#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "holelab/coeff_models.hpp"

namespace holelab {

enum class Distribution { ComplexGaussian, Rademacher, Steinhaus };

std::string to_string(Distribution d);
Distribution distribution_from_string(const std::string& name);

// One realization phi_0..phi_N. Entry n depends only on (dist, master_seed, n),
// so drawing more coefficients never changes the earlier ones.
struct CoefficientDraw {
  Distribution dist = Distribution::ComplexGaussian;
  std::vector<std::complex<double>> values;
  std::uint64_t master_seed = 0;

  long truncation_degree() const { return static_cast<long>(values.size()) - 1; }
};

// Single coefficient at index n. Complex Gaussians use (sqrt(E), 2 pi U) with
// E = -log(U') standard exponential, i.e. density exp(-|z|^2) / pi.
std::complex<double> draw_coefficient(Distribution dist, std::uint64_t master_seed, std::uint64_t n);

CoefficientDraw draw_coeffs(Distribution dist, std::size_t count, std::uint64_t master_seed);

// Seed of the i-th Monte Carlo sample derived from a run seed.
std::uint64_t sample_seed(std::uint64_t run_seed, std::uint64_t sample_index);

// Union bound on P(sup_{|z|<=r} |sum_{n>N} phi_n a_n z^n| > eps) for complex
// Gaussian phi_n, with eps split as eps 2^{-(n-N)} over the tail indices and
// P(|phi| > x) = exp(-x^2) per term.
double truncation_failure_bound(const CoefficientModel& model, double r, double eps, long degree);

// Smallest N >= floor(e r^2) + 1 whose truncation_failure_bound is at most
// fail_prob. Requires eps, fail_prob in (0, 1).
long truncation_degree(const CoefficientModel& model, double r, double eps, double fail_prob);

}  // namespace holelab
