#include "holelab/hole_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holelab/errors.hpp"
#include "holelab/evaluate_zeros.hpp"
#include "holelab/parallel.hpp"
#include "holelab/rng.hpp"

namespace holelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kConditionedTag = 0x4f4d454741ULL;

// log(1 - exp(-y)) for y > 0.
double log1mexp(double y) {
  if (y <= std::numbers::ln2) return std::log(-std::expm1(-y));
  return std::log1p(-std::exp(-y));
}

// log(1 - exp(-exp(log_y))), accurate when exp(log_y) underflows.
double log1mexp_from_log(double log_y) {
  if (log_y < -30.0) return log_y - 0.5 * std::exp(log_y);
  return log1mexp(std::exp(log_y));
}

long floor_er2(double r) { return static_cast<long>(std::floor(std::numbers::e * r * r)); }

void require_r_at_least_one(double r, const char* what) {
  if (!(r >= 1.0)) throw std::invalid_argument(std::string(what) + " requires r >= 1");
}

// Zero-free indicator for one series. When the contour at r cannot be
// resolved, counts are monotone in the radius: a zero inside a slightly
// smaller disk settles "no", a zero-free slightly larger disk settles "yes".
// nullopt means neither happened.
std::optional<bool> zero_free(const TruncatedSeries& ts, double r) {
  try {
    return count_zeros_disk(ts, r).count == 0;
  } catch (const NumericFailure&) {
  }
  for (const double eps : {1e-7, 1e-5}) {
    try {
      if (count_zeros_disk(ts, r * (1.0 - eps)).count > 0) return false;
    } catch (const NumericFailure&) {
    }
    try {
      if (count_zeros_disk(ts, r * (1.0 + eps)).count == 0) return true;
    } catch (const NumericFailure&) {
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(HoleMethod m) {
  switch (m) {
    case HoleMethod::DirectMC: return "direct_mc";
    case HoleMethod::OmegaBound: return "omega_bound";
    case HoleMethod::ConditionedCheck: return "conditioned";
  }
  return "unknown";
}

HoleMethod hole_method_from_string(const std::string& s) {
  if (s == "direct_mc") return HoleMethod::DirectMC;
  if (s == "omega_bound") return HoleMethod::OmegaBound;
  if (s == "conditioned") return HoleMethod::ConditionedCheck;
  throw std::invalid_argument("unknown hole estimate method '" + s + "'");
}

WilsonInterval wilson_interval(long hits, long samples, double z) {
  if (samples <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, std::min(center - half, p)), std::min(1.0, std::max(center + half, p))};
}

std::vector<HoleEstimate> hole_mc_common(const CoefficientModel& model, std::span<const double> radii, long samples,
                                         std::uint64_t seed, unsigned threads) {
  if (samples < 100) throw std::invalid_argument("hole_mc requires samples >= 100");
  if (radii.empty()) throw std::invalid_argument("hole_mc needs at least one radius");
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("hole_mc requires r > 0");
  }
  const double r_max = *std::max_element(radii.begin(), radii.end());
  const long degree = truncation_degree(model, r_max, 1e-9, 1e-6 / static_cast<double>(samples));
  const std::size_t nr = radii.size();

  // 0 = has a zero, 1 = zero-free, 2 = undetermined
  std::vector<unsigned char> outcome(static_cast<std::size_t>(samples) * nr, 0);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    const auto draw = draw_coeffs(Distribution::ComplexGaussian, static_cast<std::size_t>(degree) + 1,
                                  sample_seed(seed, i));
    const TruncatedSeries ts(draw, model);
    for (std::size_t k = 0; k < nr; ++k) {
      const auto free = zero_free(ts, radii[k]);
      outcome[i * nr + k] = free ? static_cast<unsigned char>(*free) : 2;
    }
  });

  std::vector<HoleEstimate> out;
  out.reserve(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    long hits = 0, failures = 0;
    for (long i = 0; i < samples; ++i) {
      const unsigned char o = outcome[static_cast<std::size_t>(i) * nr + k];
      hits += o == 1;
      failures += o == 2;
    }
    if (static_cast<double>(failures) > 1e-3 * static_cast<double>(samples)) {
      throw NumericFailure("hole_mc: " + std::to_string(failures) + " of " + std::to_string(samples) +
                           " draws could not be counted at r = " + std::to_string(radii[k]));
    }
    const long counted = samples - failures;
    const auto ci = wilson_interval(hits, counted);
    HoleEstimate e;
    e.radius = radii[k];
    e.method = HoleMethod::DirectMC;
    e.point_value = counted > 0 ? static_cast<double>(hits) / static_cast<double>(counted) : 0.0;
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    e.samples = samples;
    e.seed = seed;
    e.hits = hits;
    e.failures = failures;
    e.degree = degree;
    out.push_back(e);
  }
  return out;
}

HoleEstimate hole_mc(const CoefficientModel& model, double r, long samples, std::uint64_t seed, unsigned threads) {
  const double radii[] = {r};
  return hole_mc_common(model, radii, samples, seed, threads).front();
}

OmegaBreakdown omega_log_prob_detail(double r) {
  require_r_at_least_one(r, "omega_log_prob");
  const auto model = CoefficientModel::gef();
  const double log_r = std::log(r);
  const double log_3r = std::log(3.0 * r);
  const double er2 = std::numbers::e * r * r;
  const long n_mid = floor_er2(r);

  OmegaBreakdown out;
  out.log_clause_i = -4.0 * r * r;
  for (long n = 1; n <= n_mid; ++n) {
    const double log_lambda_sq = -2.0 * log_3r - 2.0 * log_term(model, static_cast<std::size_t>(n), log_r);
    out.log_clause_ii += log1mexp_from_log(log_lambda_sq);
  }
  // Once mu^2 > 1 the terms satisfy |log(1 - e^{-mu^2})| <= 2 e^{-mu^2} and
  // mu^2 grows by e^{1/2} per step, so the remainder is at most twice the next term.
  for (long n = n_mid + 1;; ++n) {
    const double mu_sq = std::exp(0.5 * (static_cast<double>(n) - er2));
    out.log_clause_iii += log1mexp(mu_sq);
    const double mu_sq_next = mu_sq * std::exp(0.5);
    if (mu_sq_next > 1.0 && 4.0 * std::exp(-mu_sq_next) < 1e-15) {
      out.tail_cut = n;
      break;
    }
  }
  return out;
}

double omega_log_prob(double r) { return omega_log_prob_detail(r).total(); }

OmegaCertificate omega_certificate(double r) {
  const auto detail = omega_log_prob_detail(r);
  OmegaCertificate c;
  c.r = r;
  c.log_prob = detail.total();
  c.tail_cut = detail.tail_cut;
  // Tail: with n = floor(e r^2) + 1 + k we have n - e r^2 >= k, and
  // mu_n a_n r^n <= exp((n - e r^2)/4 - (n - e r^2)/2) <= e^{-k/4}.
  const double tail = 1.0 / (1.0 - std::exp(-0.25));
  c.margin = 2.0 * r - static_cast<double>(floor_er2(r)) / (3.0 * r) - tail;
  c.valid = c.margin > 0.0;
  return c;
}

double smallest_certified_radius(double start, double step) {
  for (int k = 0; k < 100000; ++k) {
    const double r = start + step * k;
    if (r >= 1.0 && omega_certificate(r).valid) return r;
  }
  throw NumericFailure("no certified radius found on the grid");
}

double omega_log_bound_sq(const CoefficientModel& model, double r, long n) {
  const long n_mid = floor_er2(r);
  if (n == 0) return std::log(4.0 * r * r);
  if (n <= n_mid) return -2.0 * std::log(3.0 * r) - 2.0 * log_term(model, static_cast<std::size_t>(n), std::log(r));
  return 0.5 * (static_cast<double>(n) - std::numbers::e * r * r);
}

long omega_conditioned_degree(const CoefficientModel& model, double r) {
  require_r_at_least_one(r, "omega_conditioned_degree");
  const long n_mid = floor_er2(r);
  const double er2 = std::numbers::e * r * r;
  const double log_r = std::log(r);
  std::vector<double> terms;
  double prev = HUGE_VAL;
  for (long n = n_mid + 1;; ++n) {
    const double t =
        std::exp(0.25 * (static_cast<double>(n) - er2) + log_term(model, static_cast<std::size_t>(n), log_r));
    terms.push_back(t);
    if (t < 1e-40 && t < prev) break;
    prev = t;
  }
  // Smallest D with sum_{n > D} terms < 1e-12.
  double suffix = 0.0;
  long degree = n_mid + static_cast<long>(terms.size());
  for (long idx = static_cast<long>(terms.size()) - 1; idx >= 0; --idx) {
    suffix += terms[static_cast<std::size_t>(idx)];
    if (suffix >= 1e-12) break;
    degree = n_mid + idx;  // terms[idx] is index n_mid + 1 + idx
  }
  return std::max(degree, n_mid + 1);
}

CoefficientDraw omega_conditioned_draw(const CoefficientModel& model, double r, long degree, std::uint64_t seed) {
  require_r_at_least_one(r, "omega_conditioned_draw");
  CoefficientDraw draw;
  draw.dist = Distribution::ComplexGaussian;
  draw.master_seed = seed;
  draw.values.resize(static_cast<std::size_t>(degree) + 1);
  for (long n = 0; n <= degree; ++n) {
    const CounterRng rng(derive_key(seed ^ kConditionedTag, static_cast<std::uint64_t>(n)));
    const double u = rng.uniform(0);
    const double phase = kTwoPi * rng.uniform(1);
    const double log_b = omega_log_bound_sq(model, r, n);
    double modulus;
    if (n == 0) {
      // Exp(1) conditioned on [4r^2, inf): 4r^2 - log U
      modulus = std::max(2.0 * r, std::sqrt(4.0 * r * r - std::log(u)));
    } else if (log_b < -30.0) {
      // Exp(1) conditioned on [0, b] with tiny b: E = U b (1 + O(b)).
      modulus = std::exp(0.5 * (std::log(u) + log_b));
    } else {
      const double b = std::exp(log_b);
      const double e = -std::log1p(u * std::expm1(-b));
      modulus = std::sqrt(std::min(e, b));
    }
    draw.values[static_cast<std::size_t>(n)] = std::polar(modulus, phase);
  }
  return draw;
}

ConditionedResult omega_conditioned_sample(const CoefficientModel& model, double r, long samples, std::uint64_t seed,
                                           unsigned threads) {
  require_r_at_least_one(r, "omega_conditioned_sample");
  if (samples < 1) throw std::invalid_argument("omega_conditioned_sample requires samples >= 1");
  const long degree = omega_conditioned_degree(model, r);
  std::vector<unsigned char> free(static_cast<std::size_t>(samples), 0);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    const auto draw = omega_conditioned_draw(model, r, degree, sample_seed(seed, i));
    const TruncatedSeries ts(draw, model);
    free[i] = count_zeros_disk(ts, r).count == 0;
  });
  ConditionedResult out;
  out.r = r;
  out.samples = samples;
  out.degree = degree;
  out.seed = seed;
  for (unsigned char f : free) out.zero_free += f;
  return out;
}

HoleBracketReport hole_bracket_report(const CoefficientModel& model, double r, long samples, std::uint64_t seed,
                                      unsigned threads) {
  HoleBracketReport rep;
  rep.r = r;
  rep.s_of_r = s_of_r(model, r);
  rep.s_asymptotic = s_asymptotic(model, r);
  const bool omega_defined = r >= 1.0 && model.kind() == ModelKind::GEF;
  if (omega_defined) {
    const auto cert = omega_certificate(r);
    rep.omega_log_prob = cert.log_prob;
    rep.margin = cert.margin;
    rep.cert_valid = cert.valid;
  }
  if (rep.s_of_r <= kMcFeasibleS) rep.mc = hole_mc(model, r, samples, seed, threads);
  rep.bound_status = !omega_defined ? "undefined" : (rep.cert_valid ? "certified" : "uncertified");
  return rep;
}

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

std::optional<double> number_or_null(const nlohmann::ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

nlohmann::ordered_json to_json(const HoleEstimate& e) {
  nlohmann::ordered_json j;
  j["radius"] = e.radius;
  j["method"] = to_string(e.method);
  j["point_value"] = e.point_value;
  j["log_scale"] = e.log_scale;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["hits"] = e.hits;
  j["failures"] = e.failures;
  j["degree"] = e.degree;
  return j;
}

HoleEstimate hole_estimate_from_json(const nlohmann::ordered_json& j) {
  HoleEstimate e;
  e.radius = j.at("radius").get<double>();
  e.method = hole_method_from_string(j.at("method").get<std::string>());
  e.point_value = j.at("point_value").get<double>();
  e.log_scale = j.at("log_scale").get<bool>();
  e.ci_low = j.at("ci_low").get<double>();
  e.ci_high = j.at("ci_high").get<double>();
  e.samples = j.at("samples").get<long>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.hits = j.at("hits").get<long>();
  e.failures = j.at("failures").get<long>();
  e.degree = j.at("degree").get<long>();
  return e;
}

nlohmann::ordered_json to_json(const HoleBracketReport& r) {
  nlohmann::ordered_json j;
  j["r"] = r.r;
  j["s_of_r"] = r.s_of_r;
  j["s_asymptotic"] = r.s_asymptotic;
  j["omega_log_prob"] = optional_number(r.omega_log_prob);
  j["margin"] = optional_number(r.margin);
  j["cert_valid"] = r.cert_valid;
  j["bound_status"] = r.bound_status;
  j["mc"] = r.mc ? to_json(*r.mc) : nlohmann::ordered_json(nullptr);
  return j;
}

HoleBracketReport hole_bracket_from_json(const nlohmann::ordered_json& j) {
  HoleBracketReport r;
  r.r = j.at("r").get<double>();
  r.s_of_r = j.at("s_of_r").get<double>();
  r.s_asymptotic = j.at("s_asymptotic").get<double>();
  r.omega_log_prob = number_or_null(j.at("omega_log_prob"));
  r.margin = number_or_null(j.at("margin"));
  r.cert_valid = j.at("cert_valid").get<bool>();
  r.bound_status = j.at("bound_status").get<std::string>();
  if (!j.at("mc").is_null()) r.mc = hole_estimate_from_json(j.at("mc"));
  return r;
}

}  // namespace holelab
