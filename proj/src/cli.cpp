#include "holelab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "holelab/coeff_models.hpp"
#include "holelab/covariance_det.hpp"
#include "holelab/errors.hpp"
#include "holelab/evaluate_zeros.hpp"
#include "holelab/hermite_asymptotics.hpp"
#include "holelab/hole_estimators.hpp"
#include "holelab/parallel.hpp"
#include "holelab/report.hpp"
#include "holelab/sampling.hpp"
#include "holelab/volume_geometry.hpp"

namespace holelab::cli {

namespace {

struct Common {
  std::string format = "json";
  std::string output;
  std::optional<unsigned> threads;
};

struct ModelArgs {
  std::string model = "gef";
  double alpha = 1.0;

  CoefficientModel build() const {
    if (model == "gef") return CoefficientModel::gef();
    if (model == "ml" || model == "mittag-leffler") return CoefficientModel::mittag_leffler(alpha);
    throw std::invalid_argument("unknown model '" + model + "' (expected gef or ml)");
  }

  void describe(Json& params) const {
    params["model"] = model;
    if (model != "gef") params["alpha"] = alpha;
  }
};

void add_model(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--model", m.model, "Coefficient model: gef or ml")->capture_default_str();
  sub->add_option("--alpha", m.alpha, "Mittag-Leffler parameter")->capture_default_str();
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format: json or csv")->capture_default_str();
  sub->add_option("--output", c.output, "Output file (default stdout)");
  sub->add_option("--threads", c.threads, "Worker threads (overrides THREADS)");
}

ReportRecord make_record(const std::string& command, std::uint64_t seed) {
  ReportRecord r;
  r.command = command;
  r.seed = seed;
  return r;
}

// Parses one command line (without the program name) and executes it.
struct Invocation {
  std::vector<ReportRecord> records;
  Common common;
  std::string help;  // set when --help was requested
};

Invocation execute(const std::vector<std::string>& args);

// ---- individual commands --------------------------------------------------

ReportRecord cmd_s_of_r(const ModelArgs& m, double r) {
  const auto model = m.build();
  auto rec = make_record("s-of-r", 0);
  m.describe(rec.params);
  rec.params["r"] = r;
  const auto detail = s_of_r_detail(model, r);
  const double asym = s_asymptotic(model, r);
  rec.results["S"] = number(detail.value);
  rec.results["S_asymptotic"] = number(asym);
  rec.results["S_integral_leading"] = number(s_integral_leading_term(model, r));
  rec.results["ratio_to_asymptotic"] = number(detail.value / asym);
  rec.results["S_over_r4"] = number(detail.value / std::pow(r, 4));
  rec.results["index_set_size"] = detail.index_set.size();
  if (r >= 1.0) {
    const auto peak = peak_index_range(model, r);
    rec.results["peak_lo"] = peak.lo;
    rec.results["peak_hi"] = peak.hi;
  } else {
    rec.results["peak_lo"] = nullptr;
    rec.results["peak_hi"] = nullptr;
  }
  return rec;
}

ReportRecord cmd_hole(const ModelArgs& m, double r, long samples, std::uint64_t seed, unsigned threads) {
  const auto model = m.build();
  auto rec = make_record("hole", seed);
  m.describe(rec.params);
  rec.params["r"] = r;
  rec.params["samples"] = samples;
  const auto rep = hole_bracket_report(model, r, samples, seed, threads);
  rec.results["p_hat"] = rep.mc ? number(rep.mc->point_value) : Json(nullptr);
  rec.results["ci_low"] = rep.mc ? number(rep.mc->ci_low) : Json(nullptr);
  rec.results["ci_high"] = rep.mc ? number(rep.mc->ci_high) : Json(nullptr);
  rec.results["omega_log_prob"] = number(rep.omega_log_prob);
  rec.results["cert_valid"] = rep.cert_valid;
  rec.results["margin"] = number(rep.margin);
  rec.results["bound_status"] = rep.bound_status;
  rec.results["s_of_r"] = number(rep.s_of_r);
  rec.results["s_asymptotic"] = number(rep.s_asymptotic);
  rec.results["mc_skipped"] = !rep.mc.has_value();
  rec.results["degree"] = rep.mc ? Json(rep.mc->degree) : Json(nullptr);
  rec.results["uncounted_draws"] = rep.mc ? Json(rep.mc->failures) : Json(nullptr);
  return rec;
}

ReportRecord cmd_omega(double r) {
  auto rec = make_record("omega", 0);
  rec.params["r"] = r;
  const auto detail = omega_log_prob_detail(r);
  const auto cert = omega_certificate(r);
  const double s = s_of_r(CoefficientModel::gef(), r);
  rec.results["log_prob"] = number(detail.total());
  rec.results["log_clause_i"] = number(detail.log_clause_i);
  rec.results["log_clause_ii"] = number(detail.log_clause_ii);
  rec.results["log_clause_iii"] = number(detail.log_clause_iii);
  rec.results["tail_cut"] = detail.tail_cut;
  rec.results["margin"] = number(cert.margin);
  rec.results["cert_valid"] = cert.valid;
  rec.results["s_of_r"] = number(s);
  rec.results["neg_log_prob_over_s"] = s > 0.0 ? number(-detail.total() / s) : Json(nullptr);
  return rec;
}

ReportRecord cmd_conditioned(const ModelArgs& m, std::optional<double> r_opt, long samples, std::uint64_t seed,
                             unsigned threads) {
  const auto model = m.build();
  const double r = r_opt.value_or(smallest_certified_radius());
  auto rec = make_record("conditioned", seed);
  m.describe(rec.params);
  rec.params["r"] = r;
  rec.params["samples"] = samples;
  const auto res = omega_conditioned_sample(model, r, samples, seed, threads);
  const auto cert = omega_certificate(r);
  rec.results["zero_free_fraction"] = number(res.fraction());
  rec.results["zero_free"] = res.zero_free;
  rec.results["degree"] = res.degree;
  rec.results["cert_valid"] = cert.valid;
  rec.results["margin"] = number(cert.margin);
  return rec;
}

ReportRecord cmd_zeros(const ModelArgs& m, double r, long samples, std::uint64_t seed, bool verify, unsigned threads) {
  const auto model = m.build();
  auto rec = make_record("zeros", seed);
  m.describe(rec.params);
  rec.params["r"] = r;
  rec.params["samples"] = samples;
  rec.params["verify"] = verify;
  if (samples < 1) throw std::invalid_argument("zeros requires samples >= 1");
  const long degree = truncation_degree(model, r, 1e-9, 1e-6 / static_cast<double>(samples));
  std::vector<long> counts(static_cast<std::size_t>(samples));
  parallel_for(counts.size(), threads, [&](std::size_t i) {
    const auto draw = draw_coeffs(Distribution::ComplexGaussian, static_cast<std::size_t>(degree) + 1,
                                  sample_seed(seed, i));
    counts[i] = count_zeros_disk(TruncatedSeries(draw, model), r, {verify}).count;
  });
  double sum = 0.0, sum_sq = 0.0;
  long holes = 0;
  for (long c : counts) {
    sum += static_cast<double>(c);
    sum_sq += static_cast<double>(c) * static_cast<double>(c);
    holes += c == 0;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  rec.results["mean_count"] = number(mean);
  rec.results["std_error"] = number(std::sqrt(std::max(var, 0.0) / n));
  rec.results["expected_gef"] = number(r * r);
  rec.results["hole_fraction"] = number(static_cast<double>(holes) / n);
  rec.results["degree"] = degree;
  return rec;
}

ReportRecord cmd_volume(int k, double t, double s, long mc_samples, std::uint64_t seed, unsigned threads,
                        std::optional<double> corollary_r, double corollary_c) {
  auto rec = make_record("volume", seed);
  rec.params["k"] = k;
  rec.params["t"] = t;
  rec.params["s"] = s;
  rec.params["mc_samples"] = mc_samples;
  const auto q = VolumeQuery::from_values(k, t, s);
  rec.results["exact"] = number(volume_exact(q));
  rec.results["log_exact"] = number(log_volume_exact(q));
  rec.results["bound_or_na"] = volume_bound_hypothesis(q) ? number(volume_upper_bound(q)) : Json(nullptr);
  if (mc_samples > 0 && k <= 8) {
    const auto mc = volume_mc(q, mc_samples, seed, threads);
    rec.results["mc"] = number(mc.estimate);
    rec.results["mc_ci"] = interval(mc.ci_low, mc.ci_high);
    rec.results["mc_std_error"] = number(mc.std_error);
  } else {
    rec.results["mc"] = nullptr;
    rec.results["mc_ci"] = interval(NAN, NAN);
    rec.results["mc_std_error"] = nullptr;
  }
  if (corollary_r) {
    rec.params["corollary_r"] = *corollary_r;
    rec.params["corollary_c"] = corollary_c;
    const auto a = corollary_annotation(*corollary_r, corollary_c);
    Json c = Json::object();
    c["N"] = a.n;
    c["delta"] = number(a.delta);
    c["log_t"] = number(a.log_t);
    c["log_s"] = number(a.log_s);
    c["hypothesis_holds"] = a.hypothesis_holds;
    c["log_i_prime_exact"] = number(a.log_i_prime_exact);
    c["log_i_prime_bound"] = number(a.log_i_prime_bound);
    c["reference_scale"] = number(a.reference_scale);
    rec.results["corollary"] = c;
  }
  return rec;
}

ReportRecord cmd_covdet(double r, std::optional<double> kappa, std::optional<long> n_opt, bool require_dense) {
  auto rec = make_record("covdet", 0);
  rec.params["r"] = r;
  const CovarianceSpec spec = (kappa || n_opt)
                                  ? CovarianceSpec::custom(
                                        r, kappa.value_or(CovarianceSpec::from_radius(r).kappa()),
                                        n_opt.value_or(static_cast<long>(std::floor(std::numbers::e * r * r))))
                                  : CovarianceSpec::from_radius(r);
  rec.params["kappa"] = spec.kappa();
  rec.params["N"] = spec.n();
  const double logdet = logdet_circulant(spec);
  std::optional<double> dense;
  if (require_dense) {
    dense = logdet_dense(spec);
  } else if (spec.n() <= 64 && spec.x() <= 300.0) {
    try {
      dense = logdet_dense(spec);
    } catch (const NumericFailure&) {
      dense.reset();
    }
  }
  const double minor = vandermonde_lower_bound(spec);
  const double s_kr = s_of_r(CoefficientModel::gef(), spec.grid_radius());
  const auto eig = circulant_log_eigenvalues(spec);
  rec.results["logdet_circulant"] = number(logdet);
  rec.results["logdet_dense"] = number(dense);
  rec.results["vandermonde_lower_bound"] = number(minor);
  rec.results["s_kappa_r"] = number(s_kr);
  rec.results["gap_logdet_minus_s"] = number(logdet - s_kr);
  rec.results["gap_minor_minus_s"] = number(minor - s_kr);
  rec.results["min_log_eigenvalue"] = number(*std::min_element(eig.begin(), eig.end()));
  return rec;
}

ReportRecord cmd_hermite(double beta_re, double beta_im, long n, double c1, double c2, long nmax) {
  auto rec = make_record("hermite", 0);
  rec.params["beta_re"] = beta_re;
  rec.params["beta_im"] = beta_im;
  rec.params["n"] = n;
  rec.params["c1"] = c1;
  rec.params["c2"] = c2;
  rec.params["nmax"] = nmax;
  const std::complex<double> beta(beta_re, beta_im);
  const HermiteSeries series(beta, std::max(n, nmax));
  if (beta != 0.0 && n >= 16) {
    const auto ratio = saddle_point_ratio(series, n);
    rec.results["ratio_re"] = number(ratio.real());
    rec.results["ratio_im"] = number(ratio.imag());
    rec.results["abs_deviation"] = number(std::abs(ratio - 1.0));
  } else {
    rec.results["ratio_re"] = nullptr;
    rec.results["ratio_im"] = nullptr;
    rec.results["abs_deviation"] = nullptr;
  }
  rec.results["log_abs_h_n"] = number(series.log_abs(n));
  const auto escape = annulus_escape(HermiteSeries(beta, std::max(nmax, 2L)), c1, c2);
  rec.results["escape_index"] = escape ? Json(*escape) : Json(nullptr);
  return rec;
}

ReportRecord cmd_forced_zero(const std::string& dist_name, long samples, long degree, std::uint64_t seed,
                             double twist, unsigned threads) {
  auto rec = make_record("forced-zero", seed);
  const auto dist = distribution_from_string(dist_name);
  rec.params["dist"] = to_string(dist);
  rec.params["samples"] = samples;
  rec.params["degree"] = degree;
  rec.params["phase_twist"] = twist;
  const auto stats = forced_zero_experiment(dist, samples, degree, seed, threads, twist);
  rec.results["max"] = number(stats.max);
  rec.results["mean"] = number(stats.mean);
  rec.results["q05"] = number(stats.q05);
  rec.results["q25"] = number(stats.q25);
  rec.results["median"] = number(stats.median);
  rec.results["q75"] = number(stats.q75);
  rec.results["q95"] = number(stats.q95);
  rec.results["all_ones_min_modulus"] = number(stats.min_moduli.front());
  rec.results["all_finite"] = stats.all_finite;
  return rec;
}

// ---- sweep ------------------------------------------------------------------

struct Axis {
  std::string key;
  std::vector<std::string> values;
};

Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw CLI::ValidationError("--vary", "expected key=a:b:step or key=v1,v2 but got '" + spec + "'");
  }
  Axis axis;
  axis.key = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 1);
  if (rhs.find(':') != std::string::npos) {
    std::stringstream ss(rhs);
    std::string a, b, step;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, step, ':');
    double lo, hi, dx;
    try {
      lo = std::stod(a);
      hi = std::stod(b);
      dx = std::stod(step);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--vary", "bad range in '" + spec + "'");
    }
    if (!(dx > 0.0) || hi < lo) throw CLI::ValidationError("--vary", "empty range in '" + spec + "'");
    const long count = static_cast<long>(std::floor((hi - lo) / dx + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) axis.values.push_back(format_double(lo + dx * static_cast<double>(i)));
  } else {
    std::stringstream ss(rhs);
    std::string v;
    while (std::getline(ss, v, ',')) {
      if (!v.empty()) axis.values.push_back(v);
    }
  }
  if (axis.values.empty()) throw CLI::ValidationError("--vary", "no values in '" + spec + "'");
  return axis;
}

Invocation execute_sweep(const std::vector<std::string>& args) {
  // sweep <command> [--vary spec]... [--format f] [--output p] [--threads n] [command flags...]
  Invocation inv;
  if (args.size() >= 2 && (args[1] == "-h" || args[1] == "--help")) {
    inv.help =
        "Run a command over a cartesian grid of parameter values\n"
        "Usage: holelab sweep <command> --vary key=spec [--vary ...] [--format f] [--output p] [--threads n] [flags]\n\n"
        "  --vary key=a:b:step   values a, a+step, ... up to b\n"
        "  --vary key=v1,v2,...  explicit list\n"
        "  other flags are passed to <command> unchanged; the last --vary varies fastest\n";
    return inv;
  }
  if (args.size() < 2) throw CLI::ValidationError("sweep", "expected a command to sweep");
  const std::string sub = args[1];
  if (sub == "sweep") throw CLI::ValidationError("sweep", "cannot sweep a sweep");
  std::vector<Axis> axes;
  std::vector<std::string> forwarded{sub};
  for (std::size_t i = 2; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch(a + " requires a value");
      return args[++i];
    };
    if (a == "--vary") {
      axes.push_back(parse_axis(value()));
    } else if (a == "--format") {
      inv.common.format = value();
    } else if (a == "--output") {
      inv.common.output = value();
    } else if (a == "--threads") {
      const auto v = value();
      try {
        inv.common.threads = static_cast<unsigned>(std::stoul(v));
      } catch (const std::exception&) {
        throw CLI::ConversionError("--threads", v);
      }
    } else {
      forwarded.push_back(a);
    }
  }
  if (axes.empty()) throw CLI::ValidationError("sweep", "at least one --vary is required");
  if (inv.common.threads) {
    forwarded.push_back("--threads");
    forwarded.push_back(std::to_string(*inv.common.threads));
  }

  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    auto point_args = forwarded;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      point_args.push_back("--" + axes[a].key);
      point_args.push_back(axes[a].values[idx[a]]);
    }
    auto res = execute(point_args);
    for (auto& r : res.records) inv.records.push_back(std::move(r));
    // odometer, last axis fastest
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return inv;
    }
  }
}

Invocation execute(const std::vector<std::string>& args) {
  if (!args.empty() && args.front() == "sweep") return execute_sweep(args);

  CLI::App app{"Numerical laboratory for hole probabilities of Gaussian entire functions", "holelab"};
  app.require_subcommand(1);
  Invocation inv;
  Common& common = inv.common;
  std::function<ReportRecord(unsigned)> action;

  ModelArgs model;
  double r = 1.0;
  std::optional<double> r_opt;
  long samples = 10000;
  std::uint64_t seed = 1;

  {
    auto* sub = app.add_subcommand("s-of-r", "S(r), its leading term and the index set");
    add_model(sub, model);
    sub->add_option("--r", r, "Radius")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&](unsigned) { return cmd_s_of_r(model, r); }; });
  }
  {
    auto* sub = app.add_subcommand("hole", "Hole probability: direct MC next to the Omega_r bound");
    add_model(sub, model);
    sub->add_option("--r", r, "Radius")->required();
    sub->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    sub->add_option("--seed", seed, "Run seed")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] { action = [&](unsigned th) { return cmd_hole(model, r, samples, seed, th); }; });
  }
  {
    auto* sub = app.add_subcommand("omega", "Exact log P(Omega_r) and the zero-free certificate");
    sub->add_option("--r", r, "Radius (>= 1)")->required();
    add_common(sub, common);
    sub->callback([&] { action = [&](unsigned) { return cmd_omega(r); }; });
  }
  long conditioned_samples = 1000;
  {
    auto* sub = app.add_subcommand("conditioned", "Zero-free fraction of draws conditioned on Omega_r");
    add_model(sub, model);
    sub->add_option("--r", r_opt, "Radius (default: smallest certified radius on the 0.5 grid)");
    sub->add_option("--samples", conditioned_samples, "Conditioned samples")->capture_default_str();
    sub->add_option("--seed", seed, "Run seed")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] {
      action = [&](unsigned th) { return cmd_conditioned(model, r_opt, conditioned_samples, seed, th); };
    });
  }
  bool verify = false;
  {
    auto* sub = app.add_subcommand("zeros", "Zero counts n(r) of random draws");
    add_model(sub, model);
    sub->add_option("--r", r, "Radius")->required();
    sub->add_option("--samples", samples, "Draws")->capture_default_str();
    sub->add_option("--seed", seed, "Run seed")->capture_default_str();
    sub->add_flag("--verify", verify, "Cross-check every count with the companion-matrix roots");
    add_common(sub, common);
    sub->callback([&] { action = [&](unsigned th) { return cmd_zeros(model, r, samples, seed, verify, th); }; });
  }
  int k = 2;
  double t = 2.0, s = 1.0;
  long mc_samples = 1000000;
  std::optional<double> corollary_r;
  double corollary_c = 1.0;
  {
    auto* sub = app.add_subcommand("volume", "Volume of {0 <= r_j <= t, prod r_j <= s}");
    sub->add_option("--k", k, "Dimension")->required();
    sub->add_option("--t", t, "Box side")->required();
    sub->add_option("--s", s, "Product bound")->required();
    sub->add_option("--mc-samples", mc_samples, "Hit-or-miss samples (0 disables)")->capture_default_str();
    sub->add_option("--seed", seed, "Run seed")->capture_default_str();
    sub->add_option("--corollary-r", corollary_r, "Also report the log-integral bound at this radius");
    sub->add_option("--corollary-c", corollary_c, "Constant C in s = exp(4N log r + C r^2/delta^2)")
        ->capture_default_str();
    add_common(sub, common);
    sub->callback([&] {
      action = [&](unsigned th) { return cmd_volume(k, t, s, mc_samples, seed, th, corollary_r, corollary_c); };
    });
  }
  std::optional<double> kappa;
  std::optional<long> n_points;
  bool require_dense = false;
  {
    auto* sub = app.add_subcommand("covdet", "log det of the covariance on the circle grid");
    sub->add_option("--r", r, "Radius")->required();
    sub->add_option("--kappa", kappa, "Grid radius factor (default 1 - r^{-2/5})");
    sub->add_option("--n", n_points, "Grid size (default floor(e r^2))");
    sub->add_flag("--dense", require_dense, "Require the dense oracle; its failures become errors");
    add_common(sub, common);
    sub->callback([&] { action = [&](unsigned) { return cmd_covdet(r, kappa, n_points, require_dense); }; });
  }
  double beta_re = 1.0, beta_im = 0.0, c1 = 0.5, c2 = 2.0;
  long n_coeff = 10000, nmax = 100000;
  {
    auto* sub = app.add_subcommand("hermite", "Coefficients of exp(z^2/2 + beta z) against the saddle-point form");
    sub->add_option("--beta-re", beta_re, "Re beta")->capture_default_str();
    sub->add_option("--beta-im", beta_im, "Im beta")->capture_default_str();
    sub->add_option("--n", n_coeff, "Compare g_{n-1} at this n")->capture_default_str();
    sub->add_option("--c1", c1, "Annulus lower bound")->capture_default_str();
    sub->add_option("--c2", c2, "Annulus upper bound")->capture_default_str();
    sub->add_option("--nmax", nmax, "Annulus scan limit")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] {
      action = [&](unsigned) { return cmd_hermite(beta_re, beta_im, n_coeff, c1, c2, nmax); };
    });
  }
  std::string dist = "rademacher";
  long degree = 200;
  double twist = 0.0;
  long forced_samples = 1000;
  {
    auto* sub = app.add_subcommand("forced-zero", "Min zero modulus for bounded coefficients");
    sub->add_option("--dist", dist, "rademacher or steinhaus")->capture_default_str();
    sub->add_option("--samples", forced_samples, "Draws")->capture_default_str();
    sub->add_option("--degree", degree, "Truncation degree")->capture_default_str();
    sub->add_option("--seed", seed, "Run seed")->capture_default_str();
    sub->add_option("--phase-twist", twist, "Multiply phi_n by exp(i twist n^2)")->capture_default_str();
    add_common(sub, common);
    sub->callback([&] {
      action = [&](unsigned th) { return cmd_forced_zero(dist, forced_samples, degree, seed, twist, th); };
    });
  }
  app.add_subcommand("sweep", "Run a command over a cartesian grid: sweep <command> --vary key=a:b:step ...");

  std::vector<const char*> argv{"holelab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    inv.help = app.help();
    return inv;
  }
  if (!action) throw CLI::ValidationError("command", "no command selected");
  (void)format_from_string(common.format);

  const auto start = std::chrono::steady_clock::now();
  ReportRecord rec = action(resolve_threads(common.threads));
  rec.wall_time_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  inv.records.push_back(std::move(rec));
  return inv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto inv = execute(args);
    if (!inv.help.empty()) {
      out << inv.help;
      return kOk;
    }
    const Format format = format_from_string(inv.common.format);
    try {
      emit(inv.records, format, inv.common.output, out);
    } catch (const std::runtime_error& e) {
      err << "output error: " << e.what() << '\n';
      return kUsageError;
    }
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace holelab::cli
