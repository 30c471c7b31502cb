#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/logspace.hpp"
#include "core/rng.hpp"

namespace clab::bounds {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_eps(double eps) {
  if (!(eps > 1e-12 && eps < 1.0 - 1e-12)) {
    fail(errc::out_of_range, "eps must lie in (0,1) away from the endpoints");
  }
}
}  // namespace

BoundReport make_report(double first_order, double second_order, double constant) {
  BoundReport r;
  r.first_order = first_order;
  r.second_order = second_order;
  r.constant = constant;
  r.total = first_order + second_order + constant;
  return r;
}

BhtSuite bht_converse_suite(const FiniteDistribution& p, const FiniteDistribution& q, long n,
                            double eps) {
  check_eps(eps);
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  const auto stats = infocalc::divergence_stats(p, q);
  const double nd = static_cast<double>(n) * stats.d;
  const double big_l = std::log(1.0 / (1.0 - eps));

  BhtSuite suite;

  // (nD + ln 2) / (1 - eps)
  suite.weak = make_report(nd / (1.0 - eps), 0.0, std::log(2.0) / (1.0 - eps));
  suite.weak.params["eps"] = eps;

  // min over integer r >= ceil(3 sqrt(n ln 1/(1-eps))) of
  // (nD + ln 2)/(1 - e^{-r^2/n}) + r ln(K e n / r), K = |Y| / min Q.
  {
    BoundReport blowup;
    if (q.min_prob() == 0.0) {
      blowup.preconditions_ok = false;
      blowup.total = kInf;
      blowup.notes.push_back("blowing-up counting bound needs Q positive on Y");
    } else if (std::isinf(nd)) {
      blowup.total = kInf;
      blowup.notes.push_back("support violated: nD infinite");
    } else {
      const double k_ratio = static_cast<double>(q.alphabet_size()) / q.min_prob();
      const long r_min =
          static_cast<long>(std::ceil(3.0 * std::sqrt(static_cast<double>(n) * big_l)));
      if (r_min > n) {
        blowup.preconditions_ok = false;
        blowup.total = kInf;
        blowup.notes.push_back("required radius exceeds the blocklength");
      } else {
        double best = kInf;
        long best_r = r_min;
        for (long r = std::max<long>(r_min, 1); r <= n; ++r) {
          const double rd = static_cast<double>(r);
          const double boost = 1.0 - std::exp(-rd * rd / static_cast<double>(n));
          const double value = (nd + std::log(2.0)) / boost +
                               rd * std::log(k_ratio * std::exp(1.0) * static_cast<double>(n) / rd);
          if (value < best) {
            best = value;
            best_r = r;
          }
        }
        blowup = make_report(nd, best - nd, 0.0);
        blowup.params["r_star"] = static_cast<double>(best_r);
        blowup.params["k_ratio"] = k_ratio;
      }
    }
    suite.blowup = blowup;
  }

  // nD + 2 sqrt(ln 1/(1-eps)) sqrt(n (alpha - 1)) + ln 1/(1-eps)
  {
    BoundReport smoothing;
    if (std::isinf(stats.alpha)) {
      smoothing.preconditions_ok = false;
      smoothing.total = kInf;
      smoothing.notes.push_back("alpha infinite: smoothing bound unavailable");
    } else {
      const double slack = stats.alpha - 1.0;
      smoothing = make_report(
          nd, 2.0 * std::sqrt(big_l) * std::sqrt(static_cast<double>(n) * slack), big_l);
      smoothing.params["alpha"] = stats.alpha;
      smoothing.params["t_star"] =
          slack > 0.0 ? std::sqrt(big_l / (slack * static_cast<double>(n))) : kInf;
    }
    suite.smoothing = smoothing;
  }

  // nD + Q^{-1}(1-eps) sqrt(nV): asymptotic expansion, not a finite-n bound.
  {
    BoundReport ref = make_report(
        nd,
        std::isinf(stats.v)
            ? kInf
            : infocalc::gaussian_q_inverse(1.0 - eps) * std::sqrt(static_cast<double>(n) * stats.v),
        0.0);
    ref.is_bound = false;
    ref.notes.push_back("asymptotic reference line, not a finite-n guarantee");
    suite.strassen_ref = ref;
  }

  return suite;
}

AchievabilityReport bht_achievability(const FiniteDistribution& p, const FiniteDistribution& q,
                                      long n, double eps) {
  check_eps(eps);
  const auto under_p = infocalc::LlrDistribution::build(p, q, n, infocalc::Weighting::under_p);
  const auto under_q = infocalc::LlrDistribution::build(p, q, n, infocalc::Weighting::under_q);
  const auto& atoms_p = under_p.atoms();
  const auto& atoms_q = under_q.atoms();

  // Largest threshold gamma (an atom value) with P[i >= gamma] >= 1 - eps.
  double tail = 0.0;
  std::size_t cut = atoms_p.size();
  for (std::size_t i = atoms_p.size(); i-- > 0;) {
    tail += std::exp(atoms_p[i].log_prob);
    if (tail >= 1.0 - eps - 1e-15) {
      cut = i;
      break;
    }
  }
  if (cut == atoms_p.size()) cut = 0;  // numerically the whole mass is needed
  const double gamma = atoms_p[cut].llr;

  double log_type2 = logspace::neg_inf;
  for (std::size_t i = cut; i < atoms_q.size(); ++i) {
    log_type2 = logspace::log_add(log_type2, atoms_q[i].log_prob);
  }
  AchievabilityReport report;
  report.threshold = gamma;
  report.exact_type1 = std::max(0.0, 1.0 - std::min(1.0, tail));
  report.log_exact_type2 = log_type2;
  report.exact_type2 = std::exp(log_type2);
  report.chernoff_bound = std::exp(-gamma);
  return report;
}

BlowupNumbers blowup_lemma_numbers(double p_a, double c, double n, double k_ratio) {
  if (!(p_a > 0.0 && p_a < 1.0)) fail(errc::out_of_range, "P[A] must lie in (0,1)");
  if (!(c > 0.0)) fail(errc::out_of_range, "need c > 0");
  if (!(n > 0.0)) fail(errc::out_of_range, "need n > 0");
  if (!(k_ratio >= 1.0)) fail(errc::out_of_range, "need K >= 1");
  const double radius = std::sqrt(n / 2.0) * (std::sqrt(std::log(1.0 / p_a)) + c);
  const double lower = radius * std::log(radius / (n * std::exp(1.0) * k_ratio));
  return BlowupNumbers{radius, lower, 0.0};
}

BoundReport fano_bound(FanoKind kind, double i_wy, long n, double eps, double alpha) {
  check_eps(eps);
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  if (!(alpha >= 1.0)) fail(errc::out_of_range, "need alpha >= 1");
  const double big_l = std::log(1.0 / (1.0 - eps));
  const double nd = static_cast<double>(n);
  BoundReport report;
  switch (kind) {
    case FanoKind::weak:
      report = make_report(i_wy / (1.0 - eps), 0.0, std::log(2.0) / (1.0 - eps));
      report.notes.push_back("requires the average error criterion");
      break;
    case FanoKind::discrete_smoothing:
      report = make_report(i_wy, 2.0 * std::sqrt(big_l) * std::sqrt(nd * (alpha - 1.0)), big_l);
      report.params["alpha"] = alpha;
      report.params["t_star"] =
          alpha > 1.0 ? std::sqrt(big_l / ((alpha - 1.0) * nd)) : kInf;
      report.notes.push_back("requires the geometric average error criterion");
      break;
    case FanoKind::gaussian:
      report = make_report(i_wy, std::sqrt(2.0 * big_l) * std::sqrt(nd), big_l);
      report.params["t_star"] = std::sqrt(big_l / (2.0 * nd));
      report.notes.push_back("requires the geometric average error criterion");
      break;
  }
  return report;
}

BoundReport image_size_bound(ImageSizeVariant variant, const ImageSizeInputs& in) {
  if (!(in.c > 0.0)) fail(errc::out_of_range, "need c > 0");
  if (!(in.eta > 1e-12 && in.eta <= 1.0)) fail(errc::out_of_range, "eta must lie in (0,1]");
  if (in.n < 1) fail(errc::out_of_range, "need n >= 1");
  const double nd = static_cast<double>(in.n);
  const double log_eta = std::log(1.0 / in.eta);
  BoundReport report;
  switch (variant) {
    case ImageSizeVariant::discrete_d: {
      if (!(in.alpha >= 1.0)) fail(errc::out_of_range, "need alpha >= 1");
      report = make_report(in.divergence,
                           2.0 * in.c * std::sqrt(log_eta) * std::sqrt(nd * (in.alpha - 1.0)),
                           in.c * log_eta);
      break;
    }
    case ImageSizeVariant::discrete_typical: {
      if (!(in.delta > 0.0 && in.delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
      const double window = 3.0 * in.beta_x * std::log(static_cast<double>(in.x_size) / in.delta);
      if (nd <= window) {
        fail(errc::precondition_violated, "need n > 3 beta_X ln(|X|/delta) = " + std::to_string(window));
      }
      const double a = (in.c * std::log(in.alpha) + (in.c + 1.0) * std::log(in.beta_x)) *
                           std::sqrt(window) +
                       2.0 * in.c * std::sqrt((in.alpha - 1.0) * log_eta);
      report = make_report(nd * in.divergence, a * std::sqrt(nd), in.c * log_eta);
      report.params["A"] = a;
      break;
    }
    case ImageSizeVariant::alternative: {
      if (!(in.t > 0.0)) fail(errc::out_of_range, "the alternative variant needs t > 0");
      if (!(in.delta > 0.0 && in.delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
      const double window = 3.0 * in.beta_x * std::log(static_cast<double>(in.x_size) / in.delta);
      if (nd <= window) {
        fail(errc::precondition_violated, "need n > 3 beta_X ln(|X|/delta)");
      }
      const double counting = (in.c * std::log(in.alpha) + (in.c + 1.0) * std::log(in.beta_x)) *
                              std::sqrt(nd * window);
      // n d* + c(alpha-1)nt enters as first order in n at fixed t
      report = make_report(nd * in.divergence + in.c * (in.alpha - 1.0) * nd * in.t,
                           counting, 0.0);
      report.params["t"] = in.t;
      break;
    }
    case ImageSizeVariant::gaussian_d: {
      report = make_report(in.divergence, in.c * std::sqrt(2.0 * nd * log_eta), in.c * log_eta);
      break;
    }
    case ImageSizeVariant::gaussian_typical: {
      if (!(in.delta > 0.0 && in.delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
      if (nd < 20.0 * std::log(2.0 / in.delta)) {
        fail(errc::precondition_violated, "need n >= 20 ln(2/delta)");
      }
      report = make_report(nd * in.divergence,
                           std::sqrt(6.0 * nd * std::log(2.0 / in.delta)) +
                               in.c * std::sqrt(2.0 * nd * log_eta),
                           in.c * log_eta);
      break;
    }
  }
  report.params["c"] = in.c;
  report.params["eta"] = in.eta;
  return report;
}

SoundnessReport soundness_check_image_size(const FiniteChannel& channel,
                                           const FiniteDistribution& nu, double c, int n,
                                           double eta, int trials, std::uint64_t seed) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  if (!(eta > 0.0 && eta < 1.0)) fail(errc::out_of_range, "eta must lie in (0,1)");
  const double alpha = channel.sup_density_ratio(nu);
  if (std::isinf(alpha)) fail(errc::alpha_infinite, "channel density unbounded against nu");

  const FiniteChannel product = channel.memoryless_extension(n);
  // product reference measure on Y^n
  std::vector<measures::FiniteDistribution> nu_rows(static_cast<std::size_t>(n), nu);
  // build nu^{otimes n} as a flat vector
  std::vector<double> nu_n(product.output_size(), 1.0);
  {
    std::size_t inner = 1;
    const std::size_t m = nu.alphabet_size();
    for (int axis = n - 1; axis >= 0; --axis) {
      const std::size_t block = inner * m;
      for (std::size_t base = 0; base < nu_n.size(); base += block) {
        for (std::size_t s = 0; s < m; ++s) {
          for (std::size_t off = 0; off < inner; ++off) nu_n[base + s * inner + off] *= nu[s];
        }
      }
      inner = block;
    }
  }

  rng::Stream stream(seed, 0x50b0);
  SoundnessReport report;
  const double nd = static_cast<double>(n);
  const double log_eta = std::log(1.0 / eta);
  const double second = 2.0 * c * std::sqrt(log_eta) * std::sqrt(nd * (alpha - 1.0));
  const double constant = c * log_eta;
  const auto nu_product = measures::FiniteDistribution::validate_and_build(nu_n);

  std::vector<double> f(product.output_size());
  std::vector<double> mu_raw(product.input_size());
  for (int trial = 0; trial < trials; ++trial) {
    for (double& v : f) v = stream.next_unit();
    // occasional hard indicators: they stress the small-value regime
    if (trial % 4 == 0) {
      for (double& v : f) v = v > 0.5 ? 1.0 : 0.0;
    }
    double mu_total = 0.0;
    for (double& v : mu_raw) {
      v = stream.next_unit();
      mu_total += v;
    }
    const double scale = stream.next_unit_positive() / mu_total;
    for (double& v : mu_raw) v *= scale;

    const auto mu = bldiv::WeightedMeasure::make(mu_raw);

    // mu_n[Q_{Y^n|X^n}(f) >= eta]
    double event_mass = 0.0;
    for (std::size_t x = 0; x < product.input_size(); ++x) {
      double qf = 0.0;
      for (std::size_t y = 0; y < product.output_size(); ++y) qf += product(x, y) * f[y];
      if (qf >= eta) event_mass += mu[x];
    }
    double nu_f = 0.0;
    for (std::size_t y = 0; y < product.output_size(); ++y) nu_f += nu_n[y] * f[y];

    if (event_mass <= 0.0 || nu_f <= 0.0) {
      ++report.skipped;
      continue;
    }
    const double lhs = std::log(event_mass) - c * std::log(nu_f);
    const double d_value =
        bldiv::bl_divergence_dual(mu, product, nu_product, c, 16, stream.next_u64()).value;
    const double bound = d_value + second + constant;
    const double violation = lhs - bound;
    report.max_violation = std::max(report.max_violation, violation);
    if (violation > 1e-9) ++report.violations;
    ++report.trials_run;
  }
  return report;
}

}  // namespace clab::bounds
