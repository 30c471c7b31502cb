#include "core/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/logspace.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/smoothing.hpp"

namespace clab::oracles {

NpResult np_frontier(const FiniteDistribution& p, const FiniteDistribution& q, long n,
                     NpConstraint constraint, double value) {
  const double target = constraint == NpConstraint::type1_at_most ? 1.0 - value : value;
  if (!(target > 0.0 && target <= 1.0)) {
    fail(errc::out_of_range, "required P-mass outside (0,1]");
  }
  const auto under_p = infocalc::LlrDistribution::build(p, q, n, infocalc::Weighting::under_p);
  const auto under_q = infocalc::LlrDistribution::build(p, q, n, infocalc::Weighting::under_q);
  const auto& atoms_p = under_p.atoms();
  const auto& atoms_q = under_q.atoms();

  // Sweep from the largest llr down; the optimal randomized test fills whole
  // atoms until the target P-mass, then mixes on the boundary atom.
  double p_acc = 0.0;
  double log_q_acc = logspace::neg_inf;
  NpResult result{};
  for (std::size_t i = atoms_p.size(); i-- > 0;) {
    const double p_atom = std::exp(atoms_p[i].log_prob);
    if (p_acc + p_atom >= target - 1e-15) {
      const double need = std::max(target - p_acc, 0.0);
      const double w = p_atom > 0.0 ? std::min(need / p_atom, 1.0) : 0.0;
      double log_q = log_q_acc;
      if (w > 0.0) {
        log_q = logspace::log_add(log_q, std::log(w) + atoms_q[i].log_prob);
      }
      result.log_q_mass = log_q;
      result.q_mass = std::exp(log_q);
      result.threshold = atoms_p[i].llr;
      result.randomization_weight = w;
      result.p_mass = p_acc + w * p_atom;
      return result;
    }
    p_acc += p_atom;
    log_q_acc = logspace::log_add(log_q_acc, atoms_q[i].log_prob);
  }
  // The full space is needed (target ~ 1 within rounding).
  result.log_q_mass = 0.0;
  result.q_mass = 1.0;
  result.threshold = atoms_p.front().llr;
  result.randomization_weight = 1.0;
  result.p_mass = p_acc;
  return result;
}

namespace {

struct CubeLaw {
  // P(x_i = 1) per coordinate
  std::vector<double> biases;

  double point_prob(std::uint32_t point, int n) const {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool one = (point >> i) & 1u;
      prob *= one ? biases[static_cast<std::size_t>(i)] : 1.0 - biases[static_cast<std::size_t>(i)];
    }
    return prob;
  }
};

}  // namespace

BlowupCertification blowup_certification(int n, long trials, const std::vector<double>& c_values,
                                         std::uint64_t seed) {
  if (n < 1 || n > 16) fail(errc::out_of_range, "exhaustive certification needs 1 <= n <= 16");
  if (trials < 1) fail(errc::out_of_range, "need trials >= 1");
  const std::size_t size = std::size_t{1} << n;

  struct TrialOutcome {
    int violations = 0;
    int counting_violations = 0;
    double worst_margin = 1e300;
  };
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

  par::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
    rng::Stream stream = rng::Stream(seed, 0xb10c).split(trial);
    TrialOutcome& out = outcomes[trial];

    CubeLaw law;
    law.biases.resize(static_cast<std::size_t>(n));
    for (double& b : law.biases) b = 0.2 + 0.6 * stream.next_unit();

    // random nonempty set: each point kept with a random density
    std::vector<double> indicator(size, 0.0);
    const double density = stream.next_unit_positive();
    bool nonempty = false;
    for (std::size_t i = 0; i < size; ++i) {
      if (stream.next_unit() < density) {
        indicator[i] = 1.0;
        nonempty = true;
      }
    }
    if (!nonempty) indicator[stream.next_below(size)] = 1.0;

    std::vector<double> weights(size);
    for (std::size_t i = 0; i < size; ++i) {
      weights[i] = law.point_prob(static_cast<std::uint32_t>(i), n);
    }
    double p_a = 0.0;
    double set_size = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      p_a += weights[i] * indicator[i];
      set_size += indicator[i];
    }

    measures::TestFunction f(indicator, n, 2);
    for (double c : c_values) {
      if (p_a >= 1.0) break;
      const auto numbers = bounds::blowup_lemma_numbers(p_a, c, static_cast<double>(n), 1.0);
      const int r = static_cast<int>(std::ceil(numbers.radius - 1e-12));
      const auto blown = smoothing::blowup_set(f, r);
      double p_ar = 0.0;
      for (std::size_t i = 0; i < size; ++i) p_ar += weights[i] * blown[i];
      const double guarantee = 1.0 - std::exp(-c * c);
      const double margin = p_ar - guarantee;
      out.worst_margin = std::min(out.worst_margin, margin);
      if (margin < -1e-12) ++out.violations;

      // counting sandwich with K = |Y| / min_{i,a} P_i(a); r <= n required
      const int r_capped = std::min(r, n);
      if (r_capped >= 1) {
        double min_atom = 1.0;
        for (double b : law.biases) min_atom = std::min({min_atom, b, 1.0 - b});
        const double k_ratio = 2.0 / min_atom;
        const auto capped = r_capped == r ? blown : smoothing::blowup_set(f, r_capped);
        double p_capped = 0.0;
        for (std::size_t i = 0; i < size; ++i) p_capped += weights[i] * capped[i];
        const double ratio = std::log(p_a / p_capped);
        const double rd = static_cast<double>(r_capped);
        const double lower = rd * std::log(rd / (static_cast<double>(n) * std::exp(1.0) * k_ratio));
        if (ratio < lower - 1e-12 || ratio > 1e-12) ++out.counting_violations;
      }
    }
  });

  BlowupCertification cert;
  cert.trials = trials;
  for (const auto& out : outcomes) {
    cert.violations += out.violations;
    cert.counting_violations += out.counting_violations;
    cert.worst_margin = std::min(cert.worst_margin, out.worst_margin);
  }
  return cert;
}

std::vector<DpImpossibilityRow> dp_impossibility_experiment(const FiniteDistribution& p,
                                                            const FiniteDistribution& q,
                                                            double delta,
                                                            const std::vector<long>& n_list) {
  if (!(delta > 0.0)) fail(errc::out_of_range, "need delta > 0");
  const auto stats = infocalc::divergence_stats(p, q);
  if (std::isinf(stats.alpha)) fail(errc::support_mismatch, "need bounded log density ratio");
  // the reverse direction must also be bounded for ||ln dP/dQ||_inf < inf
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    if ((p[a] == 0.0) != (q[a] == 0.0)) {
      fail(errc::support_mismatch, "need identical supports");
    }
  }

  std::vector<DpImpossibilityRow> rows(n_list.size());
  par::parallel_for(n_list.size(), [&](std::size_t i) {
    const long n = n_list[i];
    const double target = 1.0 - std::pow(static_cast<double>(n), -delta);
    const auto np = np_frontier(p, q, n, NpConstraint::p_mass_at_least, target);
    const double n_d = static_cast<double>(n) * stats.d;
    const double norm = std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
    rows[i] = DpImpossibilityRow{n, np.log_q_mass, n_d,
                                 norm > 0.0 ? (np.log_q_mass + n_d) / norm : 0.0};
  });
  return rows;
}

namespace {

McEstimate mc_mean(long samples, std::uint64_t seed, std::uint64_t stream_tag,
                   double (*draw)(rng::Stream&, const double*, int), const double* args, int n) {
  if (samples < 1000) fail(errc::out_of_range, "need samples >= 1e3");
  constexpr long kChunk = 1L << 14;
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<double> sums(chunks, 0.0), sq_sums(chunks, 0.0);
  par::parallel_for(chunks, [&](std::size_t chunk) {
    rng::Stream stream = rng::Stream(seed, stream_tag).split(chunk);
    const long lo = static_cast<long>(chunk) * kChunk;
    const long hi = std::min(samples, lo + kChunk);
    double s = 0.0, s2 = 0.0;
    for (long i = lo; i < hi; ++i) {
      const double v = draw(stream, args, n);
      s += v;
      s2 += v * v;
    }
    sums[chunk] = s;
    sq_sums[chunk] = s2;
  });
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < chunks; ++i) {
    s += sums[i];
    s2 += sq_sums[i];
  }
  const double count = static_cast<double>(samples);
  const double mean = s / count;
  const double var = std::max(s2 / count - mean * mean, 0.0);
  return McEstimate{mean, std::sqrt(var / count)};
}

double draw_antipodal_error(rng::Stream& stream, const double* args, int n) {
  const double a = args[0];
  // ML decoding of +-a 1^n reduces to the sign of <y, 1>; an error occurs
  // when the noise along the diagonal direction exceeds a sqrt(n).
  double dot = 0.0;
  for (int i = 0; i < n; ++i) dot += a + stream.next_normal();
  return dot < 0.0 ? 1.0 : 0.0;
}

double draw_distortion(rng::Stream& stream, const double* args, int n) {
  const double threshold = args[0];
  double norm_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = stream.next_normal();
    norm_sq += g * g;
  }
  return norm_sq <= threshold ? 1.0 : 0.0;
}

double draw_chi_tail(rng::Stream& stream, const double* args, int n) {
  const double threshold = args[0];
  double value = 0.0;
  int remaining = n;
  if (remaining % 2 == 1) {
    const double g = stream.next_normal();
    value += g * g;
    --remaining;
  }
  for (int i = 0; i < remaining / 2; ++i) value += -2.0 * std::log(stream.next_unit_positive());
  return std::abs(value - static_cast<double>(n)) >= threshold ? 1.0 : 0.0;
}

}  // namespace

McEstimate mc_antipodal_code_error(double amplitude, int n, long samples, std::uint64_t seed) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  const double args[1] = {amplitude};
  return mc_mean(samples, seed, 0xa271, draw_antipodal_error, args, n);
}

McEstimate mc_distortion_trivial_scheme(double distortion, int n, long samples,
                                        std::uint64_t seed) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  if (!(distortion > 0.0)) fail(errc::out_of_range, "need D > 0");
  const double args[1] = {static_cast<double>(n) * distortion};
  return mc_mean(samples, seed, 0xd157, draw_distortion, args, n);
}

McEstimate mc_chi_square_two_sided_tail(long n, double threshold, long samples,
                                        std::uint64_t seed) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  const double args[1] = {threshold};
  return mc_mean(samples, seed, 0xc215, draw_chi_tail, args, static_cast<int>(n));
}

}  // namespace clab::oracles
