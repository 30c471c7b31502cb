#include "core/infocalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/logspace.hpp"

namespace clab::infocalc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DivergenceStats divergence_stats(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.alphabet_size() != q.alphabet_size()) fail(errc::dimension_mismatch, "alphabet mismatch");
  double d = 0.0;
  double second_moment = 0.0;
  double alpha = 1.0;
  bool support_violated = false;
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    const double pa = p[a], qa = q[a];
    if (pa == 0.0) continue;
    if (qa == 0.0) {
      support_violated = true;
      continue;
    }
    const double llr = std::log(pa / qa);
    d += pa * llr;
    second_moment += pa * llr * llr;
    alpha = std::max(alpha, pa / qa);
  }
  if (support_violated) return DivergenceStats{kInf, kInf, kInf};
  double v = second_moment - d * d;
  if (v < 0.0) v = 0.0;  // rounding near identical laws
  return DivergenceStats{d, v, alpha};
}

double relative_entropy(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.alphabet_size() != q.alphabet_size()) fail(errc::dimension_mismatch, "alphabet mismatch");
  double d = 0.0;
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    const double term = logspace::xlogx_over(p[a], q[a]);
    if (std::isinf(term)) return kInf;
    d += term;
  }
  return std::max(d, 0.0);
}

double shannon_entropy(const FiniteDistribution& p) {
  double h = 0.0;
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) h -= logspace::xlogx(p[a]);
  return h;
}

double binary_entropy(double eps) {
  if (eps < 0.0 || eps > 1.0) fail(errc::out_of_range, "binary entropy argument outside [0,1]");
  return -logspace::xlogx(eps) - logspace::xlogx(1.0 - eps);
}

double mutual_information(const FiniteChannel& channel, const FiniteDistribution& p_x) {
  const FiniteDistribution p_y = channel.push_forward(p_x);
  double i = 0.0;
  for (std::size_t x = 0; x < channel.input_size(); ++x) {
    if (p_x[x] == 0.0) continue;
    i += p_x[x] * relative_entropy(channel.row(x), p_y);
  }
  return i;
}

namespace {

struct BaOutcome {
  double capacity;
  FiniteDistribution input;
  FiniteDistribution output;
  int iterations;
  bool converged;
};

BaOutcome blahut_arimoto(const FiniteChannel& channel, FiniteDistribution p) {
  const std::size_t nx = channel.input_size();
  constexpr int kMaxIterations = 100000;
  constexpr double kTol = 1e-10;
  double value = mutual_information(channel, p);
  int iter = 0;
  bool converged = false;
  for (; iter < kMaxIterations; ++iter) {
    const FiniteDistribution q = channel.push_forward(p);
    // Exponent of D(W_x || q); log-domain to avoid overflow on deterministic rows.
    std::vector<double> log_weight(nx, -kInf);
    for (std::size_t x = 0; x < nx; ++x) {
      if (p[x] == 0.0) continue;
      log_weight[x] = std::log(p[x]) + relative_entropy(channel.row(x), q);
    }
    const double log_norm = logspace::log_sum(log_weight);
    std::vector<double> next(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      next[x] = log_weight[x] == -kInf ? 0.0 : std::exp(log_weight[x] - log_norm);
    }
    p = FiniteDistribution::validate_and_build(std::move(next));
    const double next_value = mutual_information(channel, p);
    if (std::abs(next_value - value) < kTol) {
      value = next_value;
      converged = true;
      ++iter;
      break;
    }
    value = next_value;
  }
  return BaOutcome{value, p, channel.push_forward(p), iter, converged};
}

double information_density_variance(const FiniteChannel& channel, const FiniteDistribution& p_x,
                                    const FiniteDistribution& p_y) {
  double mean = 0.0, second = 0.0;
  for (std::size_t x = 0; x < channel.input_size(); ++x) {
    if (p_x[x] == 0.0) continue;
    for (std::size_t y = 0; y < channel.output_size(); ++y) {
      const double w = channel(x, y);
      if (w == 0.0) continue;
      const double density = std::log(w / p_y[y]);
      const double mass = p_x[x] * w;
      mean += mass * density;
      second += mass * density * density;
    }
  }
  return std::max(second - mean * mean, 0.0);
}

}  // namespace

CapacityResult mutual_information_and_capacity(const FiniteChannel& channel,
                                               const std::optional<FiniteDistribution>& p_x) {
  BaOutcome best = blahut_arimoto(channel, FiniteDistribution::uniform(channel.input_size()));

  // A couple of skewed restarts to probe uniqueness of the optimal input.
  bool advisory = false;
  for (std::size_t pivot = 0; pivot < std::min<std::size_t>(channel.input_size(), 2); ++pivot) {
    std::vector<double> skew(channel.input_size(),
                             0.5 / static_cast<double>(channel.input_size()));
    skew[pivot] += 0.5;
    BaOutcome alt = blahut_arimoto(channel, FiniteDistribution::validate_and_build(std::move(skew)));
    if (std::abs(alt.capacity - best.capacity) < 1e-7) {
      for (std::size_t x = 0; x < channel.input_size(); ++x) {
        if (std::abs(alt.input[x] - best.input[x]) > 1e-5) advisory = true;
      }
    }
    if (alt.capacity > best.capacity) best = alt;
  }

  const double i_xy = p_x ? mutual_information(channel, *p_x) : best.capacity;
  const double dispersion = information_density_variance(channel, best.input, best.output);
  return CapacityResult{i_xy,          best.capacity, best.output,    best.input,
                        best.iterations, best.converged, dispersion, advisory};
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double gaussian_q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(errc::out_of_range, "quantile argument outside (0,1)");
  // Bisection bracket, then Newton against the complementary error function.
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_q(mid) > p) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  const double inv_sqrt_2pi = 0.3989422804014326779399460599344;
  for (int i = 0; i < 60; ++i) {
    const double err = gaussian_q(x) - p;
    const double density = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (density == 0.0) break;
    const double step = err / density;  // dQ/dx = -density
    x += step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) fail(errc::out_of_range, "invalid incomplete gamma arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // series expansion
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // continued fraction for Q(a,x), Lentz's method
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

double chi_square_cdf(double dof, double x) {
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * dof, 0.5 * x);
}

namespace {

std::vector<LlrAtom> single_letter_atoms(const FiniteDistribution& p, const FiniteDistribution& q,
                                         Weighting weighting) {
  std::vector<LlrAtom> atoms;
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    const double pa = p[a], qa = q[a];
    if (pa == 0.0 && qa == 0.0) continue;  // joint null atoms are dropped
    if (pa == 0.0 || qa == 0.0) {
      fail(errc::support_mismatch, "one-sided zero atom makes the relative information infinite");
    }
    const double mass = weighting == Weighting::under_p ? pa : qa;
    atoms.push_back(LlrAtom{std::log(pa / qa), std::log(mass)});
  }
  return atoms;
}

std::vector<LlrAtom> merge_sorted(std::vector<LlrAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const LlrAtom& a, const LlrAtom& b) { return a.llr < b.llr; });
  std::vector<LlrAtom> merged;
  for (const LlrAtom& a : atoms) {
    if (!merged.empty() && std::abs(a.llr - merged.back().llr) <= 1e-12) {
      merged.back().log_prob = logspace::log_add(merged.back().log_prob, a.log_prob);
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

std::vector<LlrAtom> convolve(const std::vector<LlrAtom>& a, const std::vector<LlrAtom>& b) {
  std::vector<LlrAtom> out;
  out.reserve(a.size() * b.size());
  for (const LlrAtom& x : a) {
    for (const LlrAtom& y : b) {
      out.push_back(LlrAtom{x.llr + y.llr, x.log_prob + y.log_prob});
    }
  }
  return merge_sorted(std::move(out));
}

// Binomial path for binary alphabets: the sum is determined by the count of
// symbol 0, so the support is exact with n + 1 atoms.
std::vector<LlrAtom> binary_atoms(const FiniteDistribution& p, const FiniteDistribution& q,
                                  long n, Weighting weighting) {
  const double l0 = std::log(p[0] / q[0]);
  const double l1 = std::log(p[1] / q[1]);
  const FiniteDistribution& w = weighting == Weighting::under_p ? p : q;
  const double lw0 = std::log(w[0]);
  const double lw1 = std::log(w[1]);
  std::vector<LlrAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(n) + 1);
  const double nd = static_cast<double>(n);
  for (long k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double log_binom = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    atoms.push_back(LlrAtom{kd * l0 + (nd - kd) * l1, log_binom + kd * lw0 + (nd - kd) * lw1});
  }
  return merge_sorted(std::move(atoms));
}

}  // namespace

LlrDistribution LlrDistribution::build(const FiniteDistribution& p, const FiniteDistribution& q,
                                       long n, Weighting weighting) {
  if (p.alphabet_size() != q.alphabet_size()) fail(errc::dimension_mismatch, "alphabet mismatch");
  if (n < 1) fail(errc::out_of_range, "blocklength must be >= 1");

  if (p.alphabet_size() == 2 && p[0] > 0.0 && p[1] > 0.0 && q[0] > 0.0 && q[1] > 0.0) {
    return LlrDistribution(binary_atoms(p, q, n, weighting), n);
  }

  std::vector<LlrAtom> base = merge_sorted(single_letter_atoms(p, q, weighting));
  // n-fold convolution by binary powering.
  std::vector<LlrAtom> result{LlrAtom{0.0, 0.0}};
  std::vector<LlrAtom> power = base;
  long e = n;
  while (e > 0) {
    if (e & 1) result = convolve(result, power);
    e >>= 1;
    if (e > 0) power = convolve(power, power);
  }
  return LlrDistribution(std::move(result), n);
}

double LlrDistribution::total_mass() const {
  std::vector<double> logs;
  logs.reserve(atoms_.size());
  for (const LlrAtom& a : atoms_) logs.push_back(a.log_prob);
  return std::exp(logspace::log_sum(logs));
}

double LlrDistribution::mean() const {
  double m = 0.0;
  for (const LlrAtom& a : atoms_) m += std::exp(a.log_prob) * a.llr;
  return m;
}

double LlrDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (const LlrAtom& a : atoms_) {
    const double centered = a.llr - m;
    v += std::exp(a.log_prob) * centered * centered;
  }
  return v;
}

}  // namespace clab::infocalc
