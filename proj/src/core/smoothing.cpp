#include "core/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/logspace.hpp"
#include "core/rng.hpp"

namespace clab::smoothing {

SemigroupSpec SemigroupSpec::simple(std::vector<FiniteDistribution> stationary_rows, double t) {
  if (t < 0.0) fail(errc::out_of_range, "semigroup time must be >= 0");
  if (stationary_rows.empty()) fail(errc::dimension_mismatch, "no stationary rows");
  const std::size_t m = stationary_rows[0].alphabet_size();
  for (const auto& r : stationary_rows) {
    if (r.alphabet_size() != m) fail(errc::dimension_mismatch, "stationary rows on mixed alphabets");
  }
  return SemigroupSpec(Mode::simple_tensor, std::move(stationary_rows), t, 1.0);
}

SemigroupSpec SemigroupSpec::simple_iid(const FiniteDistribution& stationary, int n, double t) {
  return simple(std::vector<FiniteDistribution>(static_cast<std::size_t>(n), stationary), t);
}

SemigroupSpec SemigroupSpec::dominating(double alpha, const FiniteDistribution& nu, int n, double t) {
  if (t < 0.0) fail(errc::out_of_range, "semigroup time must be >= 0");
  if (alpha < 1.0) fail(errc::out_of_range, "alpha must be >= 1");
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  return SemigroupSpec(Mode::dominating,
                       std::vector<FiniteDistribution>(static_cast<std::size_t>(n), nu), t, alpha);
}

namespace {

// One tensor-axis pass of g <- e^{-t} g + w (1-e^{-t}) <row, g-fiber>.
void axis_pass(std::vector<double>& values, int n, int axis, int m,
               const FiniteDistribution& row, double decay, double gain) {
  std::size_t inner = 1;
  for (int i = axis + 1; i < n; ++i) inner *= static_cast<std::size_t>(m);
  const std::size_t fiber_stride = inner;
  const std::size_t block = inner * static_cast<std::size_t>(m);
  const std::size_t total = values.size();
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t off = 0; off < inner; ++off) {
      double avg = 0.0;
      for (int s = 0; s < m; ++s) {
        avg += row[static_cast<std::size_t>(s)] *
               values[base + off + static_cast<std::size_t>(s) * fiber_stride];
      }
      const double add = gain * avg;
      for (int s = 0; s < m; ++s) {
        double& v = values[base + off + static_cast<std::size_t>(s) * fiber_stride];
        v = decay * v + add;
      }
    }
  }
}

}  // namespace

std::vector<double> semigroup_apply(const SemigroupSpec& spec, std::vector<double> values) {
  const int n = spec.coordinates();
  const int m = static_cast<int>(spec.row(0).alphabet_size());
  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) expected *= static_cast<std::size_t>(m);
  if (values.size() != expected) {
    fail(errc::dimension_mismatch, "function length does not match the spec's coordinate count");
  }
  const double decay = std::exp(-spec.t());
  const double gain = spec.mode() == SemigroupSpec::Mode::dominating
                          ? spec.alpha() * (1.0 - decay)
                          : (1.0 - decay);
  for (int axis = 0; axis < n; ++axis) {
    axis_pass(values, n, axis, m, spec.row(axis), decay, gain);
  }
  return values;
}

std::vector<double> semigroup_apply(const SemigroupSpec& spec, const TestFunction& f) {
  if (spec.coordinates() != f.n() ||
      spec.row(0).alphabet_size() != static_cast<std::size_t>(f.output_size())) {
    fail(errc::dimension_mismatch, "semigroup spec does not match the test function");
  }
  return semigroup_apply(spec, f.values());
}

TestFunction blowup_set(const TestFunction& indicator, int r) {
  if (r < 0) fail(errc::out_of_range, "blow-up radius must be >= 0");
  if (!indicator.is_indicator()) fail(errc::out_of_range, "blow-up input must be 0/1 valued");

  const int n = indicator.n();
  const int m = indicator.output_size();
  std::vector<std::uint8_t> cur(indicator.size());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = indicator[i] != 0.0 ? 1 : 0;

  // One dilation round: out[y] = OR over axes of the OR of the fiber through
  // y, which covers both y itself and all single-coordinate changes.
  std::vector<std::uint8_t> next(cur.size());
  const int rounds = std::min(r, n);
  for (int round = 0; round < rounds; ++round) {
    std::fill(next.begin(), next.end(), 0);
    std::size_t inner = 1;
    for (int axis = n - 1; axis >= 0; --axis) {
      const std::size_t block = inner * static_cast<std::size_t>(m);
      for (std::size_t base = 0; base < cur.size(); base += block) {
        for (std::size_t off = 0; off < inner; ++off) {
          std::uint8_t any = 0;
          for (int s = 0; s < m; ++s) {
            any |= cur[base + off + static_cast<std::size_t>(s) * inner];
          }
          if (any) {
            for (int s = 0; s < m; ++s) next[base + off + static_cast<std::size_t>(s) * inner] = 1;
          }
        }
      }
      inner = block;
    }
    std::swap(cur, next);
  }

  std::vector<double> out(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) out[i] = cur[i] ? 1.0 : 0.0;
  return TestFunction(std::move(out), n, m);
}

std::vector<double> product_weights(const std::vector<FiniteDistribution>& rows, int output_size) {
  const int n = static_cast<int>(rows.size());
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(output_size);
  std::vector<double> w(size, 1.0);
  std::size_t inner = 1;
  for (int axis = n - 1; axis >= 0; --axis) {
    const std::size_t block = inner * static_cast<std::size_t>(output_size);
    const FiniteDistribution& row = rows[static_cast<std::size_t>(axis)];
    for (std::size_t base = 0; base < size; base += block) {
      for (int s = 0; s < output_size; ++s) {
        const double p = row[static_cast<std::size_t>(s)];
        for (std::size_t off = 0; off < inner; ++off) {
          w[base + static_cast<std::size_t>(s) * inner + off] *= p;
        }
      }
    }
    inner = block;
  }
  return w;
}

namespace {

// ||g||_{L^q(w)} for q in (0,1), computed in log space with g clamped below.
double lq_norm(const std::vector<double>& g, const std::vector<double>& w, double q) {
  double max_term = logspace::neg_inf;
  std::vector<double> terms(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gi = std::max(g[i], 1e-300);
    terms[i] = std::log(w[i]) + q * std::log(gi);
    max_term = std::max(max_term, terms[i]);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - max_term);
  const double log_moment = max_term + std::log(acc);
  return std::exp(log_moment / q);
}

double exp_mean_log(const std::vector<double>& g, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w[i] == 0.0) continue;
    acc += w[i] * std::log(std::max(g[i], 1e-300));
  }
  return std::exp(acc);
}

}  // namespace

RhcReport rhc_check(const TestFunction& f, const std::vector<FiniteDistribution>& stationary,
                    double p, double q, double t) {
  if (!(p > 0.0 && p < 1.0)) fail(errc::out_of_range, "need p in (0,1)");
  if (!(q >= 0.0 && q < p)) fail(errc::out_of_range, "need q in [0,p)");
  if (static_cast<int>(stationary.size()) != f.n()) {
    fail(errc::dimension_mismatch, "stationary laws do not match the function dimension");
  }
  const double t_min = q > 0.0 ? std::log((1.0 - q) / (1.0 - p)) : std::log(1.0 / (1.0 - p));
  if (t < t_min - 1e-12) {
    fail(errc::time_too_small, "t = " + std::to_string(t) + " below the hypercontractive time " +
                                   std::to_string(t_min));
  }
  bool nonzero = false;
  for (double v : f.values()) nonzero = nonzero || v > 0.0;
  if (!nonzero) fail(errc::out_of_range, "f must not be identically zero");

  const std::vector<double> w = product_weights(stationary, f.output_size());
  const std::vector<double> tf =
      semigroup_apply(SemigroupSpec::simple(stationary, t), f);
  const double lhs = q > 0.0 ? lq_norm(tf, w, q) : exp_mean_log(tf, w);
  const double rhs = lq_norm(f.values(), w, p);
  const double margin = lhs - rhs;
  return RhcReport{lhs, rhs, margin, lhs >= rhs - 1e-12 * rhs};
}

McEstimate ou_apply_mc(const std::vector<double>& center,
                       const std::function<double(const std::vector<double>&)>& f,
                       const std::vector<double>& point, double t, long samples,
                       std::uint64_t seed) {
  if (samples < 1) fail(errc::out_of_range, "need samples >= 1");
  if (t < 0.0) fail(errc::out_of_range, "need t >= 0");
  if (center.size() != point.size()) fail(errc::dimension_mismatch, "center/point dimension mismatch");
  const std::size_t n = point.size();
  const double decay = std::exp(-t);
  const double drift = 1.0 - decay;
  const double noise = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * t)));

  rng::Stream stream(seed);
  std::vector<double> z(n);
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = decay * point[i] + drift * center[i] + noise * stream.next_normal();
    }
    const double v = f(z);
    sum += v;
    sum_sq += v * v;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  double var = sum_sq / count - mean * mean;
  if (var < 0.0 || samples == 1) var = 0.0;
  return McEstimate{mean, std::sqrt(var / count)};
}

}  // namespace clab::smoothing
