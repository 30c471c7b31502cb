#include "core/bldiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/logspace.hpp"
#include "core/rng.hpp"

namespace clab::bldiv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightedMeasure WeightedMeasure::make(std::vector<double> weights) {
  if (weights.empty()) fail(errc::degenerate, "empty measure");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) fail(errc::negative_mass, "negative weight");
    total += w;
  }
  if (total <= 0.0) fail(errc::degenerate, "measure with empty support");
  if (total > 1.0 + 1e-9) fail(errc::out_of_range, "total mass exceeds 1");
  return WeightedMeasure(std::move(weights));
}

WeightedMeasure WeightedMeasure::from_distribution(const FiniteDistribution& d, double mass) {
  if (mass <= 0.0 || mass > 1.0 + 1e-9) fail(errc::out_of_range, "mass must lie in (0,1]");
  std::vector<double> w(d.probs());
  for (double& x : w) x *= mass;
  return WeightedMeasure(std::move(w));
}

double WeightedMeasure::total() const {
  double t = 0.0;
  for (double w : weights_) t += w;
  return t;
}

FiniteDistribution WeightedMeasure::normalized() const {
  std::vector<double> w(weights_);
  const double t = total();
  for (double& x : w) x /= t;
  return FiniteDistribution::validate_and_build(std::move(w));
}

double bl_primal_objective(const WeightedMeasure& mu, const FiniteChannel& channel,
                           const FiniteDistribution& nu, double c,
                           const FiniteDistribution& p_x) {
  if (mu.size() != channel.input_size() || nu.alphabet_size() != channel.output_size() ||
      p_x.alphabet_size() != channel.input_size()) {
    fail(errc::dimension_mismatch, "objective inputs do not match the channel");
  }
  double d_x = 0.0;
  for (std::size_t x = 0; x < p_x.alphabet_size(); ++x) {
    const double term = logspace::xlogx_over(p_x[x], mu[x]);
    if (std::isinf(term)) return -kInf;  // P_X not absolutely continuous w.r.t. mu
    d_x += term;
  }
  const FiniteDistribution p_y = channel.push_forward(p_x);
  double d_y = 0.0;
  for (std::size_t y = 0; y < p_y.alphabet_size(); ++y) {
    const double term = logspace::xlogx_over(p_y[y], nu[y]);
    if (std::isinf(term)) return kInf;
    d_y += term;
  }
  return c * d_y - d_x;
}

namespace {

struct DualIterate {
  double value;
  FiniteDistribution p_x;
  int iterations;
  bool converged;
};

DualIterate dual_fixed_point(const WeightedMeasure& mu, const FiniteChannel& channel,
                             const FiniteDistribution& nu, double c, FiniteDistribution p_x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kTol = 1e-11;
  const std::size_t nx = channel.input_size();
  const std::size_t ny = channel.output_size();

  double value = bl_primal_objective(mu, channel, nu, c, p_x);
  int iter = 0;
  bool converged = false;
  for (; iter < kMaxIterations; ++iter) {
    const FiniteDistribution p_y = channel.push_forward(p_x);
    // ln f with f = dP_Y / dnu
    std::vector<double> log_f(ny, -kInf);
    for (std::size_t y = 0; y < ny; ++y) {
      if (p_y[y] > 0.0) {
        if (nu[y] == 0.0) return DualIterate{kInf, p_x, iter, true};
        log_f[y] = std::log(p_y[y] / nu[y]);
      }
    }
    std::vector<double> score(nx, -kInf);
    for (std::size_t x = 0; x < nx; ++x) {
      if (mu[x] == 0.0) continue;
      double s = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double w = channel(x, y);
        if (w == 0.0) continue;
        if (log_f[y] == -kInf) { s = -kInf; break; }
        s += w * log_f[y];
      }
      if (s != -kInf) score[x] = std::log(mu[x]) + c * s;
    }
    const double log_z = logspace::log_sum(score);
    if (log_z == -kInf) break;  // no admissible atom; keep the current iterate
    std::vector<double> next(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
      next[x] = score[x] == -kInf ? 0.0 : std::exp(score[x] - log_z);
    }
    p_x = FiniteDistribution::validate_and_build(std::move(next));
    const double next_value = bl_primal_objective(mu, channel, nu, c, p_x);
    if (std::abs(next_value - value) < kTol) {
      value = std::max(value, next_value);
      converged = true;
      ++iter;
      break;
    }
    value = next_value;
  }
  return DualIterate{value, p_x, iter, converged};
}

FiniteDistribution random_start(const WeightedMeasure& mu, rng::Stream& stream) {
  std::vector<double> p(mu.size(), 0.0);
  double total = 0.0;
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu[x] > 0.0) {
      p[x] = -std::log(stream.next_unit_positive());
      total += p[x];
    }
  }
  for (double& v : p) v /= total;
  return FiniteDistribution::validate_and_build(std::move(p));
}

}  // namespace

BlResult bl_divergence_dual(const WeightedMeasure& mu, const FiniteChannel& channel,
                            const FiniteDistribution& nu, double c, int restarts,
                            std::uint64_t seed) {
  if (!(c > 0.0)) fail(errc::out_of_range, "need c > 0");
  DualIterate best = dual_fixed_point(mu, channel, nu, c, mu.normalized());
  rng::Stream stream(seed, 0xb1d1);
  for (int r = 0; r < restarts; ++r) {
    DualIterate cand = dual_fixed_point(mu, channel, nu, c, random_start(mu, stream));
    if (cand.value > best.value) best = cand;
  }
  BlResult result;
  result.value = best.value;
  result.decomposition = {{1.0, best.p_x}};
  result.iterations = best.iterations;
  result.converged = best.converged;
  return result;
}

double bl_divergence_primal_oracle(const WeightedMeasure& mu, const FiniteChannel& channel,
                                   const FiniteDistribution& nu, double c,
                                   int grid_resolution) {
  const std::size_t nx = channel.input_size();
  if (nx > 3) fail(errc::alphabet_too_large, "grid oracle only runs for |X| <= 3");
  if (grid_resolution < 2) fail(errc::grid_too_coarse, "need at least 2 grid points per dimension");
  const int g = grid_resolution;
  double best = -kInf;
  if (nx == 1) {
    return bl_primal_objective(mu, channel, nu, c, FiniteDistribution::point_mass(0, 1));
  }
  if (nx == 2) {
    for (int i = 0; i <= g; ++i) {
      const double p1 = static_cast<double>(i) / g;
      best = std::max(best, bl_primal_objective(
                                mu, channel, nu, c,
                                FiniteDistribution::validate_and_build({1.0 - p1, p1})));
    }
    return best;
  }
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g - i; ++j) {
      const double p1 = static_cast<double>(i) / g;
      const double p2 = static_cast<double>(j) / g;
      best = std::max(best, bl_primal_objective(
                                mu, channel, nu, c,
                                FiniteDistribution::validate_and_build({1.0 - p1 - p2, p1, p2})));
    }
  }
  return best;
}

namespace {

// Pointwise functions on binary input laws P_p = (1-p, p).
struct BinaryCurves {
  std::vector<double> grid;   // p values
  std::vector<double> psi;    // c D(P_Y||nu) - D(P||Q_X)
  std::vector<double> i_x;    // D(P || Q_X)
  std::vector<double> i_y;    // D(P_Y || Q_Y)
  std::vector<double> h_y;    // H(P_Y)
};

constexpr int kEnvelopeGridPoints = 100001;

BinaryCurves binary_curves(const FiniteDistribution& q_x, const FiniteChannel& channel,
                           const FiniteDistribution& nu, double c) {
  BinaryCurves curves;
  const FiniteDistribution q_y = channel.push_forward(q_x);
  curves.grid.reserve(kEnvelopeGridPoints);
  const int g = kEnvelopeGridPoints - 1;
  for (int i = 0; i <= g; ++i) {
    const double p = static_cast<double>(i) / g;
    const FiniteDistribution p_x = FiniteDistribution::validate_and_build({1.0 - p, p});
    const FiniteDistribution p_y = channel.push_forward(p_x);
    curves.grid.push_back(p);
    curves.i_x.push_back(infocalc::relative_entropy(p_x, q_x));
    curves.i_y.push_back(infocalc::relative_entropy(p_y, q_y));
    curves.h_y.push_back(infocalc::shannon_entropy(p_y));
    curves.psi.push_back(c * infocalc::relative_entropy(p_y, nu) - curves.i_x.back());
  }
  return curves;
}

struct HullPoint {
  double x;
  double y;
  std::size_t index;
};

double cross(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Upper concave hull by monotone chain over (x, y) pairs sorted in x.
// Non-finite values are skipped.
std::vector<HullPoint> upper_hull(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<HullPoint> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isfinite(ys[i])) pts.push_back(HullPoint{xs[i], ys[i], i});
  }
  if (pts.size() < 2) return pts;
  std::vector<HullPoint> hull;
  for (const HullPoint& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

struct EnvelopeAt {
  double value;
  // Bracketing hull vertices and their mixture weights.
  std::size_t left_index, right_index;
  double left_weight;
};

EnvelopeAt envelope_value_at(const std::vector<HullPoint>& hull, double x) {
  if (hull.empty()) fail(errc::degenerate, "empty hull");
  if (hull.size() == 1 || x <= hull.front().x) {
    return EnvelopeAt{hull.front().y, hull.front().index, hull.front().index, 1.0};
  }
  if (x >= hull.back().x) {
    return EnvelopeAt{hull.back().y, hull.back().index, hull.back().index, 1.0};
  }
  std::size_t lo = 0, hi = hull.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (hull[mid].x <= x) lo = mid; else hi = mid;
  }
  const HullPoint& a = hull[lo];
  const HullPoint& b = hull[hi];
  if (b.x == a.x) return EnvelopeAt{std::max(a.y, b.y), a.index, b.index, 1.0};
  const double w = (b.x - x) / (b.x - a.x);
  return EnvelopeAt{w * a.y + (1.0 - w) * b.y, a.index, b.index, w};
}

std::vector<std::pair<double, FiniteDistribution>> decomposition_from(
    const BinaryCurves& curves, const EnvelopeAt& at) {
  std::vector<std::pair<double, FiniteDistribution>> decomposition;
  const double pl = curves.grid[at.left_index];
  if (at.left_index == at.right_index || at.left_weight >= 1.0 - 1e-15) {
    decomposition.emplace_back(1.0, FiniteDistribution::validate_and_build({1.0 - pl, pl}));
    return decomposition;
  }
  const double pr = curves.grid[at.right_index];
  decomposition.emplace_back(at.left_weight,
                             FiniteDistribution::validate_and_build({1.0 - pl, pl}));
  decomposition.emplace_back(1.0 - at.left_weight,
                             FiniteDistribution::validate_and_build({1.0 - pr, pr}));
  return decomposition;
}

// Golden-section minimizer for a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iterations = 120) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && (b - a) > 1e-13; ++i) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Random-restart search over decompositions of Q_X into at most |X|+1
// components, maximizing sum_u w_u score(P_u). The joint mass matrix keeps
// column sums pinned at Q_X, so every iterate is feasible.
template <typename Score>
BlResult decomposition_search(const FiniteDistribution& q_x, Score&& score, int components,
                              int restarts, int steps, std::uint64_t seed) {
  const std::size_t nx = q_x.alphabet_size();
  const std::size_t k = static_cast<std::size_t>(components);
  rng::Stream stream(seed, 0xdec0);

  auto evaluate = [&](const std::vector<std::vector<double>>& joint, double& out) {
    out = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
      double w = 0.0;
      for (std::size_t x = 0; x < nx; ++x) w += joint[u][x];
      if (w <= 1e-14) continue;
      std::vector<double> comp(nx);
      for (std::size_t x = 0; x < nx; ++x) comp[x] = joint[u][x] / w;
      out += w * score(FiniteDistribution::validate_and_build(std::move(comp)));
    }
  };

  double best_value = score(q_x);
  std::vector<std::vector<double>> best_joint(1, q_x.probs());

  for (int r = 0; r < restarts; ++r) {
    // random column splits
    std::vector<std::vector<double>> joint(k, std::vector<double>(nx, 0.0));
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<double> cut(k);
      double tot = 0.0;
      for (std::size_t u = 0; u < k; ++u) {
        cut[u] = -std::log(stream.next_unit_positive());
        tot += cut[u];
      }
      for (std::size_t u = 0; u < k; ++u) joint[u][x] = q_x[x] * cut[u] / tot;
    }
    double value;
    evaluate(joint, value);
    double step = 0.25;
    for (int it = 0; it < steps; ++it) {
      const std::size_t x = stream.next_below(nx);
      const std::size_t u = stream.next_below(k);
      std::size_t v = stream.next_below(k - 1);
      if (v >= u) ++v;
      const double move = step * q_x[x] * stream.next_unit();
      if (joint[v][x] < move) { step *= 0.995; continue; }
      joint[v][x] -= move;
      joint[u][x] += move;
      double cand;
      evaluate(joint, cand);
      if (cand > value) {
        value = cand;
      } else {
        joint[u][x] -= move;
        joint[v][x] += move;
        step *= 0.995;
      }
    }
    if (value > best_value) {
      best_value = value;
      best_joint = joint;
    }
  }

  BlResult result;
  result.value = best_value;
  result.lower_bound_only = true;
  result.converged = true;
  for (const auto& row : best_joint) {
    double w = 0.0;
    for (double m : row) w += m;
    if (w <= 1e-12) continue;
    std::vector<double> comp(row);
    for (double& m : comp) m /= w;
    result.decomposition.emplace_back(w, FiniteDistribution::validate_and_build(std::move(comp)));
  }
  return result;
}

}  // namespace

BlResult dstar_envelope(const FiniteDistribution& q_x, const FiniteChannel& channel,
                        const FiniteDistribution& nu, double c, const EnvelopeMode& mode,
                        std::uint64_t seed) {
  if (q_x.alphabet_size() != channel.input_size()) {
    fail(errc::dimension_mismatch, "input law does not match the channel");
  }
  if (mode.kind == EnvelopeMode::Kind::dstar && !(c > 0.0)) fail(errc::out_of_range, "need c > 0");
  if (mode.kind != EnvelopeMode::Kind::dstar && mode.rate < 0.0) {
    fail(errc::out_of_range, "rate constraint must be >= 0");
  }

  const std::size_t nx = q_x.alphabet_size();
  if (nx != 2) {
    // Search fallback; tagged lower-bound-only.
    const int components = static_cast<int>(nx) + 1;
    const FiniteDistribution q_y = channel.push_forward(q_x);
    switch (mode.kind) {
      case EnvelopeMode::Kind::dstar: {
        auto psi = [&](const FiniteDistribution& p) {
          return c * infocalc::relative_entropy(channel.push_forward(p), nu) -
                 infocalc::relative_entropy(p, q_x);
        };
        return decomposition_search(q_x, psi, components, 200, 400, seed);
      }
      case EnvelopeMode::Kind::theta_of_r: {
        // inf over the multiplier of the Lagrangian envelope; each inner value
        // is itself search-based, so the result is a (flagged) estimate.
        auto env = [&](double lambda) {
          auto g = [&](const FiniteDistribution& p) {
            return infocalc::relative_entropy(channel.push_forward(p), q_y) -
                   lambda * infocalc::relative_entropy(p, q_x);
          };
          return decomposition_search(q_x, g, components, 24, 200, seed).value;
        };
        auto [lambda, value] =
            golden_min([&](double l) { return env(l) + l * mode.rate; }, 0.0, 1.0, 24);
        (void)lambda;
        BlResult result;
        result.value = value;
        result.lower_bound_only = true;
        result.decomposition = {{1.0, q_x}};
        return result;
      }
      case EnvelopeMode::Kind::cond_entropy_of_r: {
        auto env = [&](double lambda) {
          auto g = [&](const FiniteDistribution& p) {
            // minimize H(Y|U) + lambda I(U;X): search maximizes, so negate
            return -(infocalc::shannon_entropy(channel.push_forward(p)) +
                     lambda * infocalc::relative_entropy(p, q_x));
          };
          return -decomposition_search(q_x, g, components, 24, 200, seed).value;
        };
        auto [lambda, neg_value] =
            golden_min([&](double l) { return -(env(l) - l * mode.rate); }, 0.0, 1.0, 24);
        (void)lambda;
        BlResult result;
        result.value = -neg_value;
        result.lower_bound_only = true;
        result.decomposition = {{1.0, q_x}};
        return result;
      }
    }
  }

  const BinaryCurves curves = binary_curves(q_x, channel, nu, c);
  const double q = q_x[1];

  auto finish = [&](const EnvelopeAt& at, double value) {
    BlResult result;
    result.value = value;
    result.decomposition = decomposition_from(curves, at);
    result.converged = true;
    return result;
  };

  switch (mode.kind) {
    case EnvelopeMode::Kind::dstar: {
      const auto hull = upper_hull(curves.grid, curves.psi);
      const EnvelopeAt at = envelope_value_at(hull, q);
      return finish(at, at.value);
    }
    case EnvelopeMode::Kind::theta_of_r: {
      // theta(R) = inf_{lambda in [0,1]} { env_{I_Y - lambda I_X}(q) + lambda R };
      // the multiplier never exceeds 1 because theta(R) <= R.
      std::vector<double> vals(curves.grid.size());
      auto g = [&](double lambda) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
          vals[i] = curves.i_y[i] - lambda * curves.i_x[i];
        }
        const auto hull = upper_hull(curves.grid, vals);
        return envelope_value_at(hull, q).value + lambda * mode.rate;
      };
      auto [lambda_star, value] = golden_min(g, 0.0, 1.0);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = curves.i_y[i] - lambda_star * curves.i_x[i];
      }
      const auto hull = upper_hull(curves.grid, vals);
      return finish(envelope_value_at(hull, q), value);
    }
    case EnvelopeMode::Kind::cond_entropy_of_r: {
      // inf H(Y|U) = sup_{lambda in [0,1]} { lower-env_{H_Y + lambda I_X}(q) - lambda R }
      std::vector<double> vals(curves.grid.size());
      auto g = [&](double lambda) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
          vals[i] = -(curves.h_y[i] + lambda * curves.i_x[i]);
        }
        const auto hull = upper_hull(curves.grid, vals);
        return -(-envelope_value_at(hull, q).value - lambda * mode.rate);
      };
      auto [lambda_star, neg_value] = golden_min(g, 0.0, 1.0);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = -(curves.h_y[i] + lambda_star * curves.i_x[i]);
      }
      const auto hull = upper_hull(curves.grid, vals);
      return finish(envelope_value_at(hull, q), -neg_value);
    }
  }
  fail(errc::internal, "unhandled envelope mode");
}

GaussianSideInfo gaussian_dstar_sideinfo(double rho, double D, double c) {
  if (!(std::abs(rho) < 1.0)) fail(errc::out_of_range, "|rho| must be < 1");
  if (!(D > 0.0)) fail(errc::out_of_range, "distortion must be positive");
  if (!(c > 0.0)) fail(errc::out_of_range, "need c > 0");
  const double rho_sq = rho * rho;
  double s_star = 1.0;
  if (c > 1.0 && rho_sq > 0.0) {
    s_star = std::clamp((1.0 - rho_sq) / (rho_sq * (c - 1.0)), 0.0, 1.0);
  }
  auto objective = [&](double s) {
    return 0.5 * std::log(s) - 0.5 * c * std::log((1.0 - rho_sq + rho_sq * s) / D);
  };
  double value = objective(std::max(s_star, 1e-300));
  const double at_one = objective(1.0);
  if (at_one > value) {
    value = at_one;
    s_star = 1.0;
  }
  return GaussianSideInfo{value, s_star};
}

double gaussian_vartheta(double rho, double D, double x) {
  if (x < 0.0) return kInf;
  const double rho_sq = rho * rho;
  return std::log((1.0 - rho_sq + rho_sq * std::exp(-x)) / D);
}

double gaussian_sideinfo_first_order_conjugate(double rho, double D, double ln_m1, long n) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  const double nd = static_cast<double>(n);
  auto g = [&](double log_c) {
    const double c = std::exp(log_c);
    return (nd * gaussian_dstar_sideinfo(rho, D, c).value + ln_m1) / c;
  };
  // Bracket grows with the constraint exponent; the optimal multiplier is
  // 1 + (1 - rho^2) e^{x*} / rho^2 for x* = 2 ln M1 / n.
  const double rho_sq = rho * rho;
  double c_hi = 64.0;
  if (rho_sq > 1e-12) {
    c_hi = std::max(c_hi, 8.0 * (1.0 + (1.0 - rho_sq) * std::exp(2.0 * ln_m1 / nd) / rho_sq));
  } else {
    c_hi = 1e9;  // the infimum recedes to c -> infinity as rho -> 0
  }
  auto [log_c_star, min_value] = golden_min(g, 0.0, std::log(c_hi), 200);
  (void)log_c_star;
  return -min_value;
}

bool TypicalSet::contains(const std::vector<int>& xn) const {
  if (!discrete) fail(errc::dimension_mismatch, "gaussian set queried with symbols");
  if (xn.size() != static_cast<std::size_t>(n)) fail(errc::dimension_mismatch, "length mismatch");
  std::vector<long> counts(q_x.alphabet_size(), 0);
  for (int s : xn) {
    if (s < 0 || static_cast<std::size_t>(s) >= counts.size()) {
      fail(errc::symbol_out_of_range, "symbol outside the alphabet");
    }
    ++counts[static_cast<std::size_t>(s)];
  }
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (static_cast<double>(counts[a]) > count_caps[a] + 1e-9) return false;
  }
  return true;
}

bool TypicalSet::contains(const std::vector<double>& xn) const {
  if (discrete) fail(errc::dimension_mismatch, "discrete set queried with reals");
  if (xn.size() != static_cast<std::size_t>(n)) fail(errc::dimension_mismatch, "length mismatch");
  double norm_sq = 0.0;
  for (double x : xn) norm_sq += x * x;
  norm_sq /= sigma * sigma;
  const double nd = static_cast<double>(n);
  const double half_width = shell_a * std::sqrt(nd);
  return norm_sq >= nd - half_width && norm_sq <= nd + half_width;
}

TypicalSet typical_set_discrete(const FiniteDistribution& q_x, double delta, long n,
                                MassMethod method, long samples, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
  const double beta = 1.0 / q_x.min_prob();
  const double size = static_cast<double>(q_x.alphabet_size());
  if (static_cast<double>(n) <= 3.0 * beta * std::log(size / delta)) {
    fail(errc::precondition_violated,
         "need n > 3 beta_X ln(|X|/delta) = " + std::to_string(3.0 * beta * std::log(size / delta)));
  }
  TypicalSet set;
  set.discrete = true;
  set.delta = delta;
  set.n = n;
  set.q_x = q_x;
  set.eps_n = std::sqrt(3.0 * beta / static_cast<double>(n) * std::log(size / delta));
  set.count_caps.resize(q_x.alphabet_size());
  for (std::size_t a = 0; a < q_x.alphabet_size(); ++a) {
    set.count_caps[a] = (1.0 + set.eps_n) * static_cast<double>(n) * q_x[a];
  }

  if (method == MassMethod::exact) {
    const auto types = measures::enumerate_types(static_cast<int>(n),
                                                 static_cast<int>(q_x.alphabet_size()));
    std::vector<double> log_masses;
    for (const auto& type : types) {
      bool inside = true;
      for (std::size_t a = 0; a < type.counts.size(); ++a) {
        if (static_cast<double>(type.counts[a]) > set.count_caps[a] + 1e-9) inside = false;
      }
      if (!inside) continue;
      double log_mass = type.log_coefficient;
      for (std::size_t a = 0; a < type.counts.size(); ++a) {
        if (type.counts[a] == 0) continue;
        if (q_x[a] == 0.0) { log_mass = -kInf; break; }
        log_mass += static_cast<double>(type.counts[a]) * std::log(q_x[a]);
      }
      log_masses.push_back(log_mass);
    }
    set.mass = std::exp(logspace::log_sum(log_masses));
    set.mass_std_error = 0.0;
  } else {
    if (samples < 1) fail(errc::out_of_range, "monte carlo mass needs samples >= 1");
    rng::Stream stream(seed, 0x791ca1);
    long hits = 0;
    std::vector<long> counts(q_x.alphabet_size());
    for (long s = 0; s < samples; ++s) {
      std::fill(counts.begin(), counts.end(), 0L);
      for (long i = 0; i < n; ++i) {
        double u = stream.next_unit();
        std::size_t a = 0;
        while (a + 1 < q_x.alphabet_size() && u >= q_x[a]) { u -= q_x[a]; ++a; }
        ++counts[a];
      }
      bool inside = true;
      for (std::size_t a = 0; a < counts.size(); ++a) {
        if (static_cast<double>(counts[a]) > set.count_caps[a] + 1e-9) inside = false;
      }
      if (inside) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(samples);
    set.mass = phat;
    set.mass_std_error = std::sqrt(std::max(phat * (1.0 - phat), 0.0) / static_cast<double>(samples));
  }
  if (set.mass < 1.0 - delta - 3.0 * set.mass_std_error - 1e-12) {
    fail(errc::internal, "typical set mass fell below 1 - delta; theorem violated");
  }
  return set;
}

namespace {

double chi_square_sample(rng::Stream& stream, long dof) {
  double value = 0.0;
  long remaining = dof;
  if (remaining % 2 == 1) {
    const double g = stream.next_normal();
    value += g * g;
    --remaining;
  }
  for (long i = 0; i < remaining / 2; ++i) {
    value += -2.0 * std::log(stream.next_unit_positive());
  }
  return value;
}

}  // namespace

TypicalSet typical_set_gaussian(double sigma, double delta, long n, MassMethod method,
                                long samples, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
  if (!(sigma > 0.0)) fail(errc::out_of_range, "sigma must be positive");
  if (static_cast<double>(n) < 20.0 * std::log(2.0 / delta)) {
    fail(errc::precondition_violated,
         "need n >= 20 ln(2/delta) = " + std::to_string(20.0 * std::log(2.0 / delta)));
  }
  TypicalSet set;
  set.discrete = false;
  set.delta = delta;
  set.n = n;
  set.sigma = sigma;
  set.shell_a = std::sqrt(6.0 * std::log(2.0 / delta));
  const double nd = static_cast<double>(n);
  const double half_width = set.shell_a * std::sqrt(nd);
  if (method == MassMethod::exact) {
    set.mass = infocalc::chi_square_cdf(nd, nd + half_width) -
               infocalc::chi_square_cdf(nd, nd - half_width);
    set.mass_std_error = 0.0;
  } else {
    if (samples < 1) fail(errc::out_of_range, "monte carlo mass needs samples >= 1");
    rng::Stream stream(seed, 0x6a55);
    long hits = 0;
    for (long s = 0; s < samples; ++s) {
      const double x = chi_square_sample(stream, n);
      if (x >= nd - half_width && x <= nd + half_width) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(samples);
    set.mass = phat;
    set.mass_std_error = std::sqrt(std::max(phat * (1.0 - phat), 0.0) / static_cast<double>(samples));
  }
  if (set.mass < 1.0 - delta - 3.0 * set.mass_std_error - 1e-12) {
    fail(errc::internal, "gaussian shell mass fell below 1 - delta; theorem violated");
  }
  return set;
}

double tail_bound_bernoulli_chernoff(double p, double eps, long n) {
  if (!(p > 0.0 && p < 1.0)) fail(errc::out_of_range, "p must lie in (0,1)");
  if (!(eps > 0.0)) fail(errc::out_of_range, "eps must be positive");
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  return std::exp(-std::min(eps * eps, eps) * static_cast<double>(n) * p / 3.0);
}

ChiSquareTail tail_bound_chi_square(long n, double t) {
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  if (!(t > 0.0)) fail(errc::out_of_range, "need t > 0");
  const double nd = static_cast<double>(n);
  return ChiSquareTail{2.0 * std::sqrt(nd * t) + 2.0 * t, 2.0 * std::exp(-t)};
}

SblBound sbl_typical_bound(const FiniteDistribution& q_x, const FiniteChannel& channel,
                           const FiniteDistribution& nu, double c, double delta, long n) {
  if (!(delta > 0.0 && delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
  const double beta = 1.0 / q_x.min_prob();
  const double size = static_cast<double>(q_x.alphabet_size());
  if (static_cast<double>(n) <= 3.0 * beta * std::log(size / delta)) {
    fail(errc::precondition_violated, "need n > 3 beta_X ln(|X|/delta)");
  }
  const FiniteDistribution q_y = channel.push_forward(q_x);
  double alpha_y = 0.0;
  for (std::size_t y = 0; y < q_y.alphabet_size(); ++y) {
    if (q_y[y] == 0.0) continue;
    if (nu[y] == 0.0) { alpha_y = kInf; break; }
    alpha_y = std::max(alpha_y, q_y[y] / nu[y]);
  }
  alpha_y = std::max(alpha_y, 1.0);
  const BlResult dstar = dstar_envelope(q_x, channel, nu, c, EnvelopeMode::dstar());
  const double nd = static_cast<double>(n);
  const double second = (c * std::log(alpha_y) + (c + 1.0) * std::log(beta)) *
                        std::sqrt(3.0 * nd * beta * std::log(size / delta));
  return SblBound{nd * dstar.value + second, nd * dstar.value, second,
                  dstar.value,       alpha_y,           beta,   dstar.lower_bound_only};
}

double sbl_typical_bound_gaussian(double dstar_value, double delta, long n) {
  if (!(delta > 0.0 && delta < 1.0)) fail(errc::out_of_range, "delta must lie in (0,1)");
  const double nd = static_cast<double>(n);
  return nd * dstar_value + std::sqrt(6.0 * nd * std::log(2.0 / delta));
}

}  // namespace clab::bldiv
