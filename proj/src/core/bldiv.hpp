#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/measures.hpp"

namespace clab::bldiv {

using measures::FiniteChannel;
using measures::FiniteDistribution;

// Nonnegative weights with total mass at most one; the restricted measures
// Q^{otimes n}|_{C_n} enter the divergence this way.
class WeightedMeasure {
 public:
  static WeightedMeasure make(std::vector<double> weights);
  static WeightedMeasure from_distribution(const FiniteDistribution& d, double mass = 1.0);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t x) const { return weights_[x]; }
  const std::vector<double>& weights() const { return weights_; }
  double total() const;
  FiniteDistribution normalized() const;

 private:
  explicit WeightedMeasure(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

struct BlResult {
  double value = 0.0;
  // For d: one entry (weight 1, optimizer P_X). For d* and the rate
  // envelopes: the decomposition (P_U(u), P_{X|U=u}) whose mixture is Q_X.
  std::vector<std::pair<double, FiniteDistribution>> decomposition;
  int iterations = 0;
  bool converged = true;
  bool lower_bound_only = false;  // search-based result, not certified exact
  std::optional<double> gap_vs_oracle;
};

// Primal objective c D(P_Y || nu) - D(P_X || mu) at a specific input law.
double bl_primal_objective(const WeightedMeasure& mu, const FiniteChannel& channel,
                           const FiniteDistribution& nu, double c,
                           const FiniteDistribution& p_x);

// d(mu, Q_{Y|X}, nu, c) by the dual fixed-point iteration alternating
// f <- dP_Y/dnu and dP_X/dmu proportional to e^{c Q_{Y|X}(ln f)}, run from
// 16 random starts plus the start P_X = normalize(mu).
BlResult bl_divergence_dual(const WeightedMeasure& mu, const FiniteChannel& channel,
                            const FiniteDistribution& nu, double c, int restarts = 16,
                            std::uint64_t seed = 20260811);

// Exhaustive simplex-grid maximum of the primal objective; the independent
// oracle for the dual solver. Only for |X| <= 3.
double bl_divergence_primal_oracle(const WeightedMeasure& mu, const FiniteChannel& channel,
                                   const FiniteDistribution& nu, double c,
                                   int grid_resolution = 2000);

struct EnvelopeMode {
  enum class Kind { dstar, theta_of_r, cond_entropy_of_r };
  Kind kind = Kind::dstar;
  double rate = 0.0;  // R for the rate-constrained modes

  static EnvelopeMode dstar() { return EnvelopeMode{Kind::dstar, 0.0}; }
  static EnvelopeMode theta_of_r(double r) { return EnvelopeMode{Kind::theta_of_r, r}; }
  static EnvelopeMode cond_entropy_of_r(double r) { return EnvelopeMode{Kind::cond_entropy_of_r, r}; }
};

// d*(Q_X, Q_{Y|X}, nu, c) as the upper concave envelope at Q_X of
// psi(P) = c D(P Q_{Y|X} || nu) - D(P || Q_X), plus the two rate envelopes
// theta(R) = sup{I(U;Y) : I(U;X) <= R} and inf{H(Y|U) : I(U;X) <= R}.
// Binary X is exact (1-D hull over a dense grid); larger alphabets fall back
// to a random-restart search and are tagged lower_bound_only.
BlResult dstar_envelope(const FiniteDistribution& q_x, const FiniteChannel& channel,
                        const FiniteDistribution& nu, double c, const EnvelopeMode& mode,
                        std::uint64_t seed = 20260811);

struct GaussianSideInfo {
  double value;         // d*(Q_X, Q_{Y|X}, nu, c) + (c/2) ln(2 pi e D)
  double sigma_sq_star; // optimizer of the inner 1-D supremum, clamped to [0,1]
};

// Closed-form evaluation of sup_{sigma in [0,1]} { (1/2) ln sigma^2
// - (c/2) ln((1-rho^2+rho^2 sigma^2)/D) }.
GaussianSideInfo gaussian_dstar_sideinfo(double rho, double D, double c);

// vartheta(x) = ln((1-rho^2 + rho^2 e^{-x})/D) for x >= 0; +inf for x < 0.
double gaussian_vartheta(double rho, double D, double x);

// First-order term of the Gaussian side-information converse evaluated
// through the convex conjugate: -inf_{c >= 1} (n d*(c) + (cn/2)ln(2 pi e D)
// + ln M1)/c, located numerically.
double gaussian_sideinfo_first_order_conjugate(double rho, double D, double ln_m1, long n);

enum class MassMethod { exact, monte_carlo };

struct TypicalSet {
  bool discrete = true;
  double delta = 0.0;
  long n = 0;
  // discrete: counts in C_n satisfy count(a) <= (1 + eps_n) n Q_X(a)
  FiniteDistribution q_x = FiniteDistribution::uniform(1);
  double eps_n = 0.0;
  std::vector<double> count_caps;
  // gaussian: shell n - A sqrt(n) <= ||x||^2 / sigma^2 <= n + A sqrt(n)
  double sigma = 1.0;
  double shell_a = 0.0;

  double mass = 0.0;
  double mass_std_error = 0.0;  // zero for exact evaluation

  bool contains(const std::vector<int>& xn) const;
  bool contains(const std::vector<double>& xn) const;
};

TypicalSet typical_set_discrete(const FiniteDistribution& q_x, double delta, long n,
                                MassMethod method, long samples = 0, std::uint64_t seed = 0);
TypicalSet typical_set_gaussian(double sigma, double delta, long n, MassMethod method,
                                long samples = 0, std::uint64_t seed = 0);

// e^{-(1/3) min(eps^2, eps) n p}
double tail_bound_bernoulli_chernoff(double p, double eps, long n);

struct ChiSquareTail {
  double threshold;  // 2 sqrt(n t) + 2 t
  double bound;      // 2 e^{-t}
};
ChiSquareTail tail_bound_chi_square(long n, double t);

struct SblBound {
  double total;
  double first_order;   // n d*
  double second_order;  // the sqrt(n) term
  double dstar;
  double alpha_y;
  double beta_x;
  bool lower_bound_only;
};

// Right-hand side of the single-letter typical-set estimate:
// n d*(Q_X, Q_{Y|X}, nu, c) + ln(alpha_Y^c beta_X^{c+1}) sqrt(3 n beta_X ln(|X|/delta)).
SblBound sbl_typical_bound(const FiniteDistribution& q_x, const FiniteChannel& channel,
                           const FiniteDistribution& nu, double c, double delta, long n);

// Gaussian analogue: n d* + sqrt(6 n ln(2/delta)).
double sbl_typical_bound_gaussian(double dstar_value, double delta, long n);

}  // namespace clab::bldiv
