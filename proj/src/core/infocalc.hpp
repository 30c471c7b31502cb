#pragma once

#include <optional>
#include <vector>

#include "core/measures.hpp"

namespace clab::infocalc {

using measures::FiniteChannel;
using measures::FiniteDistribution;

// D(P||Q), V(P||Q) = Var_P(ln dP/dQ), and alpha = ||dP/dQ||_inf. Infinities
// are legal outputs when the support is violated.
struct DivergenceStats {
  double d;
  double v;
  double alpha;
};

DivergenceStats divergence_stats(const FiniteDistribution& p, const FiniteDistribution& q);

// Sum of p(a) ln(p(a)/q(a)); +inf on support violation.
double relative_entropy(const FiniteDistribution& p, const FiniteDistribution& q);

double shannon_entropy(const FiniteDistribution& p);

// h(eps) = -eps ln eps - (1-eps) ln(1-eps), in nats.
double binary_entropy(double eps);

struct CapacityResult {
  double mutual_information;  // I(X;Y) under the supplied input, else at the optimum
  double capacity;
  FiniteDistribution caod;              // capacity-achieving output distribution
  FiniteDistribution optimal_input;
  int iterations;
  bool converged;
  double dispersion;          // Var of the information density at the optimum
  bool dispersion_advisory;   // optimal input appears non-unique
};

// Alternating maximization for capacity; iterates until successive capacity
// values differ by < 1e-10 (cap 1e5 iterations). On a hit cap the best
// iterate is returned with converged = false.
CapacityResult mutual_information_and_capacity(
    const FiniteChannel& channel,
    const std::optional<FiniteDistribution>& p_x = std::nullopt);

double mutual_information(const FiniteChannel& channel, const FiniteDistribution& p_x);

// Gaussian tail probability Q(x) and its inverse, accurate to 1e-10.
double gaussian_q(double x);
double gaussian_q_inverse(double p);

// Regularized lower incomplete gamma P(a, x); backs the chi-square CDF.
double gamma_p(double a, double x);
double chi_square_cdf(double dof, double x);

enum class Weighting { under_p, under_q };

struct LlrAtom {
  double llr;       // value of the relative information, nats
  double log_prob;  // log of the atom mass under the requested measure
};

// Exact pmf of sum_i ln(dP/dQ)(y_i) under P^n or Q^n. Atoms are sorted by llr
// value; equal values within 1e-12 are merged. Binary alphabets take the
// count-parameterized path, so no floating merge is involved.
class LlrDistribution {
 public:
  static LlrDistribution build(const FiniteDistribution& p, const FiniteDistribution& q,
                               long n, Weighting weighting);

  const std::vector<LlrAtom>& atoms() const { return atoms_; }
  long n() const { return n_; }

  double total_mass() const;  // sum of exp(log_prob)
  double mean() const;
  double variance() const;

 private:
  LlrDistribution(std::vector<LlrAtom> atoms, long n) : atoms_(std::move(atoms)), n_(n) {}
  std::vector<LlrAtom> atoms_;
  long n_;
};

}  // namespace clab::infocalc
