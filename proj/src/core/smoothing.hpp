#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/measures.hpp"

namespace clab::smoothing {

using measures::FiniteDistribution;
using measures::TestFunction;

// Either a tensor product of simple semigroups T_t = [e^{-t} + (1-e^{-t})P_i]
// with per-coordinate stationary laws, or the dominating (non-Markov) operator
// Lambda_t = [e^{-t} + alpha (1-e^{-t}) nu]^{otimes n}.
class SemigroupSpec {
 public:
  enum class Mode { simple_tensor, dominating };

  static SemigroupSpec simple(std::vector<FiniteDistribution> stationary_rows, double t);
  static SemigroupSpec simple_iid(const FiniteDistribution& stationary, int n, double t);
  static SemigroupSpec dominating(double alpha, const FiniteDistribution& nu, int n, double t);

  Mode mode() const { return mode_; }
  int coordinates() const { return static_cast<int>(rows_.size()); }
  double t() const { return t_; }
  double alpha() const { return alpha_; }
  const FiniteDistribution& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

 private:
  SemigroupSpec(Mode mode, std::vector<FiniteDistribution> rows, double t, double alpha)
      : mode_(mode), rows_(std::move(rows)), t_(t), alpha_(alpha) {}
  Mode mode_;
  std::vector<FiniteDistribution> rows_;  // per-coordinate laws (nu replicated in dominating mode)
  double t_;
  double alpha_;  // 1 in simple mode
};

// Coordinate-wise application of the one-dimensional affine stencil along each
// tensor axis; never materializes the |Y|^n x |Y|^n operator. Simple mode
// preserves [0,1]; dominating mode may exceed 1, hence the raw array return.
std::vector<double> semigroup_apply(const SemigroupSpec& spec, const TestFunction& f);
std::vector<double> semigroup_apply(const SemigroupSpec& spec, std::vector<double> values);

// Indicator of the r-blowup A_r = {v^n : d_n(v^n, A) <= r} by r rounds of
// dilation over the Hamming graph of Y^n.
TestFunction blowup_set(const TestFunction& indicator, int r);

// Product-measure weights w[idx] = prod_i rows[i][digit_i(idx)].
std::vector<double> product_weights(const std::vector<FiniteDistribution>& rows, int output_size);

struct RhcReport {
  double lhs;     // ||T_t f||_{L^q}  (exp of the mean log at q = 0)
  double rhs;     // ||f||_{L^p}
  double margin;  // lhs - rhs
  bool holds;
};

// Checks ||T_t f||_{L^q} >= ||f||_{L^p} under the product stationary measure.
// Requires 0 <= q < p < 1 and t >= ln((1-q)/(1-p)) (the q = 0 limit uses
// t >= ln(1/(1-p))); otherwise TimeTooSmall.
RhcReport rhc_check(const TestFunction& f, const std::vector<FiniteDistribution>& stationary,
                    double p, double q, double t);

struct McEstimate {
  double mean;
  double std_error;
};

// Monte Carlo evaluation of the Ornstein-Uhlenbeck semigroup
// (T_{x^n,t} f)(y^n) = E f(e^{-t} y^n + (1-e^{-t}) x^n + sqrt(1-e^{-2t}) V^n)
// with a seeded deterministic stream.
McEstimate ou_apply_mc(const std::vector<double>& center,
                       const std::function<double(const std::vector<double>&)>& f,
                       const std::vector<double>& point, double t, long samples,
                       std::uint64_t seed);

}  // namespace clab::smoothing
