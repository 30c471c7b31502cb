#pragma once

#include <cstdint>
#include <vector>

#include "core/measures.hpp"

namespace clab::oracles {

using measures::FiniteDistribution;

enum class NpConstraint {
  type1_at_most,   // P-probability of deciding Q at most the value
  p_mass_at_least, // P-mass of the test at least the value
};

struct NpResult {
  double log_q_mass;            // ln of the minimal Q-measure
  double q_mass;
  double threshold;             // llr value of the boundary atom
  double randomization_weight;  // share of the boundary atom included
  double p_mass;                // P-mass achieved (meets the constraint exactly)
};

// Exact optimum over randomized likelihood-ratio tests: atoms sorted by llr
// descending, P-mass accumulated to the constraint, boundary randomized.
NpResult np_frontier(const FiniteDistribution& p, const FiniteDistribution& q, long n,
                     NpConstraint constraint, double value);

struct BlowupCertification {
  long trials = 0;
  int violations = 0;           // failures of P[A_r] >= 1 - e^{-c^2}
  int counting_violations = 0;  // failures of the counting sandwich
  double worst_margin = 1e300;  // min over trials of P[A_r] - (1 - e^{-c^2})
};

// Exhaustive check of the blowing-up guarantee on {0,1}^n: random nonempty
// sets, random product laws with per-coordinate biases in [0.2, 0.8], radius
// from the lemma rounded up.
BlowupCertification blowup_certification(int n, long trials, const std::vector<double>& c_values,
                                         std::uint64_t seed);

struct DpImpossibilityRow {
  long n;
  double min_ln_q_mass;   // exact NP value at P-mass 1 - n^{-delta}
  double n_times_d;
  double normalized_gap;  // (min_ln_q_mass + nD) / sqrt(n ln n)
};

// Appendix-style experiment: the exact data-processing frontier at target
// P-mass 1 - n^{-delta}, normalized against sqrt(n ln n).
std::vector<DpImpossibilityRow> dp_impossibility_experiment(const FiniteDistribution& p,
                                                            const FiniteDistribution& q,
                                                            double delta,
                                                            const std::vector<long>& n_list);

struct McEstimate {
  double estimate;
  double std_error;
};

// Error probability of the two-word antipodal code +-a 1^n through N(x, 1)
// with ML decoding; the closed form is Q(a sqrt(n)).
McEstimate mc_antipodal_code_error(double amplitude, int n, long samples, std::uint64_t seed);

// P[||Y^n||^2 <= n D] for Y ~ N(0, I_n): the distortion event for the trivial
// single-message scheme that reconstructs zero.
McEstimate mc_distortion_trivial_scheme(double distortion, int n, long samples, std::uint64_t seed);

// Tail mass P[|chi^2_n - n| >= threshold] by Monte Carlo.
McEstimate mc_chi_square_two_sided_tail(long n, double threshold, long samples, std::uint64_t seed);

}  // namespace clab::oracles
