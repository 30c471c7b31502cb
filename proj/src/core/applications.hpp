#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/measures.hpp"

namespace clab::apps {

using bounds::BoundReport;
using measures::FiniteChannel;
using measures::FiniteDistribution;

// ln M*(n, eps) <= nC + 2 sqrt(|Y| ln 1/(1-eps)) sqrt(n) + ln 1/(1-eps).
// The params record the tighter second-order term obtained from the true
// density bound against the uniform reference when it is smaller.
BoundReport channel_coding_converse(const FiniteChannel& channel, long n, double eps);

// D(P_{Y^n} || caod^n) <= nC - ln M + 2 sqrt(|Y| ln 1/(1-eps)) sqrt(n)
// + ln 1/(1-eps); negative totals clamp to 0 with a note (the assumed code
// is infeasible).
BoundReport output_distribution_gap(const FiniteChannel& channel, double ln_m, long n, double eps);

struct RegionPoint {
  double rate1;
  double rate2;
  std::map<std::string, double> aux;
};

// Outer bound curve for the Gaussian broadcast channel: one point per alpha
// on a uniform grid over [0,1].
std::vector<RegionPoint> broadcast_region_gaussian(double s1, double s2, long n, double eps,
                                                   int grid);

// A candidate auxiliary joint P_UX: weights over U and rows P_{X|U=u}.
struct JointUX {
  std::vector<double> p_u;
  std::vector<FiniteDistribution> x_given_u;
};

// Outer bound points for a degraded discrete broadcast channel, one per
// candidate P_UX (caller-supplied plus optional random search). Flagged
// lower-bound-only in aux when the search supplied the candidates.
std::vector<RegionPoint> broadcast_region_discrete(const FiniteChannel& channel_y,
                                                   const FiniteChannel& channel_z,
                                                   const std::vector<JointUX>& candidates,
                                                   long n, double eps, int search_candidates = 0,
                                                   std::uint64_t seed = 20260811);

struct HtCommReport {
  BoundReport stated;             // the theorem as printed, sqrt(alpha ...) term
  BoundReport pre_display;        // side-by-side variant with sqrt((alpha-1) ...)
  double theta;                   // theta(ln M / n)
  bool envelope_exact;            // false when the rate envelope was search-based
};

// Lower bound on ln pi_{0|1} for communication-constrained testing between
// Q_{XY}^n and (Q_X Q_Y)^n with at most M messages.
HtCommReport ht_communication_converse(const FiniteDistribution& q_x, const FiniteChannel& channel,
                                       double ln_m, long n, double eps);

// Lower bound on ln M_2 for source coding with compressed side information.
BoundReport side_info_converse_discrete(const FiniteDistribution& q_x, const FiniteChannel& channel,
                                        double ln_m1, long n, double eps);
BoundReport side_info_converse_gaussian(double rho, double distortion, double ln_m1, long n,
                                        double eps);

}  // namespace clab::apps
