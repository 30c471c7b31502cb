#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/bldiv.hpp"
#include "core/measures.hpp"

namespace clab::bounds {

using measures::FiniteChannel;
using measures::FiniteDistribution;

// A bound value decomposed into the linear-in-n, sqrt(n), and constant terms,
// plus the optimized internal parameters.
struct BoundReport {
  double total = 0.0;
  double first_order = 0.0;   // coefficient times n, already applied
  double second_order = 0.0;  // the sqrt(n) term value
  double constant = 0.0;
  std::map<std::string, double> params;
  bool preconditions_ok = true;
  bool is_bound = true;  // false for reference lines that are not finite-n guarantees
  std::vector<std::string> notes;
};

BoundReport make_report(double first_order, double second_order, double constant);

struct BhtSuite {
  BoundReport weak;
  BoundReport blowup;
  BoundReport smoothing;
  BoundReport strassen_ref;  // asymptotic reference, is_bound = false
};

// The weak, blowing-up, and smoothing-out converse bounds on
// ln(1/pi_{P|Q}) for tests with pi_{Q|P} <= eps, plus the Strassen reference.
BhtSuite bht_converse_suite(const FiniteDistribution& p, const FiniteDistribution& q, long n,
                            double eps);

struct AchievabilityReport {
  double threshold;       // gamma
  double exact_type1;     // pi_{Q|P} of the threshold test
  double exact_type2;     // pi_{P|Q}, exact
  double log_exact_type2; // ln of the above, computed in log space
  double chernoff_bound;  // e^{-gamma}
};

// Threshold test on the relative information: the largest gamma with
// P-probability of {i >= gamma} at least 1 - eps.
AchievabilityReport bht_achievability(const FiniteDistribution& p, const FiniteDistribution& q,
                                      long n, double eps);

struct BlowupNumbers {
  double radius;          // sqrt(n/2) (sqrt(ln 1/P[A]) + c)
  double counting_lower;  // r ln(r / (n e K))
  double counting_upper;  // 0
};

// Blocklength enters as a real so the paper's 5e9 example evaluates directly.
BlowupNumbers blowup_lemma_numbers(double p_a, double c, double n, double k_ratio);

enum class FanoKind { weak, discrete_smoothing, gaussian };

// Second-order Fano bounds on ln M. The discrete smoothing variant takes the
// alpha of the dominating operator; the note records which error criterion
// each bound requires.
BoundReport fano_bound(FanoKind kind, double i_wy, long n, double eps, double alpha = 1.0);

enum class ImageSizeVariant {
  discrete_d,        // d-based, bounded densities
  discrete_typical,  // n d* + A sqrt(n) + c ln(1/eta)
  alternative,       // Markov-free variant at the caller's t
  gaussian_d,
  gaussian_typical,
};

struct ImageSizeInputs {
  double divergence = 0.0;  // d or d*, per variant
  double c = 1.0;
  double eta = 0.5;
  long n = 1;
  double alpha = 1.0;   // channel density bound (discrete variants)
  double beta_x = 1.0;  // 1 / min Q_X
  double delta = 0.1;   // typical-set parameter
  double t = 0.0;       // smoothing time for the alternative variant
  std::size_t x_size = 2;
};

BoundReport image_size_bound(ImageSizeVariant variant, const ImageSizeInputs& in);

struct SoundnessReport {
  int violations = 0;
  double max_violation = -1e300;  // max over trials of lhs - bound (<= 0 when sound)
  int trials_run = 0;
  int skipped = 0;  // trials whose mu-event was empty
};

// Certifies the discrete image-size inequality on exhaustive instances:
// random f in H_{[0,1]}(Y^n) and random sub-probability mu_n, with d solved
// by the dual iteration on the n-letter alphabet.
SoundnessReport soundness_check_image_size(const FiniteChannel& channel,
                                           const FiniteDistribution& nu, double c, int n,
                                           double eta, int trials, std::uint64_t seed);

}  // namespace clab::bounds
