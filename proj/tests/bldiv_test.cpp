#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/bldiv.hpp"
#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/rng.hpp"

using namespace clab;
using bldiv::EnvelopeMode;
using bldiv::WeightedMeasure;
using measures::FiniteChannel;
using measures::FiniteDistribution;

namespace {

FiniteDistribution random_binary(rng::Stream& stream, double lo = 0.05, double hi = 0.95) {
  return FiniteDistribution::binary(lo + (hi - lo) * stream.next_unit());
}

FiniteChannel random_binary_channel(rng::Stream& stream) {
  return FiniteChannel::from_rows({random_binary(stream).probs(), random_binary(stream).probs()});
}

double recompute_from_decomposition(const bldiv::BlResult& result, const FiniteChannel& channel,
                                    const FiniteDistribution& q_x, const FiniteDistribution& nu,
                                    double c) {
  double value = 0.0;
  for (const auto& [w, comp] : result.decomposition) {
    value += w * (c * infocalc::relative_entropy(channel.push_forward(comp), nu) -
                  infocalc::relative_entropy(comp, q_x));
  }
  return value;
}

}  // namespace

TEST_CASE("weighted measure validation") {
  CHECK_THROWS_AS((void)WeightedMeasure::make({0.0, 0.0}), Error);
  CHECK_THROWS_AS((void)WeightedMeasure::make({0.5, -0.1}), Error);
  CHECK_THROWS_AS((void)WeightedMeasure::make({0.9, 0.9}), Error);
  const auto mu = WeightedMeasure::make({0.2, 0.1});
  CHECK(mu.total() == doctest::Approx(0.3));
  CHECK(mu.normalized()[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("data processing endpoint: d(Q_X, Q, Q_Y, 1) = 0") {
  rng::Stream stream(101);
  for (int rep = 0; rep < 10; ++rep) {
    const auto q_x = random_binary(stream);
    const auto channel = random_binary_channel(stream);
    const auto q_y = channel.push_forward(q_x);
    const auto result = bl_divergence_dual(WeightedMeasure::from_distribution(q_x), channel, q_y, 1.0);
    CHECK(result.value == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(result.value >= -1e-9);
  }
}

TEST_CASE("identity channel at c = 2 concentrates on the rarest symbol") {
  const auto q_x = FiniteDistribution::validate_and_build({0.3, 0.7});
  const auto identity = FiniteChannel::identity(2);
  const auto result =
      bl_divergence_dual(WeightedMeasure::from_distribution(q_x), identity, q_x, 2.0);
  CHECK(result.value == doctest::Approx(std::log(1.0 / 0.3)).epsilon(1e-7));
  CHECK(result.decomposition[0].second[0] == doctest::Approx(1.0).epsilon(1e-6));
  // grid oracle confirms
  const double oracle = bl_divergence_primal_oracle(WeightedMeasure::from_distribution(q_x),
                                                    identity, q_x, 2.0, 20000);
  CHECK(result.value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("weak duality: the solved value dominates random primal candidates") {
  rng::Stream stream(103);
  const auto q_x = random_binary(stream);
  const auto channel = random_binary_channel(stream);
  const auto nu = random_binary(stream);
  const auto mu = WeightedMeasure::from_distribution(q_x, 0.8);
  const double c = 1.5;
  const auto result = bl_divergence_dual(mu, channel, nu, c);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto p_x = random_binary(stream, 0.001, 0.999);
    CHECK(bldiv::bl_primal_objective(mu, channel, nu, c, p_x) <= result.value + 1e-8);
  }
}

TEST_CASE("dual solver agrees with the simplex-grid oracle on random binary instances") {
  rng::Stream stream(107);
  for (int rep = 0; rep < 10; ++rep) {
    const auto q_x = random_binary(stream);
    const auto channel = random_binary_channel(stream);
    const auto nu = random_binary(stream, 0.2, 0.8);
    for (double c : {0.5, 1.5, 3.0}) {
      const auto mu = WeightedMeasure::from_distribution(q_x);
      const double dual = bl_divergence_dual(mu, channel, nu, c).value;
      const double primal = bl_divergence_primal_oracle(mu, channel, nu, c, 20000);
      CHECK(dual == doctest::Approx(primal).epsilon(5e-5));
      CHECK(dual >= primal - 1e-6);  // the grid never exceeds the true supremum
    }
  }
}

TEST_CASE("primal oracle guards") {
  const auto mu = WeightedMeasure::make({0.25, 0.25, 0.25, 0.25});
  const auto channel = FiniteChannel::identity(4);
  bool hit = false;
  try {
    (void)bl_divergence_primal_oracle(mu, channel, FiniteDistribution::uniform(4), 1.0);
  } catch (const Error& e) {
    hit = e.code() == errc::alphabet_too_large;
  }
  CHECK(hit);
}

TEST_CASE("c to zero pushes the divergence to zero for probability mu") {
  rng::Stream stream(109);
  const auto q_x = random_binary(stream);
  const auto channel = random_binary_channel(stream);
  const auto nu = random_binary(stream, 0.2, 0.8);
  const double value =
      bl_divergence_dual(WeightedMeasure::from_distribution(q_x), channel, nu, 1e-7).value;
  CHECK(std::abs(value) <= 1e-5);
}

TEST_CASE("tensorization: two-letter product equals twice the single-letter value") {
  rng::Stream stream(113);
  for (int rep = 0; rep < 3; ++rep) {
    const auto q_x = random_binary(stream, 0.2, 0.8);
    const auto channel = random_binary_channel(stream);
    const auto nu = random_binary(stream, 0.25, 0.75);
    for (double c : {0.7, 2.0}) {
      const double single =
          bl_divergence_dual(WeightedMeasure::from_distribution(q_x), channel, nu, c).value;
      // product instance on the 4-letter alphabet
      std::vector<double> mu2(4);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) mu2[2 * a + b] = q_x[a] * q_x[b];
      }
      std::vector<double> nu2(4);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) nu2[2 * a + b] = nu[a] * nu[b];
      }
      const double doubled =
          bl_divergence_dual(WeightedMeasure::make(mu2), channel.memoryless_extension(2),
                             FiniteDistribution::validate_and_build(nu2), c)
              .value;
      CHECK(doubled == doctest::Approx(2.0 * single).epsilon(2e-6));
    }
  }
}

TEST_CASE("dstar vanishes when the channel output is independent of the input") {
  const auto q_x = FiniteDistribution::validate_and_build({0.45, 0.55});
  const auto channel = FiniteChannel::from_rows({{0.3, 0.7}, {0.3, 0.7}});
  const auto q_y = channel.push_forward(q_x);
  const auto result = dstar_envelope(q_x, channel, q_y, 2.5, EnvelopeMode::dstar());
  CHECK(result.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("dstar for the identity channel: (c-1) H(Q_X) with point-mass split") {
  const auto q_x = FiniteDistribution::validate_and_build({0.3, 0.7});
  const auto identity = FiniteChannel::identity(2);
  for (double c : {1.5, 2.0, 4.0}) {
    const auto result = dstar_envelope(q_x, identity, q_x, c, EnvelopeMode::dstar());
    CHECK(result.value ==
          doctest::Approx((c - 1.0) * infocalc::shannon_entropy(q_x)).epsilon(1e-8));
    REQUIRE(result.decomposition.size() == 2);
    // mixture returns Q_X and components are the vertices
    double mass_on_one = 0.0;
    for (const auto& [w, comp] : result.decomposition) mass_on_one += w * comp[1];
    CHECK(mass_on_one == doctest::Approx(q_x[1]).epsilon(1e-9));
    CHECK(recompute_from_decomposition(result, identity, q_x, q_x, c) ==
          doctest::Approx(result.value).epsilon(1e-9));
  }
}

TEST_CASE("dstar <= d and the decomposition reproduces the value on random instances") {
  rng::Stream stream(127);
  for (int rep = 0; rep < 8; ++rep) {
    const auto q_x = random_binary(stream, 0.15, 0.85);
    const auto channel = random_binary_channel(stream);
    const auto nu = random_binary(stream, 0.2, 0.8);
    for (double c : {0.8, 2.2}) {
      const auto star = dstar_envelope(q_x, channel, nu, c, EnvelopeMode::dstar());
      const double d =
          bl_divergence_dual(WeightedMeasure::from_distribution(q_x), channel, nu, c).value;
      CHECK(star.value <= d + 1e-7);
      double mixture = 0.0;
      for (const auto& [w, comp] : star.decomposition) mixture += w * comp[1];
      CHECK(mixture == doctest::Approx(q_x[1]).epsilon(1e-9));
      CHECK(recompute_from_decomposition(star, channel, q_x, nu, c) ==
            doctest::Approx(star.value).epsilon(1e-8));
    }
  }
}

TEST_CASE("theta of R for the identity channel is min(R, H)") {
  const auto q_x = FiniteDistribution::validate_and_build({0.35, 0.65});
  const auto identity = FiniteChannel::identity(2);
  const double h = infocalc::shannon_entropy(q_x);
  for (double r : {0.0, 0.1, 0.3, 0.5, 0.9, 1.5}) {
    const auto theta = dstar_envelope(q_x, identity, q_x, 1.0, EnvelopeMode::theta_of_r(r));
    CHECK(theta.value == doctest::Approx(std::min(r, h)).epsilon(1e-6));
  }
}

TEST_CASE("theta is concave, nondecreasing, and capped by min(R, I)") {
  rng::Stream stream(131);
  const auto q_x = random_binary(stream, 0.25, 0.75);
  const auto channel = random_binary_channel(stream);
  const double i_xy = infocalc::mutual_information(channel, q_x);
  const auto q_y = channel.push_forward(q_x);
  std::vector<double> rates;
  std::vector<double> values;
  for (int i = 0; i <= 10; ++i) {
    const double r = 0.08 * i;
    const auto theta = dstar_envelope(q_x, channel, q_y, 1.0, EnvelopeMode::theta_of_r(r));
    rates.push_back(r);
    values.push_back(theta.value);
    CHECK(theta.value <= std::min(r, i_xy) + 1e-8);
    if (i > 0) CHECK(theta.value >= values[values.size() - 2] - 1e-8);
  }
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    CHECK(values[i] >= 0.5 * (values[i - 1] + values[i + 1]) - 1e-7);
  }
}

TEST_CASE("conditional entropy envelope for the identity channel extracts at rate R") {
  const auto q_x = FiniteDistribution::validate_and_build({0.4, 0.6});
  const auto identity = FiniteChannel::identity(2);
  const double h = infocalc::shannon_entropy(q_x);
  for (double r : {0.0, 0.2, 0.5, 1.0}) {
    const auto env = dstar_envelope(q_x, identity, q_x, 1.0, EnvelopeMode::cond_entropy_of_r(r));
    CHECK(env.value == doctest::Approx(std::max(h - r, 0.0)).epsilon(1e-6));
  }
}

TEST_CASE("search fallback for ternary alphabets is flagged and below d") {
  const auto q_x = FiniteDistribution::validate_and_build({0.3, 0.3, 0.4});
  const auto channel = FiniteChannel::from_rows(
      {{0.7, 0.2, 0.1}, {0.15, 0.7, 0.15}, {0.1, 0.25, 0.65}});
  const auto nu = channel.push_forward(q_x);
  const double c = 2.0;
  const auto star = dstar_envelope(q_x, channel, nu, c, EnvelopeMode::dstar());
  CHECK(star.lower_bound_only);
  const double d = bl_divergence_dual(WeightedMeasure::from_distribution(q_x), channel, nu, c).value;
  CHECK(star.value <= d + 1e-7);
  CHECK(star.value >= -1e-9);
  CHECK(recompute_from_decomposition(star, channel, q_x, nu, c) ==
        doctest::Approx(star.value).epsilon(1e-8));
}

TEST_CASE("gaussian side-info closed form matches a dense grid") {
  const double rho = 0.8, distortion = 0.1, c = 2.0;
  const auto closed = bldiv::gaussian_dstar_sideinfo(rho, distortion, c);
  double best = -1e300;
  const int grid = 1000000;
  for (int i = 1; i <= grid; ++i) {
    const double sigma = static_cast<double>(i) / grid;
    const double s = sigma * sigma;
    const double value =
        0.5 * std::log(s) - 0.5 * c * std::log((1.0 - rho * rho + rho * rho * s) / distortion);
    best = std::max(best, value);
  }
  CHECK(closed.value == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("gaussian side-info at rho = 0 sits at sigma = 1") {
  const auto closed = bldiv::gaussian_dstar_sideinfo(0.0, 0.25, 3.0);
  CHECK(closed.sigma_sq_star == doctest::Approx(1.0));
  CHECK(closed.value == doctest::Approx(0.5 * 3.0 * std::log(0.25)));
}

TEST_CASE("conjugate evaluation of the side-info first-order term") {
  // -inf_c over the closed form equals -(n/2) vartheta(2 ln M1 / n)
  const double rho = 0.6, distortion = 0.2;
  const long n = 400;
  const double ln_m1 = 120.0;
  const double via_conjugate =
      bldiv::gaussian_sideinfo_first_order_conjugate(rho, distortion, ln_m1, n);
  const double direct =
      0.5 * static_cast<double>(n) *
      bldiv::gaussian_vartheta(rho, distortion, 2.0 * ln_m1 / static_cast<double>(n));
  CHECK(via_conjugate == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("discrete typical set at the worked size") {
  const auto q_x = FiniteDistribution::uniform(2);
  const auto set = bldiv::typical_set_discrete(q_x, 0.1, 200, bldiv::MassMethod::exact);
  CHECK(set.eps_n == doctest::Approx(std::sqrt(0.03 * std::log(20.0))).epsilon(1e-12));
  CHECK(set.mass >= 0.9);
  CHECK(set.mass_std_error == 0.0);
  // membership: balanced strings are inside, extreme ones are not
  std::vector<int> balanced(200, 0);
  for (int i = 0; i < 100; ++i) balanced[i] = 1;
  CHECK(set.contains(balanced));
  CHECK(!set.contains(std::vector<int>(200, 1)));

  // Monte Carlo mass agrees within 3 standard errors of the exact mass
  const auto mc = bldiv::typical_set_discrete(q_x, 0.1, 200, bldiv::MassMethod::monte_carlo,
                                              20000, 777);
  const double se_exact = std::sqrt(set.mass * (1.0 - set.mass) / 20000.0);
  CHECK(std::abs(mc.mass - set.mass) <= 3.0 * se_exact + 1e-9);
}

TEST_CASE("discrete typical set precondition") {
  bool hit = false;
  try {
    (void)bldiv::typical_set_discrete(FiniteDistribution::uniform(2), 0.1, 10,
                                      bldiv::MassMethod::exact);
  } catch (const Error& e) {
    hit = e.code() == errc::precondition_violated;
  }
  CHECK(hit);
}

TEST_CASE("gaussian typical shell") {
  const auto set = bldiv::typical_set_gaussian(1.0, 0.1, 100, bldiv::MassMethod::exact);
  CHECK(set.shell_a == doctest::Approx(std::sqrt(6.0 * std::log(20.0))).epsilon(1e-12));
  CHECK(set.mass >= 0.9);
  const auto mc =
      bldiv::typical_set_gaussian(1.0, 0.1, 100, bldiv::MassMethod::monte_carlo, 200000, 123);
  CHECK(std::abs(mc.mass - set.mass) <= 3.0 * mc.mass_std_error + 1e-9);
  // center of the shell is inside
  std::vector<double> center(100, 1.0);
  CHECK(set.contains(center));
  CHECK(!set.contains(std::vector<double>(100, 3.0)));
}

TEST_CASE("bernoulli chernoff bound values and domination") {
  CHECK(bldiv::tail_bound_bernoulli_chernoff(0.5, 1.0, 10) ==
        doctest::Approx(std::exp(-5.0 / 3.0)).epsilon(1e-12));
  // exact binomial tail P[sum >= 10] = 2^{-10} is below the bound
  CHECK(std::pow(2.0, -10.0) <= bldiv::tail_bound_bernoulli_chernoff(0.5, 1.0, 10));
  // eps -> 0 drives the bound to 1
  CHECK(bldiv::tail_bound_bernoulli_chernoff(0.5, 1e-9, 10) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("chi-square tail numbers") {
  const auto tail = bldiv::tail_bound_chi_square(100, std::log(20.0));
  CHECK(tail.threshold == doctest::Approx(2.0 * std::sqrt(100.0 * std::log(20.0)) +
                                          2.0 * std::log(20.0)).epsilon(1e-12));
  CHECK(tail.bound == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("single-letter typical bound: worked example and sqrt(2) scaling") {
  const auto q_x = FiniteDistribution::uniform(2);
  const auto identity = FiniteChannel::identity(2);
  const auto q_y = identity.push_forward(q_x);
  const double c = 2.0, delta = 0.1;
  const auto bound_n = bldiv::sbl_typical_bound(q_x, identity, q_y, c, delta, 200);
  // alpha_Y = 1, beta = 2, d* = (c-1) ln 2
  CHECK(bound_n.alpha_y == doctest::Approx(1.0));
  CHECK(bound_n.beta_x == doctest::Approx(2.0));
  CHECK(bound_n.dstar == doctest::Approx((c - 1.0) * std::log(2.0)).epsilon(1e-8));
  const double expected_second =
      (c + 1.0) * std::log(2.0) * std::sqrt(3.0 * 200.0 * 2.0 * std::log(20.0));
  CHECK(bound_n.second_order == doctest::Approx(expected_second).epsilon(1e-9));
  CHECK(bound_n.total == doctest::Approx(200.0 * std::log(2.0) + expected_second).epsilon(1e-7));

  const auto bound_2n = bldiv::sbl_typical_bound(q_x, identity, q_y, c, delta, 400);
  CHECK(bound_2n.second_order ==
        doctest::Approx(std::sqrt(2.0) * bound_n.second_order).epsilon(1e-12));
}

TEST_CASE("envelope continuity in the base measure (the slack lemma)") {
  rng::Stream stream(137);
  const auto q_x = FiniteDistribution::validate_and_build({0.4, 0.6});
  const auto channel = random_binary_channel(stream);
  const auto nu = random_binary(stream, 0.25, 0.75);
  const double c = 1.7;
  const auto q_y = channel.push_forward(q_x);
  double alpha_y = std::max(q_y[0] / nu[0], q_y[1] / nu[1]);
  alpha_y = std::max(alpha_y, 1.0);
  const double beta = 1.0 / q_x.min_prob();
  const double at_q = dstar_envelope(q_x, channel, nu, c, EnvelopeMode::dstar()).value;
  for (int rep = 0; rep < 100; ++rep) {
    const double eps = 0.3 * stream.next_unit();
    // sample P <= (1 + eps) Q_X on the binary alphabet
    const double lo = std::max(0.0, 1.0 - (1.0 + eps) * q_x[0]);
    const double hi = std::min(1.0, (1.0 + eps) * q_x[1]);
    const double p1 = lo + (hi - lo) * stream.next_unit();
    const auto p = FiniteDistribution::binary(p1);
    const double at_p = dstar_envelope(p, channel, nu, c, EnvelopeMode::dstar()).value;
    const double slack = eps * ((c + 1.0) * std::log(beta) + c * std::log(alpha_y));
    CHECK(at_p <= at_q + slack + 1e-7);
  }
}
