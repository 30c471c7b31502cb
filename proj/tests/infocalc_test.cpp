#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/rng.hpp"

using namespace clab;
using infocalc::LlrDistribution;
using infocalc::Weighting;
using measures::FiniteChannel;
using measures::FiniteDistribution;

namespace {

const FiniteDistribution kP = FiniteDistribution::validate_and_build({0.6, 0.4});
const FiniteDistribution kQ = FiniteDistribution::validate_and_build({0.3, 0.7});

// Independent summation of D and V in long double, the oracle for the
// double-precision implementation.
void long_double_stats(const FiniteDistribution& p, const FiniteDistribution& q, double& d,
                       double& v) {
  long double mean = 0.0L, second = 0.0L;
  for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
    if (p[a] == 0.0) continue;
    const long double llr = std::log(static_cast<long double>(p[a]) / q[a]);
    mean += p[a] * llr;
    second += p[a] * llr * llr;
  }
  d = static_cast<double>(mean);
  v = static_cast<double>(second - mean * mean);
}

}  // namespace

TEST_CASE("divergence stats identity and point mass") {
  const auto same = infocalc::divergence_stats(kQ, kQ);
  CHECK(same.d == doctest::Approx(0.0));
  CHECK(same.v == doctest::Approx(0.0));
  CHECK(same.alpha == doctest::Approx(1.0));

  const auto point = infocalc::divergence_stats(FiniteDistribution::validate_and_build({1.0, 0.0}),
                                                FiniteDistribution::uniform(2));
  CHECK(point.d == doctest::Approx(std::log(2.0)));
  CHECK(point.v == doctest::Approx(0.0));
  CHECK(point.alpha == doctest::Approx(2.0));
}

TEST_CASE("divergence stats on the standard pair match the long-double oracle") {
  double d_expected, v_expected;
  long_double_stats(kP, kQ, d_expected, v_expected);
  const auto stats = infocalc::divergence_stats(kP, kQ);
  CHECK(stats.d == doctest::Approx(d_expected).epsilon(1e-14));
  CHECK(stats.v == doctest::Approx(v_expected).epsilon(1e-14));
  CHECK(stats.alpha == doctest::Approx(2.0));
  // frozen values
  CHECK(stats.d == doctest::Approx(0.19204199316179811).epsilon(1e-12));
  CHECK(stats.v == doctest::Approx(0.37665961325599833).epsilon(1e-12));
}

TEST_CASE("support violation gives infinities, not errors") {
  const auto stats = infocalc::divergence_stats(
      FiniteDistribution::uniform(2), FiniteDistribution::validate_and_build({1.0, 0.0}));
  CHECK(std::isinf(stats.d));
  CHECK(std::isinf(stats.alpha));
}

TEST_CASE("V <= alpha - 1 on random pairs") {
  rng::Stream stream(11);
  for (int rep = 0; rep < 200; ++rep) {
    const double p = 0.02 + 0.96 * stream.next_unit();
    const double q = 0.02 + 0.96 * stream.next_unit();
    const auto stats = infocalc::divergence_stats(FiniteDistribution::binary(p),
                                                  FiniteDistribution::binary(q));
    CHECK(stats.v <= stats.alpha - 1.0 + 1e-10);
  }
}

TEST_CASE("binary entropy") {
  CHECK(infocalc::binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(infocalc::binary_entropy(1.0) == doctest::Approx(0.0));
  CHECK(infocalc::binary_entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(infocalc::binary_entropy(0.11) == doctest::Approx(0.34651533691866612).epsilon(1e-12));
  CHECK_THROWS_AS((void)infocalc::binary_entropy(1.2), Error);
}

TEST_CASE("capacity of canonical channels") {
  const auto noiseless = infocalc::mutual_information_and_capacity(FiniteChannel::identity(2));
  CHECK(noiseless.capacity == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(noiseless.caod[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(noiseless.converged);

  const auto useless = infocalc::mutual_information_and_capacity(
      FiniteChannel::from_rows({{0.3, 0.7}, {0.3, 0.7}}));
  CHECK(useless.capacity == doctest::Approx(0.0).epsilon(1e-10));

  const auto bsc = infocalc::mutual_information_and_capacity(FiniteChannel::binary_symmetric(0.11));
  CHECK(bsc.capacity ==
        doctest::Approx(std::log(2.0) - infocalc::binary_entropy(0.11)).epsilon(1e-9));
  // frozen: ln 2 - h(0.11)
  CHECK(bsc.capacity == doctest::Approx(0.34663184364127915).epsilon(1e-8));
}

TEST_CASE("capacity iterates are nondecreasing and i_xy honors a supplied input") {
  const auto channel = FiniteChannel::from_rows({{0.9, 0.1}, {0.4, 0.6}});
  const auto p_x = FiniteDistribution::validate_and_build({0.25, 0.75});
  const auto result = infocalc::mutual_information_and_capacity(channel, p_x);
  CHECK(result.mutual_information == doctest::Approx(infocalc::mutual_information(channel, p_x)));
  CHECK(result.capacity >= result.mutual_information - 1e-12);
  // direct double-sum evaluation
  const auto p_y = channel.push_forward(p_x);
  double direct = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      direct += p_x[x] * channel(x, y) * std::log(channel(x, y) / p_y[y]);
    }
  }
  CHECK(result.mutual_information == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("gaussian quantile") {
  CHECK(infocalc::gaussian_q_inverse(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(infocalc::gaussian_q_inverse(0.1) == doctest::Approx(1.2815515655446004).epsilon(1e-10));
  // forward-evaluation oracle
  for (double p : {0.01, 0.1, 0.25, 0.6, 0.93}) {
    CHECK(infocalc::gaussian_q(infocalc::gaussian_q_inverse(p)) ==
          doctest::Approx(p).epsilon(1e-10));
  }
  // symmetry
  CHECK(infocalc::gaussian_q_inverse(0.2) ==
        doctest::Approx(-infocalc::gaussian_q_inverse(0.8)).epsilon(1e-10));
  CHECK_THROWS_AS((void)infocalc::gaussian_q_inverse(0.0), Error);
}

TEST_CASE("chi-square cdf against known points") {
  // chi^2_2 is Exp(1/2): CDF(x) = 1 - e^{-x/2}
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(infocalc::chi_square_cdf(2, x) == doctest::Approx(1.0 - std::exp(-x / 2)).epsilon(1e-12));
  }
  // median of chi^2_1 at 0.454936... : CDF = 0.5
  CHECK(infocalc::chi_square_cdf(1, 0.45493642311957283) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("llr distribution degenerate and single-letter cases") {
  const auto same = LlrDistribution::build(kQ, kQ, 5, Weighting::under_p);
  REQUIRE(same.atoms().size() == 1);
  CHECK(same.atoms()[0].llr == doctest::Approx(0.0));
  CHECK(same.total_mass() == doctest::Approx(1.0));

  const auto single = LlrDistribution::build(kP, kQ, 1, Weighting::under_p);
  REQUIRE(single.atoms().size() == 2);
  CHECK(single.atoms()[0].llr == doctest::Approx(std::log(4.0 / 7.0)));
  CHECK(std::exp(single.atoms()[0].log_prob) == doctest::Approx(0.4));
  CHECK(single.atoms()[1].llr == doctest::Approx(std::log(2.0)));
  CHECK(std::exp(single.atoms()[1].log_prob) == doctest::Approx(0.6));
}

TEST_CASE("llr distribution moments match n times the scalar stats") {
  const auto stats = infocalc::divergence_stats(kP, kQ);
  const auto law = LlrDistribution::build(kP, kQ, 50, Weighting::under_p);
  CHECK(law.atoms().size() == 51);
  CHECK(law.mean() == doctest::Approx(50.0 * stats.d).epsilon(1e-10));
  CHECK(law.variance() == doctest::Approx(50.0 * stats.v).epsilon(1e-8));
}

TEST_CASE("change of measure identity under Q") {
  rng::Stream stream(23);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = FiniteDistribution::binary(0.05 + 0.9 * stream.next_unit());
    const auto q = FiniteDistribution::binary(0.05 + 0.9 * stream.next_unit());
    const long n = 1 + static_cast<long>(stream.next_below(40));
    const auto law = LlrDistribution::build(p, q, n, Weighting::under_q);
    double total = 0.0;
    for (const auto& atom : law.atoms()) total += std::exp(atom.log_prob + atom.llr);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("llr distribution on a ternary alphabet merges colliding atoms") {
  // symmetric construction: llr values collide across symbols
  const auto p = FiniteDistribution::validate_and_build({0.2, 0.2, 0.6});
  const auto q = FiniteDistribution::validate_and_build({0.4, 0.4, 0.2});
  const auto law = LlrDistribution::build(p, q, 4, Weighting::under_p);
  // per-symbol llr takes two distinct values, so at most 5 atoms survive
  CHECK(law.atoms().size() <= 5);
  CHECK(law.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 1; i < law.atoms().size(); ++i) {
    CHECK(law.atoms()[i].llr > law.atoms()[i - 1].llr);
  }
}

TEST_CASE("llr distribution rejects one-sided zero atoms") {
  CHECK_THROWS_AS((void)LlrDistribution::build(FiniteDistribution::validate_and_build({1.0, 0.0}),
                                               FiniteDistribution::uniform(2), 2,
                                               Weighting::under_p),
                  Error);
}
