#include <doctest.h>

#include <cmath>
#include <functional>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/oracles.hpp"
#include "core/rng.hpp"

using namespace clab;
using bounds::BoundReport;
using measures::FiniteChannel;
using measures::FiniteDistribution;

namespace {

const FiniteDistribution kP = FiniteDistribution::validate_and_build({0.6, 0.4});
const FiniteDistribution kQ = FiniteDistribution::validate_and_build({0.3, 0.7});

void check_decomposition(const BoundReport& report) {
  CHECK(report.total ==
        doctest::Approx(report.first_order + report.second_order + report.constant)
            .epsilon(1e-9));
}

}  // namespace

TEST_CASE("bht suite on identical laws") {
  const auto suite = bounds::bht_converse_suite(kQ, kQ, 10, 0.5);
  CHECK(suite.weak.total == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  // alpha = 1 kills the sqrt(n) term
  CHECK(suite.smoothing.total == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(suite.smoothing.second_order == doctest::Approx(0.0));
}

TEST_CASE("bht suite worked number at n = 100") {
  const auto suite = bounds::bht_converse_suite(kP, kQ, 100, 0.1);
  const auto stats = infocalc::divergence_stats(kP, kQ);
  const double big_l = std::log(1.0 / 0.9);
  CHECK(suite.smoothing.first_order == doctest::Approx(100.0 * stats.d).epsilon(1e-12));
  CHECK(suite.smoothing.second_order ==
        doctest::Approx(2.0 * std::sqrt(big_l) * std::sqrt(100.0)).epsilon(1e-12));
  CHECK(suite.smoothing.constant == doctest::Approx(big_l).epsilon(1e-12));
  CHECK(suite.smoothing.total == doctest::Approx(25.801).epsilon(1e-4));
  check_decomposition(suite.smoothing);
  check_decomposition(suite.weak);
  check_decomposition(suite.blowup);

  // t* substituted back reproduces the optimized value
  const double t_star = suite.smoothing.params.at("t_star");
  const double alpha = suite.smoothing.params.at("alpha");
  const double rebuilt = 100.0 * stats.d + (1.0 / t_star) * big_l + big_l +
                         (alpha - 1.0) * 100.0 * t_star;
  CHECK(rebuilt == doctest::Approx(suite.smoothing.total).epsilon(1e-9));

  // r* substituted back reproduces the blowup value
  const double r_star = suite.blowup.params.at("r_star");
  const double k_ratio = suite.blowup.params.at("k_ratio");
  const double boost = 1.0 - std::exp(-r_star * r_star / 100.0);
  const double blowup_rebuilt = (100.0 * stats.d + std::log(2.0)) / boost +
                                r_star * std::log(k_ratio * std::exp(1.0) * 100.0 / r_star);
  CHECK(blowup_rebuilt == doctest::Approx(suite.blowup.total).epsilon(1e-9));
}

TEST_CASE("exact NP value respects every converse bound") {
  for (double eps : {0.05, 0.1, 0.3}) {
    for (long n : {10L, 50L, 200L}) {
      const auto suite = bounds::bht_converse_suite(kP, kQ, n, eps);
      const auto np = oracles::np_frontier(kP, kQ, n, oracles::NpConstraint::type1_at_most, eps);
      const double exact = -np.log_q_mass;
      CHECK(exact <= suite.weak.total + 1e-9);
      CHECK(exact <= suite.blowup.total + 1e-9);
      CHECK(exact <= suite.smoothing.total + 1e-9);
    }
  }
}

TEST_CASE("smoothing bound is monotone in n, eps, and alpha") {
  const auto base = bounds::bht_converse_suite(kP, kQ, 100, 0.1).smoothing;
  CHECK(bounds::bht_converse_suite(kP, kQ, 150, 0.1).smoothing.total >= base.total);
  CHECK(bounds::bht_converse_suite(kP, kQ, 100, 0.2).smoothing.total >= base.total);
}

TEST_CASE("blowup bound needs positive Q") {
  const auto degenerate = FiniteDistribution::validate_and_build({1.0, 0.0});
  const auto p_sub = FiniteDistribution::validate_and_build({1.0, 0.0});
  const auto suite = bounds::bht_converse_suite(p_sub, degenerate, 10, 0.1);
  CHECK(!suite.blowup.preconditions_ok);
}

TEST_CASE("achievability report on degenerate and worked cases") {
  const auto same = bounds::bht_achievability(kQ, kQ, 7, 0.3);
  CHECK(same.threshold == doctest::Approx(0.0));
  CHECK(same.exact_type2 == doctest::Approx(1.0));

  const auto single = bounds::bht_achievability(kP, kQ, 1, 0.4);
  CHECK(single.threshold == doctest::Approx(std::log(2.0)));
  CHECK(single.exact_type1 == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(single.exact_type2 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(single.exact_type2 <= single.chernoff_bound + 1e-12);
}

TEST_CASE("achievability: chernoff dominates the exact tail on random instances") {
  rng::Stream stream(211);
  for (int rep = 0; rep < 50; ++rep) {
    const auto p = FiniteDistribution::binary(0.1 + 0.8 * stream.next_unit());
    const auto q = FiniteDistribution::binary(0.1 + 0.8 * stream.next_unit());
    const long n = 1 + static_cast<long>(stream.next_below(30));
    const double eps = 0.05 + 0.9 * stream.next_unit();
    const auto report = bounds::bht_achievability(p, q, n, eps);
    CHECK(report.exact_type2 <= report.chernoff_bound * (1.0 + 1e-12));
    CHECK(report.exact_type1 <= eps + 1e-12);
  }
}

TEST_CASE("blowup lemma numbers reproduce the worked example") {
  // n = 5e9, P[A] = e^{-100}, c = 10 gives radius exactly 1e6
  const auto numbers = bounds::blowup_lemma_numbers(std::exp(-100.0), 10.0, 5e9, 1.0);
  CHECK(numbers.radius == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(numbers.counting_upper == 0.0);

  // c -> 0 limit
  const auto small_c = bounds::blowup_lemma_numbers(0.25, 1e-9, 100.0, 2.0);
  CHECK(small_c.radius ==
        doctest::Approx(std::sqrt(50.0) * std::sqrt(std::log(4.0))).epsilon(1e-6));
}

TEST_CASE("fano bounds") {
  // eps -> 0 collapses the smoothing terms
  const auto tiny = bounds::fano_bound(bounds::FanoKind::discrete_smoothing, 5.0, 100, 1e-9, 2.0);
  CHECK(tiny.total == doctest::Approx(5.0).epsilon(1e-3));

  // alpha = 1 leaves only the constant
  const auto flat = bounds::fano_bound(bounds::FanoKind::discrete_smoothing, 5.0, 100, 0.1, 1.0);
  CHECK(flat.total == doctest::Approx(5.0 + std::log(1.0 / 0.9)).epsilon(1e-12));

  // worked gaussian number
  const auto gauss = bounds::fano_bound(bounds::FanoKind::gaussian, 34.66, 100, 0.1);
  CHECK(gauss.second_order == doctest::Approx(4.5904).epsilon(1e-4));
  CHECK(gauss.constant == doctest::Approx(0.10536).epsilon(1e-4));
  check_decomposition(gauss);

  const auto weak = bounds::fano_bound(bounds::FanoKind::weak, 3.0, 10, 0.25);
  CHECK(weak.total == doctest::Approx((3.0 + std::log(2.0)) / 0.75).epsilon(1e-12));
}

TEST_CASE("image size bound variants") {
  bounds::ImageSizeInputs in;
  in.divergence = 0.7;
  in.c = 2.0;
  in.eta = 1.0;  // ln(1/eta) = 0 collapses everything except d
  in.n = 100;
  in.alpha = 3.0;
  const auto collapsed = bounds::image_size_bound(bounds::ImageSizeVariant::discrete_d, in);
  CHECK(collapsed.total == doctest::Approx(0.7).epsilon(1e-12));

  in.eta = 0.5;
  in.alpha = 1.0;
  const auto no_slack = bounds::image_size_bound(bounds::ImageSizeVariant::discrete_d, in);
  CHECK(no_slack.total == doctest::Approx(0.7 + 2.0 * std::log(2.0)).epsilon(1e-12));

  // worked e15 instance: identity channel, uniform binary Q_X, nu = Q_Y,
  // c = 2, delta = 0.1, eta = 0.5, n = 200
  bounds::ImageSizeInputs typical;
  typical.divergence = std::log(2.0);  // (c - 1) H(Q_X)
  typical.c = 2.0;
  typical.eta = 0.5;
  typical.n = 200;
  typical.alpha = 2.0;  // identity rows against the uniform reference
  typical.beta_x = 2.0;
  typical.delta = 0.1;
  typical.x_size = 2;
  const auto e15 = bounds::image_size_bound(bounds::ImageSizeVariant::discrete_typical, typical);
  const double expected_a = std::log(std::pow(2.0, 2.0) * std::pow(2.0, 3.0)) *
                                std::sqrt(6.0 * std::log(20.0)) +
                            2.0 * 2.0 * std::sqrt(1.0 * std::log(2.0));
  CHECK(e15.first_order == doctest::Approx(200.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(e15.second_order == doctest::Approx(expected_a * std::sqrt(200.0)).epsilon(1e-12));
  CHECK(e15.constant == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  // gaussian variants assemble term by term
  bounds::ImageSizeInputs gauss;
  gauss.divergence = 0.45;
  gauss.c = 1.5;
  gauss.eta = 0.25;
  gauss.n = 400;
  const auto g_d = bounds::image_size_bound(bounds::ImageSizeVariant::gaussian_d, gauss);
  CHECK(g_d.second_order ==
        doctest::Approx(1.5 * std::sqrt(2.0 * 400.0 * std::log(4.0))).epsilon(1e-12));
  gauss.delta = 0.1;
  const auto g_typ = bounds::image_size_bound(bounds::ImageSizeVariant::gaussian_typical, gauss);
  CHECK(g_typ.second_order ==
        doctest::Approx(std::sqrt(6.0 * 400.0 * std::log(20.0)) +
                        1.5 * std::sqrt(2.0 * 400.0 * std::log(4.0)))
            .epsilon(1e-12));
  CHECK(g_typ.first_order == doctest::Approx(400.0 * 0.45).epsilon(1e-12));

  // n window enforcement
  bounds::ImageSizeInputs undersized = typical;
  undersized.n = 5;
  bool hit = false;
  try {
    (void)bounds::image_size_bound(bounds::ImageSizeVariant::discrete_typical, undersized);
  } catch (const Error& e) {
    hit = e.code() == errc::precondition_violated;
  }
  CHECK(hit);
}

TEST_CASE("alternative image-size variant at the caller's t") {
  bounds::ImageSizeInputs in;
  in.divergence = 0.3;
  in.c = 2.0;
  in.n = 100;
  in.alpha = 1.5;
  in.beta_x = 2.0;
  in.delta = 0.2;
  in.t = 0.05;
  in.x_size = 2;
  const auto report = bounds::image_size_bound(bounds::ImageSizeVariant::alternative, in);
  const double expected_first = 100.0 * 0.3 + 2.0 * 0.5 * 100.0 * 0.05;
  CHECK(report.first_order == doctest::Approx(expected_first).epsilon(1e-12));
  const double expected_counting =
      (2.0 * std::log(1.5) + 3.0 * std::log(2.0)) * std::sqrt(100.0 * 6.0 * std::log(10.0));
  CHECK(report.second_order == doctest::Approx(expected_counting).epsilon(1e-12));
}

TEST_CASE("image size soundness sweep at n = 1") {
  const auto channel = FiniteChannel::from_rows({{0.8, 0.2}, {0.35, 0.65}});
  const auto nu = FiniteDistribution::validate_and_build({0.45, 0.55});
  const auto report = bounds::soundness_check_image_size(channel, nu, 1.3, 1, 0.5, 100, 404);
  CHECK(report.violations == 0);
  CHECK(report.trials_run + report.skipped == 100);
  CHECK(report.max_violation <= 1e-9);
}

TEST_CASE("image size soundness sweep at n = 2") {
  const auto channel = FiniteChannel::from_rows({{0.7, 0.3}, {0.25, 0.75}});
  const auto nu = FiniteDistribution::uniform(2);
  const auto report = bounds::soundness_check_image_size(channel, nu, 2.0, 2, 0.4, 60, 505);
  CHECK(report.violations == 0);
  CHECK(report.max_violation <= 1e-9);
}
