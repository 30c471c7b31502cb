#include "core/applications.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/bldiv.hpp"
#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/rng.hpp"

namespace clab::apps {

namespace {

void check_eps(double eps) {
  if (!(eps > 1e-12 && eps < 1.0 - 1e-12)) {
    fail(errc::out_of_range, "eps must lie in (0,1) away from the endpoints");
  }
}

double cap_c(double snr) { return 0.5 * std::log1p(snr); }

}  // namespace

BoundReport channel_coding_converse(const FiniteChannel& channel, long n, double eps) {
  check_eps(eps);
  if (n < 1) fail(errc::out_of_range, "need n >= 1");
  const auto cap = infocalc::mutual_information_and_capacity(channel);
  const double big_l = std::log(1.0 / (1.0 - eps));
  const double nd = static_cast<double>(n);
  const double y_size = static_cast<double>(channel.output_size());

  BoundReport report = bounds::make_report(nd * cap.capacity,
                                           2.0 * std::sqrt(y_size * big_l) * std::sqrt(nd), big_l);
  report.params["capacity"] = cap.capacity;
  // true density bound against the uniform reference; tighter when max row
  // entry is below 1
  const double alpha_uniform =
      channel.sup_density_ratio(FiniteDistribution::uniform(channel.output_size()));
  report.params["alpha_uniform"] = alpha_uniform;
  const double tight_second = 2.0 * std::sqrt(big_l) * std::sqrt(nd * (alpha_uniform - 1.0));
  report.params["tight_second_order"] = std::min(tight_second, report.second_order);
  if (!cap.converged) {
    report.preconditions_ok = false;
    report.notes.push_back("capacity iteration hit the cap; best iterate used");
  }
  return report;
}

BoundReport output_distribution_gap(const FiniteChannel& channel, double ln_m, long n,
                                    double eps) {
  BoundReport base = channel_coding_converse(channel, n, eps);
  BoundReport report = base;
  report.first_order = base.first_order - ln_m;
  report.total = report.first_order + report.second_order + report.constant;
  report.params["ln_m"] = ln_m;
  if (report.total < 0.0) {
    report.total = 0.0;
    report.notes.push_back(
        "clamped at 0: divergence is nonnegative, so the assumed (n, M, eps) code is infeasible");
  }
  return report;
}

std::vector<RegionPoint> broadcast_region_gaussian(double s1, double s2, long n, double eps,
                                                   int grid) {
  check_eps(eps);
  if (!(s1 > 0.0 && s2 > 0.0)) fail(errc::out_of_range, "SNRs must be positive");
  if (grid < 2) fail(errc::grid_too_coarse, "need at least 2 grid points");
  const double big_l = std::log(1.0 / (1.0 - eps));
  const double nd = static_cast<double>(n);
  const double additive = std::sqrt(2.0 * nd * big_l) + big_l;

  std::vector<RegionPoint> points;
  points.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(grid - 1);
    RegionPoint pt;
    pt.rate1 = nd * cap_c(alpha * s1) + additive;
    pt.rate2 = nd * cap_c((1.0 - alpha) * s2 / (alpha * s2 + 1.0)) + additive;
    pt.aux["alpha"] = alpha;
    pt.aux["rate1_first_order"] = nd * cap_c(alpha * s1);
    pt.aux["rate2_first_order"] = nd * cap_c((1.0 - alpha) * s2 / (alpha * s2 + 1.0));
    points.push_back(std::move(pt));
  }
  return points;
}

namespace {

double conditional_mutual_information(const FiniteChannel& channel, const JointUX& joint) {
  // I(X;Y|U) = sum_u P_U(u) I(X;Y | U = u)
  double value = 0.0;
  for (std::size_t u = 0; u < joint.p_u.size(); ++u) {
    if (joint.p_u[u] == 0.0) continue;
    value += joint.p_u[u] * infocalc::mutual_information(channel, joint.x_given_u[u]);
  }
  return value;
}

double aux_output_mutual_information(const FiniteChannel& channel, const JointUX& joint) {
  // I(U;Z) = sum_u P_U(u) D(P_{Z|U=u} || P_Z)
  std::vector<double> p_z(channel.output_size(), 0.0);
  std::vector<FiniteDistribution> z_given_u;
  z_given_u.reserve(joint.p_u.size());
  for (std::size_t u = 0; u < joint.p_u.size(); ++u) {
    const FiniteDistribution out = channel.push_forward(joint.x_given_u[u]);
    for (std::size_t z = 0; z < p_z.size(); ++z) p_z[z] += joint.p_u[u] * out[z];
    z_given_u.push_back(out);
  }
  const auto marginal = FiniteDistribution::validate_and_build(std::move(p_z));
  double value = 0.0;
  for (std::size_t u = 0; u < joint.p_u.size(); ++u) {
    if (joint.p_u[u] == 0.0) continue;
    value += joint.p_u[u] * infocalc::relative_entropy(z_given_u[u], marginal);
  }
  return value;
}

}  // namespace

std::vector<RegionPoint> broadcast_region_discrete(const FiniteChannel& channel_y,
                                                   const FiniteChannel& channel_z,
                                                   const std::vector<JointUX>& candidates,
                                                   long n, double eps, int search_candidates,
                                                   std::uint64_t seed) {
  check_eps(eps);
  if (channel_y.input_size() != channel_z.input_size()) {
    fail(errc::dimension_mismatch, "broadcast components must share the input alphabet");
  }
  const double big_l = std::log(1.0 / (1.0 - eps));
  const double nd = static_cast<double>(n);
  const double add_y = 2.0 * std::sqrt(static_cast<double>(channel_y.output_size()) * nd * big_l) + big_l;
  const double add_z = 2.0 * std::sqrt(static_cast<double>(channel_z.output_size()) * nd * big_l) + big_l;

  std::vector<JointUX> all = candidates;
  if (search_candidates > 0) {
    rng::Stream stream(seed, 0xbc57);
    const std::size_t nx = channel_y.input_size();
    const std::size_t k = nx + 1;
    for (int s = 0; s < search_candidates; ++s) {
      JointUX joint;
      joint.p_u.resize(k);
      double total = 0.0;
      for (double& w : joint.p_u) {
        w = -std::log(stream.next_unit_positive());
        total += w;
      }
      for (double& w : joint.p_u) w /= total;
      for (std::size_t u = 0; u < k; ++u) {
        std::vector<double> row(nx);
        double rt = 0.0;
        for (double& v : row) {
          v = -std::log(stream.next_unit_positive());
          rt += v;
        }
        for (double& v : row) v /= rt;
        joint.x_given_u.push_back(FiniteDistribution::validate_and_build(std::move(row)));
      }
      all.push_back(std::move(joint));
    }
  }

  std::vector<RegionPoint> points;
  points.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const JointUX& joint = all[i];
    if (joint.p_u.size() != joint.x_given_u.size()) {
      fail(errc::dimension_mismatch, "P_U and P_{X|U} sizes differ");
    }
    RegionPoint pt;
    const double i_xy_u = conditional_mutual_information(channel_y, joint);
    const double i_uz = aux_output_mutual_information(channel_z, joint);
    pt.rate1 = nd * i_xy_u + add_y;
    pt.rate2 = nd * i_uz + add_z;
    pt.aux["candidate"] = static_cast<double>(i);
    pt.aux["i_xy_given_u"] = i_xy_u;
    pt.aux["i_uz"] = i_uz;
    pt.aux["search_based"] = i < candidates.size() ? 0.0 : 1.0;
    points.push_back(std::move(pt));
  }
  return points;
}

HtCommReport ht_communication_converse(const FiniteDistribution& q_x, const FiniteChannel& channel,
                                       double ln_m, long n, double eps) {
  check_eps(eps);
  if (ln_m < 0.0) fail(errc::out_of_range, "need ln M >= 0");
  const double beta = 1.0 / q_x.min_prob();
  const double x_size = static_cast<double>(q_x.alphabet_size());
  const double nd = static_cast<double>(n);
  const double window = 3.0 * beta * std::log(4.0 * x_size / (1.0 - eps));
  if (nd <= window) {
    fail(errc::precondition_violated,
         "need n > 3 beta ln(4|X|/(1-eps)) = " + std::to_string(window));
  }
  const FiniteDistribution q_y = channel.push_forward(q_x);
  const double alpha = channel.sup_density_ratio(q_y);
  if (std::isinf(alpha)) fail(errc::alpha_infinite, "density against Q_Y unbounded");

  const auto envelope = bldiv::dstar_envelope(q_x, channel, q_y, 1.0,
                                              bldiv::EnvelopeMode::theta_of_r(ln_m / nd));
  const double theta = envelope.value;

  const double counting = 2.0 * std::log(alpha * beta) * std::sqrt(window);
  const double constant = -2.0 * std::log(4.0 / (1.0 - eps));
  auto assemble = [&](double smoothing_coefficient) {
    BoundReport report = bounds::make_report(
        -nd * theta,
        -(counting + 2.0 * std::sqrt(smoothing_coefficient * std::log(4.0 / (1.0 - eps)))) *
            std::sqrt(nd),
        constant);
    report.params["theta"] = theta;
    report.params["alpha"] = alpha;
    report.params["beta"] = beta;
    if (envelope.lower_bound_only) {
      report.preconditions_ok = false;
      report.notes.push_back("rate envelope is search-based for |X| > 2; bound not certified");
    }
    return report;
  };

  HtCommReport out;
  out.stated = assemble(alpha);
  out.pre_display = assemble(alpha - 1.0);
  out.pre_display.notes.push_back("pre-optimization display variant with (alpha - 1)");
  out.theta = theta;
  out.envelope_exact = !envelope.lower_bound_only;
  return out;
}

BoundReport side_info_converse_discrete(const FiniteDistribution& q_x,
                                        const FiniteChannel& channel, double ln_m1, long n,
                                        double eps) {
  check_eps(eps);
  if (ln_m1 < 0.0) fail(errc::out_of_range, "need ln M1 >= 0");
  const double beta = 1.0 / q_x.min_prob();
  const double x_size = static_cast<double>(q_x.alphabet_size());
  const double y_size = static_cast<double>(channel.output_size());
  const double nd = static_cast<double>(n);
  const double window = 3.0 * beta * std::log(4.0 * x_size / (1.0 - eps));
  if (nd < window) {
    fail(errc::precondition_violated,
         "need n >= 3 beta_X ln(4|X|/(1-eps)) = " + std::to_string(window));
  }
  const auto envelope = bldiv::dstar_envelope(
      q_x, channel, channel.push_forward(q_x), 1.0,
      bldiv::EnvelopeMode::cond_entropy_of_r(ln_m1 / nd));
  const double inf_h = envelope.value;

  BoundReport report = bounds::make_report(
      nd * inf_h,
      -(2.0 * std::log(y_size * beta) * std::sqrt(window) +
        2.0 * std::sqrt(y_size * std::log(2.0 / (1.0 - eps)))) *
          std::sqrt(nd),
      -2.0 * std::log(4.0 / (1.0 - eps)));
  report.params["inf_cond_entropy"] = inf_h;
  report.params["beta_x"] = beta;
  if (envelope.lower_bound_only) {
    report.preconditions_ok = false;
    report.notes.push_back("conditional-entropy envelope is search-based for |X| > 2");
  }
  return report;
}

BoundReport side_info_converse_gaussian(double rho, double distortion, double ln_m1, long n,
                                        double eps) {
  check_eps(eps);
  if (!(std::abs(rho) < 1.0)) fail(errc::out_of_range, "|rho| must be < 1");
  if (!(distortion > 0.0)) fail(errc::out_of_range, "need D > 0");
  if (ln_m1 < 0.0) fail(errc::out_of_range, "need ln M1 >= 0");
  const double nd = static_cast<double>(n);
  if (nd < 20.0 * std::log(8.0 / (1.0 - eps))) {
    fail(errc::precondition_violated, "need n >= 20 ln(8/(1-eps))");
  }
  const double rho_sq = rho * rho;
  const double first =
      0.5 * nd * std::log((1.0 - rho_sq + rho_sq * std::exp(-2.0 * ln_m1 / nd)) / distortion);
  BoundReport report = bounds::make_report(
      first, -4.0 * std::sqrt(std::log(8.0 / (1.0 - eps))) * std::sqrt(nd),
      -2.0 * std::log(4.0 / (1.0 - eps)));
  report.params["rho"] = rho;
  report.params["distortion"] = distortion;
  report.params["ln_m1"] = ln_m1;
  return report;
}

}  // namespace clab::apps
