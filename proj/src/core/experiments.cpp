#include "core/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include <json.hpp>

#include "core/applications.hpp"
#include "core/bldiv.hpp"
#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/infocalc.hpp"
#include "core/measures.hpp"
#include "core/oracles.hpp"
#include "core/rng.hpp"
#include "core/smoothing.hpp"
#include "core/version.hpp"

namespace clab::experiments {

namespace {

using config::ExperimentConfig;
using csvio::Row;
using measures::FiniteChannel;
using measures::FiniteDistribution;

struct Output {
  std::vector<std::string> header;
  std::vector<Row> rows;
  std::vector<PrecondCheck> preconditions;
};

struct Definition {
  const char* name;
  std::function<void(const ExperimentConfig&)> validate;
  std::function<Output(const ExperimentConfig&)> run;
};

FiniteDistribution dist_of(const ExperimentConfig& c, const std::string& key) {
  return FiniteDistribution::validate_and_build(c.vector(key));
}

FiniteChannel channel_of(const ExperimentConfig& c, const std::string& key,
                         const std::string& y_size_key) {
  const auto flat = c.vector(key);
  const long y_size = c.integer(y_size_key);
  if (y_size < 1 || flat.size() % static_cast<std::size_t>(y_size) != 0) {
    fail(errc::schema_violation, "'" + key + "' length must be a multiple of '" + y_size_key + "'");
  }
  return FiniteChannel::from_flat(flat, flat.size() / static_cast<std::size_t>(y_size),
                                  static_cast<std::size_t>(y_size));
}

std::vector<long> n_list_of(const ExperimentConfig& c) {
  std::vector<long> ns;
  for (double v : c.vector("n_list")) {
    const long n = static_cast<long>(std::llround(v));
    if (n < 1) fail(errc::schema_violation, "'n_list' entries must be positive integers");
    ns.push_back(n);
  }
  if (ns.empty()) fail(errc::schema_violation, "'n_list' must be nonempty");
  return ns;
}

// ---- bht-suite -------------------------------------------------------------

void validate_bht_suite(const ExperimentConfig& c) {
  dist_of(c, "p");
  dist_of(c, "q");
  c.number("eps");
  n_list_of(c);
}

Output run_bht_suite(const ExperimentConfig& c) {
  const auto p = dist_of(c, "p");
  const auto q = dist_of(c, "q");
  const double eps = c.number("eps");
  Output out;
  out.header = {"n", "weak", "blowup", "smoothing", "strassen_ref", "np_exact"};
  out.preconditions.push_back({"eps in (0,1)", eps > 0.0 && eps < 1.0});
  for (long n : n_list_of(c)) {
    const auto suite = bounds::bht_converse_suite(p, q, n, eps);
    const auto np = oracles::np_frontier(p, q, n, oracles::NpConstraint::type1_at_most, eps);
    out.rows.push_back(Row{n, suite.weak.total, suite.blowup.total, suite.smoothing.total,
                           suite.strassen_ref.total, -np.log_q_mass});
  }
  return out;
}

// ---- blowup-vs-smoothing-sweep ---------------------------------------------

Output run_blowup_sweep(const ExperimentConfig& c) {
  const auto p = dist_of(c, "p");
  const auto q = dist_of(c, "q");
  const double eps = c.number("eps");
  const auto stats = infocalc::divergence_stats(p, q);
  Output out;
  out.header = {"n", "n_d", "blowup", "smoothing", "blowup_normalized", "smoothing_normalized"};
  for (long n : n_list_of(c)) {
    const auto suite = bounds::bht_converse_suite(p, q, n, eps);
    const double nd = static_cast<double>(n) * stats.d;
    const double nd_sqrt = std::sqrt(static_cast<double>(n));
    const double log_n = std::log(static_cast<double>(n));
    out.rows.push_back(Row{n, nd, suite.blowup.total, suite.smoothing.total,
                           (suite.blowup.total - nd) / (nd_sqrt * std::pow(log_n, 1.5)),
                           (suite.smoothing.total - nd) / nd_sqrt});
  }
  return out;
}

// ---- rhc-certify -----------------------------------------------------------

void validate_rhc(const ExperimentConfig& c) {
  c.integer("dim");
  c.integer("trials");
  c.vector("p_values");
  c.vector("q_values");
  c.vector("t_margins");
}

Output run_rhc(const ExperimentConfig& c) {
  const int dim = static_cast<int>(c.integer("dim"));
  const long trials = c.integer("trials");
  const auto p_values = c.vector("p_values");
  const auto q_values = c.vector("q_values");
  const auto t_margins = c.vector("t_margins");
  Output out;
  out.header = {"p", "q", "t", "trials", "violations", "worst_margin"};
  out.preconditions.push_back({"dim within dense cap", dim >= 1 && dim <= 20});
  rng::Stream stream(c.seed, 0x84c);
  const std::size_t size = std::size_t{1} << dim;
  for (double p : p_values) {
    for (double q : q_values) {
      if (!(q >= 0.0 && q < p && p < 1.0)) continue;
      for (double margin : t_margins) {
        const double t_min = q > 0.0 ? std::log((1.0 - q) / (1.0 - p)) : std::log(1.0 / (1.0 - p));
        const double t = t_min + margin;
        long violations = 0;
        double worst = 1e300;
        for (long trial = 0; trial < trials; ++trial) {
          std::vector<FiniteDistribution> rows;
          rows.reserve(static_cast<std::size_t>(dim));
          for (int i = 0; i < dim; ++i) {
            const double bias = 0.05 + 0.9 * stream.next_unit();
            rows.push_back(FiniteDistribution::binary(bias));
          }
          std::vector<double> values(size);
          for (double& v : values) v = stream.next_unit();
          const measures::TestFunction f(std::move(values), dim, 2);
          const auto report = smoothing::rhc_check(f, rows, p, q, t);
          worst = std::min(worst, report.margin / std::max(report.rhs, 1e-300));
          if (!report.holds) ++violations;
        }
        out.rows.push_back(Row{p, q, t, trials, violations, worst});
      }
    }
  }
  return out;
}

// ---- image-size-certify ----------------------------------------------------

void validate_image_size(const ExperimentConfig& c) {
  c.integer("n");
  c.integer("trials");
  c.number("eta");
  c.number("c");
  dist_of(c, "q_x");
  channel_of(c, "channel", "y_size");
}

Output run_image_size(const ExperimentConfig& c) {
  const int n = static_cast<int>(c.integer("n"));
  const int trials = static_cast<int>(c.integer("trials"));
  const double eta = c.number("eta");
  const double cc = c.number("c");
  const auto channel = channel_of(c, "channel", "y_size");
  const auto q_x = dist_of(c, "q_x");
  const auto nu = channel.push_forward(q_x);
  Output out;
  out.header = {"n", "trials", "skipped", "violations", "max_violation"};
  out.preconditions.push_back({"n small enough for exhaustive evaluation", n <= 12});
  const auto report = bounds::soundness_check_image_size(channel, nu, cc, n, eta, trials, c.seed);
  out.rows.push_back(
      Row{static_cast<long>(n), static_cast<long>(report.trials_run),
          static_cast<long>(report.skipped), static_cast<long>(report.violations),
          report.max_violation});
  return out;
}

// ---- fano-bounds -----------------------------------------------------------

void validate_fano(const ExperimentConfig& c) {
  c.number("i_rate");
  c.number("eps");
  c.number_or("alpha", 1.0);
  n_list_of(c);
}

Output run_fano(const ExperimentConfig& c) {
  const double i_rate = c.number("i_rate");
  const double eps = c.number("eps");
  const double alpha = c.number_or("alpha", 1.0);
  Output out;
  out.header = {"n", "i_wy", "weak", "discrete_smoothing", "gaussian"};
  for (long n : n_list_of(c)) {
    const double i_wy = i_rate * static_cast<double>(n);
    out.rows.push_back(
        Row{n, i_wy, bounds::fano_bound(bounds::FanoKind::weak, i_wy, n, eps).total,
            bounds::fano_bound(bounds::FanoKind::discrete_smoothing, i_wy, n, eps, alpha).total,
            bounds::fano_bound(bounds::FanoKind::gaussian, i_wy, n, eps).total});
  }
  return out;
}

// ---- broadcast-region -------------------------------------------------------

void validate_broadcast(const ExperimentConfig& c) {
  c.number("s1");
  c.number("s2");
  c.integer("n");
  c.number("eps");
  c.integer("grid");
}

Output run_broadcast(const ExperimentConfig& c) {
  const auto points = apps::broadcast_region_gaussian(c.number("s1"), c.number("s2"),
                                                      c.integer("n"), c.number("eps"),
                                                      static_cast<int>(c.integer("grid")));
  Output out;
  out.header = {"alpha", "rate1", "rate2", "rate1_first_order", "rate2_first_order"};
  for (const auto& pt : points) {
    out.rows.push_back(Row{pt.aux.at("alpha"), pt.rate1, pt.rate2,
                           pt.aux.at("rate1_first_order"), pt.aux.at("rate2_first_order")});
  }
  return out;
}

// ---- ht-comm ----------------------------------------------------------------

void validate_ht_comm(const ExperimentConfig& c) {
  dist_of(c, "q_x");
  channel_of(c, "channel", "y_size");
  c.vector("ln_m_list");
  c.integer("n");
  c.number("eps");
}

Output run_ht_comm(const ExperimentConfig& c) {
  const auto q_x = dist_of(c, "q_x");
  const auto channel = channel_of(c, "channel", "y_size");
  const long n = c.integer("n");
  const double eps = c.number("eps");
  Output out;
  out.header = {"ln_m", "theta", "stated", "alpha_minus_one_variant", "first_order",
                "second_order", "constant"};
  const double beta = 1.0 / q_x.min_prob();
  const double window =
      3.0 * beta * std::log(4.0 * static_cast<double>(q_x.alphabet_size()) / (1.0 - eps));
  out.preconditions.push_back({"n > 3 beta ln(4|X|/(1-eps))", static_cast<double>(n) > window});
  for (double ln_m : c.vector("ln_m_list")) {
    const auto report = apps::ht_communication_converse(q_x, channel, ln_m, n, eps);
    out.rows.push_back(Row{ln_m, report.theta, report.stated.total, report.pre_display.total,
                           report.stated.first_order, report.stated.second_order,
                           report.stated.constant});
  }
  return out;
}

// ---- side-info ----------------------------------------------------------------

void validate_side_info(const ExperimentConfig& c) {
  const std::string kind = c.text("kind");
  if (kind == "gaussian") {
    c.number("rho");
    c.number("distortion");
  } else if (kind == "discrete") {
    dist_of(c, "q_x");
    channel_of(c, "channel", "y_size");
  } else {
    fail(errc::schema_violation, "'kind' must be gaussian or discrete");
  }
  c.vector("ln_m1_list");
  c.integer("n");
  c.number("eps");
}

Output run_side_info(const ExperimentConfig& c) {
  const std::string kind = c.text("kind");
  const long n = c.integer("n");
  const double eps = c.number("eps");
  Output out;
  out.header = {"ln_m1", "total", "first_order", "second_order", "constant"};
  if (kind == "gaussian") {
    const double rho = c.number("rho");
    const double distortion = c.number("distortion");
    out.preconditions.push_back({"n >= 20 ln(8/(1-eps))",
                                 static_cast<double>(n) >= 20.0 * std::log(8.0 / (1.0 - eps))});
    for (double ln_m1 : c.vector("ln_m1_list")) {
      const auto report = apps::side_info_converse_gaussian(rho, distortion, ln_m1, n, eps);
      out.rows.push_back(
          Row{ln_m1, report.total, report.first_order, report.second_order, report.constant});
    }
  } else {
    const auto q_x = dist_of(c, "q_x");
    const auto channel = channel_of(c, "channel", "y_size");
    const double beta = 1.0 / q_x.min_prob();
    out.preconditions.push_back(
        {"n >= 3 beta_X ln(4|X|/(1-eps))",
         static_cast<double>(n) >=
             3.0 * beta *
                 std::log(4.0 * static_cast<double>(q_x.alphabet_size()) / (1.0 - eps))});
    for (double ln_m1 : c.vector("ln_m1_list")) {
      const auto report = apps::side_info_converse_discrete(q_x, channel, ln_m1, n, eps);
      out.rows.push_back(
          Row{ln_m1, report.total, report.first_order, report.second_order, report.constant});
    }
  }
  return out;
}

// ---- dp-impossibility ---------------------------------------------------------

void validate_dp(const ExperimentConfig& c) {
  dist_of(c, "p");
  dist_of(c, "q");
  c.number("delta");
  n_list_of(c);
}

Output run_dp(const ExperimentConfig& c) {
  const auto rows = oracles::dp_impossibility_experiment(dist_of(c, "p"), dist_of(c, "q"),
                                                         c.number("delta"), n_list_of(c));
  Output out;
  out.header = {"n", "min_ln_q_mass", "n_d", "normalized_gap"};
  for (const auto& r : rows) {
    out.rows.push_back(Row{r.n, r.min_ln_q_mass, r.n_times_d, r.normalized_gap});
  }
  return out;
}

const std::vector<Definition>& registry() {
  static const std::vector<Definition> defs = {
      {"bht-suite", validate_bht_suite, run_bht_suite},
      {"blowup-vs-smoothing-sweep", validate_bht_suite, run_blowup_sweep},
      {"rhc-certify", validate_rhc, run_rhc},
      {"image-size-certify", validate_image_size, run_image_size},
      {"fano-bounds", validate_fano, run_fano},
      {"broadcast-region", validate_broadcast, run_broadcast},
      {"ht-comm", validate_ht_comm, run_ht_comm},
      {"side-info", validate_side_info, run_side_info},
      {"dp-impossibility", validate_dp, run_dp},
  };
  return defs;
}

const Definition& find_definition(const std::string& name) {
  for (const Definition& def : registry()) {
    if (name == def.name) return def;
  }
  fail(errc::unknown_experiment, "no experiment named '" + name + "'");
}

nlohmann::json value_to_json(const config::Value& v) {
  if (const double* d = std::get_if<double>(&v)) return *d;
  if (const std::string* s = std::get_if<std::string>(&v)) return *s;
  return std::get<std::vector<double>>(v);
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const Definition& def : registry()) names.emplace_back(def.name);
  return names;
}

void validate_config(const config::ExperimentConfig& config) {
  find_definition(config.experiment).validate(config);
}

RunResult run_experiment(const config::ExperimentConfig& config) {
  const Definition& def = find_definition(config.experiment);
  def.validate(config);
  if (config.output_path.empty()) {
    fail(errc::schema_violation, "missing required key 'output_path'");
  }

  const auto start = std::chrono::steady_clock::now();
  Output out = def.run(config);
  const auto stop = std::chrono::steady_clock::now();

  csvio::emit_csv(out.header, out.rows, config.output_path);

  RunResult result;
  result.csv_path = config.output_path;
  result.log_path = config.output_path + ".runlog.jsonl";
  result.rows_written = out.rows.size();
  result.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.preconditions = out.preconditions;

  nlohmann::json log;
  log["experiment"] = config.experiment;
  log["version"] = kVersion;
  log["seed"] = config.seed;
  log["output_path"] = config.output_path;
  log["rows"] = result.rows_written;
  log["wall_ms"] = result.wall_ms;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : config.parameters) params[key] = value_to_json(value);
  log["parameters"] = params;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : out.preconditions) {
    checks.push_back({{"name", check.name}, {"ok", check.ok}});
  }
  log["preconditions"] = checks;

  std::ofstream log_out(result.log_path, std::ios::binary | std::ios::app);
  if (!log_out) fail(errc::io_failure, "cannot open run log '" + result.log_path + "'");
  log_out << log.dump() << "\n";
  return result;
}

}  // namespace clab::experiments
