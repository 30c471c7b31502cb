#include "converselab.h"

#include <cstring>
#include <new>
#include <string>

#include "core/bldiv.hpp"
#include "core/bounds.hpp"
#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/infocalc.hpp"
#include "core/measures.hpp"
#include "core/oracles.hpp"
#include "core/version.hpp"

using clab::errc;

struct clab_dist {
  clab::measures::FiniteDistribution value;
};

struct clab_channel {
  clab::measures::FiniteChannel value;
};

namespace {

thread_local std::string g_last_error;

clab_status status_of(errc code) {
  switch (code) {
    case errc::ok: return CLAB_OK;
    case errc::negative_mass: return CLAB_ERR_NEGATIVE_MASS;
    case errc::not_normalizable: return CLAB_ERR_NOT_NORMALIZABLE;
    case errc::symbol_out_of_range: return CLAB_ERR_SYMBOL_OUT_OF_RANGE;
    case errc::too_many_types: return CLAB_ERR_TOO_MANY_TYPES;
    case errc::out_of_range: return CLAB_ERR_OUT_OF_RANGE;
    case errc::support_mismatch: return CLAB_ERR_SUPPORT_MISMATCH;
    case errc::dimension_mismatch: return CLAB_ERR_DIMENSION_MISMATCH;
    case errc::time_too_small: return CLAB_ERR_TIME_TOO_SMALL;
    case errc::degenerate: return CLAB_ERR_DEGENERATE;
    case errc::alphabet_too_large: return CLAB_ERR_ALPHABET_TOO_LARGE;
    case errc::no_convergence: return CLAB_ERR_NO_CONVERGENCE;
    case errc::precondition_violated: return CLAB_ERR_PRECONDITION_VIOLATED;
    case errc::alpha_infinite: return CLAB_ERR_ALPHA_INFINITE;
    case errc::grid_too_coarse: return CLAB_ERR_GRID_TOO_COARSE;
    case errc::unknown_experiment: return CLAB_ERR_UNKNOWN_EXPERIMENT;
    case errc::schema_violation: return CLAB_ERR_SCHEMA_VIOLATION;
    case errc::io_failure: return CLAB_ERR_IO_FAILURE;
    case errc::internal: return CLAB_ERR_INTERNAL;
  }
  return CLAB_ERR_INTERNAL;
}

template <typename Fn>
clab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CLAB_OK;
  } catch (const clab::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLAB_ERR_INTERNAL;
  }
}

void fill_summary(const clab::bounds::BoundReport& report, clab_bound_summary* out) {
  out->total = report.total;
  out->first_order = report.first_order;
  out->second_order = report.second_order;
  out->constant = report.constant;
  out->preconditions_ok = report.preconditions_ok ? 1 : 0;
  out->is_bound = report.is_bound ? 1 : 0;
}

}  // namespace

extern "C" {

const char* clab_version(void) { return clab::kVersion; }

const char* clab_status_name(clab_status status) {
  switch (status) {
    case CLAB_OK: return "Ok";
    case CLAB_ERR_NEGATIVE_MASS: return "NegativeMass";
    case CLAB_ERR_NOT_NORMALIZABLE: return "NotNormalizable";
    case CLAB_ERR_SYMBOL_OUT_OF_RANGE: return "SymbolOutOfRange";
    case CLAB_ERR_TOO_MANY_TYPES: return "TooManyTypes";
    case CLAB_ERR_OUT_OF_RANGE: return "OutOfRange";
    case CLAB_ERR_SUPPORT_MISMATCH: return "SupportMismatch";
    case CLAB_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case CLAB_ERR_TIME_TOO_SMALL: return "TimeTooSmall";
    case CLAB_ERR_DEGENERATE: return "Degenerate";
    case CLAB_ERR_ALPHABET_TOO_LARGE: return "AlphabetTooLarge";
    case CLAB_ERR_NO_CONVERGENCE: return "NoConvergence";
    case CLAB_ERR_PRECONDITION_VIOLATED: return "PreconditionViolated";
    case CLAB_ERR_ALPHA_INFINITE: return "AlphaInfinite";
    case CLAB_ERR_GRID_TOO_COARSE: return "GridTooCoarse";
    case CLAB_ERR_UNKNOWN_EXPERIMENT: return "UnknownExperiment";
    case CLAB_ERR_SCHEMA_VIOLATION: return "SchemaViolation";
    case CLAB_ERR_IO_FAILURE: return "IoFailure";
    case CLAB_ERR_INTERNAL: return "Internal";
    case CLAB_ERR_BAD_ARGUMENT: return "BadArgument";
  }
  return "Unknown";
}

const char* clab_last_error_message(void) { return g_last_error.c_str(); }

clab_status clab_dist_create(const double* probs, size_t len, clab_dist** out) {
  if (probs == nullptr || out == nullptr || len == 0) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    *out = new clab_dist{clab::measures::FiniteDistribution::validate_and_build(
        std::vector<double>(probs, probs + len))};
  });
}

void clab_dist_free(clab_dist* dist) { delete dist; }

size_t clab_dist_size(const clab_dist* dist) {
  return dist == nullptr ? 0 : dist->value.alphabet_size();
}

clab_status clab_dist_probs(const clab_dist* dist, double* out, size_t len) {
  if (dist == nullptr || out == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  if (len < dist->value.alphabet_size()) return CLAB_ERR_BAD_ARGUMENT;
  std::memcpy(out, dist->value.probs().data(), dist->value.alphabet_size() * sizeof(double));
  return CLAB_OK;
}

clab_status clab_channel_create(const double* entries, size_t input_size, size_t output_size,
                                clab_channel** out) {
  if (entries == nullptr || out == nullptr || input_size == 0 || output_size == 0) {
    return CLAB_ERR_BAD_ARGUMENT;
  }
  return guarded([&] {
    *out = new clab_channel{clab::measures::FiniteChannel::from_flat(
        std::vector<double>(entries, entries + input_size * output_size), input_size,
        output_size)};
  });
}

void clab_channel_free(clab_channel* channel) { delete channel; }

clab_status clab_divergence_stats(const clab_dist* p, const clab_dist* q, double* d, double* v,
                                  double* alpha) {
  if (p == nullptr || q == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto stats = clab::infocalc::divergence_stats(p->value, q->value);
    if (d != nullptr) *d = stats.d;
    if (v != nullptr) *v = stats.v;
    if (alpha != nullptr) *alpha = stats.alpha;
  });
}

clab_status clab_binary_entropy(double eps, double* out) {
  if (out == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] { *out = clab::infocalc::binary_entropy(eps); });
}

clab_status clab_gaussian_q_inverse(double p, double* out) {
  if (out == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] { *out = clab::infocalc::gaussian_q_inverse(p); });
}

clab_status clab_capacity(const clab_channel* channel, double* capacity, double* caod,
                          size_t caod_len) {
  if (channel == nullptr || capacity == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  if (caod != nullptr && caod_len < channel->value.output_size()) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto result = clab::infocalc::mutual_information_and_capacity(channel->value);
    *capacity = result.capacity;
    if (caod != nullptr) {
      std::memcpy(caod, result.caod.probs().data(),
                  channel->value.output_size() * sizeof(double));
    }
    if (!result.converged) clab::fail(errc::no_convergence, "capacity iteration hit the cap");
  });
}

clab_status clab_bht_converse_suite(const clab_dist* p, const clab_dist* q, long n, double eps,
                                    clab_bound_summary out[4]) {
  if (p == nullptr || q == nullptr || out == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto suite = clab::bounds::bht_converse_suite(p->value, q->value, n, eps);
    fill_summary(suite.weak, &out[0]);
    fill_summary(suite.blowup, &out[1]);
    fill_summary(suite.smoothing, &out[2]);
    fill_summary(suite.strassen_ref, &out[3]);
  });
}

clab_status clab_np_exact_log_q_mass(const clab_dist* p, const clab_dist* q, long n, double eps,
                                     double* log_q_mass) {
  if (p == nullptr || q == nullptr || log_q_mass == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    *log_q_mass = clab::oracles::np_frontier(p->value, q->value, n,
                                             clab::oracles::NpConstraint::type1_at_most, eps)
                      .log_q_mass;
  });
}

clab_status clab_fano_bound(int kind, double i_wy, long n, double eps, double alpha,
                            clab_bound_summary* out) {
  if (out == nullptr || kind < 0 || kind > 2) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto report = clab::bounds::fano_bound(static_cast<clab::bounds::FanoKind>(kind), i_wy,
                                                 n, eps, alpha);
    fill_summary(report, out);
  });
}

clab_status clab_bl_divergence_dual(const clab_dist* mu_shape, double mu_mass,
                                    const clab_channel* channel, const clab_dist* nu, double c,
                                    double* value) {
  if (mu_shape == nullptr || channel == nullptr || nu == nullptr || value == nullptr) {
    return CLAB_ERR_BAD_ARGUMENT;
  }
  return guarded([&] {
    const auto mu = clab::bldiv::WeightedMeasure::from_distribution(mu_shape->value, mu_mass);
    *value = clab::bldiv::bl_divergence_dual(mu, channel->value, nu->value, c).value;
  });
}

clab_status clab_run_experiment_file(const char* config_path) {
  if (config_path == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto config = clab::config::parse_config_file(config_path);
    clab::experiments::run_experiment(config);
  });
}

clab_status clab_validate_config_file(const char* config_path) {
  if (config_path == nullptr) return CLAB_ERR_BAD_ARGUMENT;
  return guarded([&] {
    const auto config = clab::config::parse_config_file(config_path);
    clab::experiments::validate_config(config);
  });
}

clab_status clab_list_experiments(char* buf, size_t len, size_t* needed) {
  std::string joined;
  for (const auto& name : clab::experiments::experiment_names()) {
    joined += name;
    joined += '\n';
  }
  if (needed != nullptr) *needed = joined.size() + 1;
  if (buf != nullptr && len > 0) {
    const size_t copy = joined.size() + 1 <= len ? joined.size() : len - 1;
    std::memcpy(buf, joined.data(), copy);
    buf[copy] = '\0';
    if (copy < joined.size()) return CLAB_ERR_BAD_ARGUMENT;
  }
  return CLAB_OK;
}

}  // extern "C"
