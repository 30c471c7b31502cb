#pragma once

#include <stdexcept>
#include <string>

namespace clab {

enum class errc {
  ok = 0,
  negative_mass,
  not_normalizable,
  symbol_out_of_range,
  too_many_types,
  out_of_range,
  support_mismatch,
  dimension_mismatch,
  time_too_small,
  degenerate,
  alphabet_too_large,
  no_convergence,
  precondition_violated,
  alpha_infinite,
  grid_too_coarse,
  unknown_experiment,
  schema_violation,
  io_failure,
  internal,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace clab
