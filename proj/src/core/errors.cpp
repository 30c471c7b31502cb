#include "core/errors.hpp"

namespace clab {

const char* errc_name(errc code) {
  switch (code) {
    case errc::ok: return "Ok";
    case errc::negative_mass: return "NegativeMass";
    case errc::not_normalizable: return "NotNormalizable";
    case errc::symbol_out_of_range: return "SymbolOutOfRange";
    case errc::too_many_types: return "TooManyTypes";
    case errc::out_of_range: return "OutOfRange";
    case errc::support_mismatch: return "SupportMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::time_too_small: return "TimeTooSmall";
    case errc::degenerate: return "Degenerate";
    case errc::alphabet_too_large: return "AlphabetTooLarge";
    case errc::no_convergence: return "NoConvergence";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::alpha_infinite: return "AlphaInfinite";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::unknown_experiment: return "UnknownExperiment";
    case errc::schema_violation: return "SchemaViolation";
    case errc::io_failure: return "IoFailure";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace clab
