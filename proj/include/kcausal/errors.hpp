#pragma once

#include <stdexcept>
#include <string>

namespace kcausal {

// Stable error identifiers; the CLI prints the name verbatim so scripts can match on it.
enum class errc {
  empty_event_set,
  non_covering_family,
  out_of_range_index,
  dimension_mismatch,
  event_outside_region,
  not_k_causal,
  not_reflexive,
  not_antisymmetric,
  not_transitive,
  empty_subset,
  carrier_too_large,
  unsupported_oracle,
  malformed_spec,
  region_too_small,
  seed_required,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_event_set: return "EMPTY_EVENT_SET";
    case errc::non_covering_family: return "NON_COVERING_FAMILY";
    case errc::out_of_range_index: return "OUT_OF_RANGE_INDEX";
    case errc::dimension_mismatch: return "DIMENSION_MISMATCH";
    case errc::event_outside_region: return "EVENT_OUTSIDE_REGION";
    case errc::not_k_causal: return "NOT_K_CAUSAL";
    case errc::not_reflexive: return "NOT_REFLEXIVE";
    case errc::not_antisymmetric: return "NOT_ANTISYMMETRIC";
    case errc::not_transitive: return "NOT_TRANSITIVE";
    case errc::empty_subset: return "EMPTY_SUBSET";
    case errc::carrier_too_large: return "CARRIER_TOO_LARGE";
    case errc::unsupported_oracle: return "UNSUPPORTED_ORACLE";
    case errc::malformed_spec: return "MALFORMED_SPEC";
    case errc::region_too_small: return "REGION_TOO_SMALL";
    case errc::seed_required: return "SEED_REQUIRED";
    case errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace kcausal
