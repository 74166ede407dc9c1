#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcausal/relation.hpp"
#include "kcausal/report.hpp"
#include "kcausal/spacetime.hpp"

namespace kcausal {

inline constexpr const char* kDatasetVersion = "1";

// Everything one experiment persists: the model, how it was sampled, the
// derived relations and any check results. Round-trips bit-identically
// through save_dataset/load_dataset (reports drop their in-memory timing:
// timing belongs to run output, not to stored results).
struct Dataset {
  std::string version = kDatasetVersion;
  SpacetimeModel model;
  SamplingScheme scheme;
  std::vector<Event> events;
  std::optional<double> radius;     // set once the topology was materialized
  std::optional<int> iterations;    // closure alternations for the K computation
  std::vector<std::pair<std::string, Rel>> relations;  // insertion-ordered, e.g. I, K
  std::vector<CheckReport> reports;

  bool operator==(const Dataset&) const = default;

  const Rel* find_relation(const std::string& name) const;
};

Dataset dataset_from_events(const EventSet& events);
EventSet event_set_of(const Dataset& d);

// --- wire helpers (exposed for tests) --------------------------------------

// Row-major packed bits: each row is ceil(n/8) bytes, bit (j % 8) of byte
// (j / 8) set iff (i, j) is related, least-significant bit first.
std::vector<std::uint8_t> pack_relation(const Rel& r);
Rel unpack_relation(int n, const std::vector<std::uint8_t>& bytes);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

// --- document serialization -------------------------------------------------

std::string save_dataset(const Dataset& d, int indent = 2);
Dataset load_dataset(const std::string& text);

}  // namespace kcausal
