#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kcausal {

struct Witness {
  std::vector<int> points;
  std::string detail;
  bool operator==(const Witness&) const = default;
};

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

// Outcome of one property check. Serialization is fully deterministic: params
// keep insertion order and elapsed_seconds is deliberately left out of the
// JSON body (callers report timing once, at the top level of their output).
struct CheckReport {
  std::string check;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;

  bool operator==(const CheckReport&) const = default;

  void add_witness(std::vector<int> points, std::string detail) {
    witnesses.push_back(Witness{std::move(points), std::move(detail)});
    holds = false;
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
  void set_param(std::string key, bool v) { params.emplace_back(std::move(key), v); }
  void set_param(std::string key, int v) {
    params.emplace_back(std::move(key), static_cast<std::int64_t>(v));
  }
  void set_param(std::string key, std::int64_t v) { params.emplace_back(std::move(key), v); }
  void set_param(std::string key, std::size_t v) {
    params.emplace_back(std::move(key), static_cast<std::int64_t>(v));
  }
  void set_param(std::string key, double v) { params.emplace_back(std::move(key), v); }
  void set_param(std::string key, std::string v) {
    params.emplace_back(std::move(key), std::move(v));
  }
  void set_param(std::string key, const char* v) {
    params.emplace_back(std::move(key), std::string(v));
  }
};

// JSON text for one report (object with check/holds/witnesses/params/notes).
std::string report_to_json(const CheckReport& report, int indent = 2);

// JSON text for a run of several reports plus a single timing field.
std::string reports_to_json(const std::vector<CheckReport>& reports, double elapsed_seconds,
                            int indent = 2);

}  // namespace kcausal
