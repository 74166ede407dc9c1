#include "kcausal/dataset.hpp"

#include <json.hpp>

#include "report_json.hpp"

namespace kcausal {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kB64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

ordered_json event_json(const Event& e) { return ordered_json::array({e.t, e.x}); }

Event event_from_json(const ordered_json& j) {
  require(j.is_array() && j.size() == 2, errc::malformed_spec,
          "events are stored as [t, x] pairs");
  return Event{j[0].get<double>(), j[1].get<double>()};
}

ordered_json scheme_json(const SamplingScheme& s) {
  ordered_json j;
  j["kind"] = s.kind;
  if (s.kind == "grid") {
    j["m_t"] = s.m_t;
    j["m_x"] = s.m_x;
    j["jitter"] = s.jitter;
  } else {
    j["n"] = s.n;
  }
  if (s.seed) j["seed"] = *s.seed;
  if (!s.algorithm.empty()) j["algorithm"] = s.algorithm;
  if (s.kind == "grid") j["skipped_sites"] = s.skipped_sites;
  return j;
}

SamplingScheme scheme_from_json(const ordered_json& j) {
  SamplingScheme s;
  s.kind = j.at("kind").get<std::string>();
  require(s.kind == "grid" || s.kind == "random" || s.kind == "explicit",
          errc::malformed_spec, "unknown sampling scheme kind '" + s.kind + "'");
  if (s.kind == "grid") {
    s.m_t = j.at("m_t").get<int>();
    s.m_x = j.at("m_x").get<int>();
    s.jitter = j.at("jitter").get<double>();
    if (j.contains("skipped_sites"))
      s.skipped_sites = j.at("skipped_sites").get<std::vector<int>>();
  } else {
    s.n = j.at("n").get<int>();
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("algorithm")) s.algorithm = j.at("algorithm").get<std::string>();
  return s;
}

}  // namespace

const Rel* Dataset::find_relation(const std::string& name) const {
  for (const auto& [key, rel] : relations)
    if (key == name) return &rel;
  return nullptr;
}

Dataset dataset_from_events(const EventSet& events) {
  Dataset d;
  d.model = events.model;
  d.scheme = events.scheme;
  d.events = events.events;
  return d;
}

EventSet event_set_of(const Dataset& d) {
  // Revalidates the stored events against the model, then restores the
  // recorded provenance over the synthetic "explicit" tag.
  EventSet out = make_event_set(d.model, d.events);
  out.scheme = d.scheme;
  return out;
}

std::vector<std::uint8_t> pack_relation(const Rel& r) {
  const int n = r.size();
  const size_t row_bytes = (static_cast<size_t>(n) + 7) / 8;
  std::vector<std::uint8_t> out(row_bytes * static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    r.row(i).for_each([&](int j) {
      out[static_cast<size_t>(i) * row_bytes + static_cast<size_t>(j) / 8] |=
          static_cast<std::uint8_t>(1u << (j % 8));
    });
  return out;
}

Rel unpack_relation(int n, const std::vector<std::uint8_t>& bytes) {
  require(n >= 0, errc::malformed_spec, "relation size must be nonnegative");
  const size_t row_bytes = (static_cast<size_t>(n) + 7) / 8;
  require(bytes.size() == row_bytes * static_cast<size_t>(n), errc::malformed_spec,
          "packed relation has the wrong byte count");
  Rel out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (bytes[static_cast<size_t>(i) * row_bytes + static_cast<size_t>(j) / 8] &
          (1u << (j % 8)))
        out.set(i, j);
  return out;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const unsigned v = (unsigned{bytes[i]} << 16) | (unsigned{bytes[i + 1]} << 8) |
                       unsigned{bytes[i + 2]};
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += kB64Alphabet[v & 63];
  }
  const size_t rest = bytes.size() - i;
  if (rest == 1) {
    const unsigned v = unsigned{bytes[i]} << 16;
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    const unsigned v = (unsigned{bytes[i]} << 16) | (unsigned{bytes[i + 1]} << 8);
    out += kB64Alphabet[(v >> 18) & 63];
    out += kB64Alphabet[(v >> 12) & 63];
    out += kB64Alphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  require(text.size() % 4 == 0, errc::malformed_spec,
          "base64 payload length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        require(i + 4 == text.size() && k >= 2, errc::malformed_spec,
                "base64 padding may only end the payload");
        vals[k] = 0;
        ++pad;
      } else {
        require(pad == 0, errc::malformed_spec, "base64 character after padding");
        vals[k] = b64_value(c);
        require(vals[k] >= 0, errc::malformed_spec, "invalid base64 character");
      }
    }
    const unsigned v = (static_cast<unsigned>(vals[0]) << 18) |
                       (static_cast<unsigned>(vals[1]) << 12) |
                       (static_cast<unsigned>(vals[2]) << 6) |
                       static_cast<unsigned>(vals[3]);
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  return out;
}

std::string save_dataset(const Dataset& d, int indent) {
  ordered_json j;
  j["version"] = d.version;
  j["model"] = model_spec(d.model);
  j["scheme"] = scheme_json(d.scheme);
  j["events"] = ordered_json::array();
  for (const Event& e : d.events) j["events"].push_back(event_json(e));
  if (d.radius) j["radius"] = *d.radius;
  if (d.iterations) j["iterations"] = *d.iterations;
  ordered_json rels = ordered_json::object();
  for (const auto& [name, rel] : d.relations) {
    ordered_json rj;
    rj["n"] = rel.size();
    rj["rows"] = base64_encode(pack_relation(rel));
    rels[name] = std::move(rj);
  }
  j["relations"] = std::move(rels);
  j["reports"] = ordered_json::array();
  for (const CheckReport& r : d.reports) j["reports"].push_back(detail::report_json(r));
  return j.dump(indent) + "\n";
}

Dataset load_dataset(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::malformed_spec, std::string("dataset is not valid JSON: ") + e.what());
  }
  try {
    Dataset d;
    d.version = j.at("version").get<std::string>();
    require(d.version == kDatasetVersion, errc::malformed_spec,
            "unsupported dataset version '" + d.version + "'");
    d.model = make_model(j.at("model").get<std::string>());
    d.scheme = scheme_from_json(j.at("scheme"));
    for (const auto& ej : j.at("events")) d.events.push_back(event_from_json(ej));
    if (j.contains("radius")) d.radius = j.at("radius").get<double>();
    if (j.contains("iterations")) d.iterations = j.at("iterations").get<int>();
    if (j.contains("relations"))
      for (const auto& item : j.at("relations").items()) {
        const int n = item.value().at("n").get<int>();
        d.relations.emplace_back(
            item.key(),
            unpack_relation(n, base64_decode(item.value().at("rows").get<std::string>())));
      }
    if (j.contains("reports"))
      for (const auto& rj : j.at("reports")) d.reports.push_back(detail::report_from_json(rj));
    return d;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::malformed_spec, std::string("dataset document is malformed: ") + e.what());
  }
}

}  // namespace kcausal
