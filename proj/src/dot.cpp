#include "kcausal/dot.hpp"

namespace kcausal {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string relation_to_dot(const Rel& r, const std::string& name) {
  std::string out = "digraph " + quoted(name) + " {\n";
  for (int i = 0; i < r.size(); ++i) out += "  " + std::to_string(i) + ";\n";
  for (int i = 0; i < r.size(); ++i)
    r.row(i).for_each([&](int j) {
      out += "  " + std::to_string(i) + " -> " + std::to_string(j) + ";\n";
    });
  out += "}\n";
  return out;
}

Rel hasse_diagram(const Rel& order) {
  Rel strict = order;
  for (int i = 0; i < strict.size(); ++i) strict.reset(i, i);
  Rel covers = strict;
  covers -= compose(strict, strict);
  return covers;
}

}  // namespace kcausal
