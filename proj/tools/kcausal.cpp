// Command-line front end: sample analytic spacetime models, materialize the
// closed causal relation, run property checks, compare topologies, and export
// graphs. Exit codes: 0 all checks pass, 1 property violation, 2 usage,
// 3 I/O or corrupt dataset.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kcausal/dataset.hpp"
#include "kcausal/dot.hpp"
#include "kcausal/suite.hpp"

namespace {

using namespace kcausal;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out.good()) throw io_error("failed while writing '" + path + "'");
}

Dataset load_dataset_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return load_dataset(text);
  } catch (const error& e) {
    throw io_error("dataset '" + path + "' is unusable — " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int parse_dim(const std::string& text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc{} && ptr == text.data() + text.size() && value >= 1,
          errc::malformed_spec, "bad lattice dimension '" + text + "'");
  return value;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Rebuild the in-memory structures the checks need from a stored dataset.
SuiteContext context_from_dataset(const Dataset& d, std::optional<double> margin) {
  const Rel* chrono = d.find_relation("I");
  const Rel* k = d.find_relation("K");
  require(chrono != nullptr && k != nullptr && d.radius.has_value(), errc::malformed_spec,
          "dataset has no computed relations; run `relations` on it first");

  EventSet es = event_set_of(d);
  require(chrono->size() == es.size() && k->size() == es.size(),
          errc::dimension_mismatch, "stored relations do not match the event count");

  CausalStructure c{std::move(es), FiniteTopology::discrete(1), Rel(1), Rel(1),
                    d.iterations.value_or(0), *d.radius};
  c.topology = ball_topology(c.events, c.radius);
  c.chrono = *chrono;
  c.k = *k;
  return make_suite_context(std::move(c), margin);
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = "check,holds,witnesses\n";
  for (const CheckReport& r : reports) {
    out += r.check;
    out += r.holds ? ",true," : ",false,";
    out += std::to_string(r.witnesses.size());
    out += '\n';
  }
  return out;
}

// --- subcommands ------------------------------------------------------------

int cmd_sample(const std::string& model_str, const std::string& grid_str,
               std::optional<int> n_events, std::optional<std::uint64_t> seed,
               double jitter, const std::string& out_path) {
  EventSet events;
  try {
    const SpacetimeModel model = make_model(model_str);
    if (!grid_str.empty()) {
      const size_t cut = grid_str.find('x');
      require(cut != std::string::npos, errc::malformed_spec,
              "grid must look like MtxMx, e.g. 20x20");
      GridScheme scheme;
      scheme.m_t = parse_dim(grid_str.substr(0, cut));
      scheme.m_x = parse_dim(grid_str.substr(cut + 1));
      scheme.jitter = jitter;
      scheme.seed = seed;
      events = sample(model, scheme);
    } else {
      require(n_events.has_value(), errc::malformed_spec,
              "pass --grid MtxMx or --n N to choose a sampler");
      require(jitter == 0.0, errc::malformed_spec, "--jitter only applies to grids");
      events = sample(model, RandomScheme{*n_events, seed});
    }
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  write_file(out_path, save_dataset(dataset_from_events(events)));
  return kExitPass;
}

int cmd_relations(const std::string& in_path, std::optional<double> radius,
                  const std::string& out_path) {
  Dataset d = load_dataset_file(in_path);
  try {
    CausalStructure c = build_causal_structure(event_set_of(d), radius);
    d.radius = c.radius;
    d.iterations = c.iterations;
    std::erase_if(d.relations, [](const auto& entry) {
      return entry.first == "I" || entry.first == "K";
    });
    d.relations.emplace_back("I", std::move(c.chrono));
    d.relations.emplace_back("K", std::move(c.k));
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::malformed_spec ? kExitUsage : kExitViolation;
  }
  write_file(out_path, save_dataset(d));
  return kExitPass;
}

int cmd_check(const std::string& in_path, const std::string& checks_csv,
              std::optional<double> margin, const std::string& format) {
  const Dataset d = load_dataset_file(in_path);
  const std::vector<std::string> names = split_list(checks_csv);
  if (names.empty()) {
    std::cerr << "MALFORMED_SPEC: --check needs at least one name\n";
    return kExitUsage;
  }

  std::vector<CheckReport> reports;
  const auto start = std::chrono::steady_clock::now();
  try {
    const SuiteContext ctx = context_from_dataset(d, margin);
    for (const std::string& name : names) {
      std::vector<CheckReport> batch = run_check(ctx, name);
      for (CheckReport& r : batch) reports.push_back(std::move(r));
    }
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::malformed_spec ? kExitUsage : kExitViolation;
  }

  bool all_hold = true;
  for (const CheckReport& r : reports) all_hold = all_hold && r.holds;
  if (format == "csv")
    std::cout << reports_to_csv(reports);
  else
    std::cout << reports_to_json(reports, elapsed_since(start)) << "\n";
  return all_hold ? kExitPass : kExitViolation;
}

int cmd_compare(const std::string& in_path, const std::string& left,
                const std::string& right, std::optional<double> margin) {
  const Dataset d = load_dataset_file(in_path);
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  try {
    const SuiteContext ctx = context_from_dataset(d, margin);
    report = compare_families(ctx, left, right);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::malformed_spec ? kExitUsage : kExitViolation;
  }
  std::cout << reports_to_json({report}, elapsed_since(start)) << "\n";
  return report.holds ? kExitPass : kExitViolation;
}

int cmd_export(const std::string& in_path, const std::string& what,
               const std::string& out_path) {
  const Dataset d = load_dataset_file(in_path);
  std::string dot;
  try {
    if (what == "hasse") {
      const Rel* k = d.find_relation("K");
      require(k != nullptr, errc::malformed_spec,
              "dataset has no K relation; run `relations` on it first");
      const PosetHandle poset = validate_order(k_order(*k));
      dot = relation_to_dot(hasse_diagram(poset.order), "hasse");
    } else if (what.rfind("relation:", 0) == 0) {
      const std::string name = what.substr(9);
      const Rel* rel = d.find_relation(name);
      require(rel != nullptr, errc::malformed_spec,
              "dataset has no relation named '" + name + "'");
      dot = relation_to_dot(*rel, name);
    } else {
      fail(errc::malformed_spec,
           "--what must be relation:NAME or hasse, got '" + what + "'");
    }
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::malformed_spec ? kExitUsage : kExitViolation;
  }
  write_file(out_path, dot);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite causal-structure laboratory: sample 1+1-dimensional analytic "
      "models, build the smallest closed transitive relation over the "
      "chronology, and check order/topology properties"};
  app.require_subcommand(1);

  auto* sample_cmd = app.add_subcommand("sample", "draw an event set from a model");
  std::string model_str = "minkowski";
  std::string grid_str;
  std::optional<int> n_events;
  std::optional<std::uint64_t> seed;
  double jitter = 0.0;
  std::string sample_out;
  sample_cmd->add_option("--model", model_str, "model spec KIND[:key=value]...");
  auto* grid_opt = sample_cmd->add_option("--grid", grid_str, "lattice layout MtxMx");
  auto* n_opt = sample_cmd->add_option("--n", n_events, "uniform random event count");
  sample_cmd->add_option("--seed", seed, "RNG seed (recorded in the dataset)");
  sample_cmd->add_option("--jitter", jitter, "lattice jitter in chart units");
  sample_cmd->add_option("--out", sample_out, "output dataset file")->required();
  grid_opt->excludes(n_opt);

  auto* relations_cmd =
      app.add_subcommand("relations", "materialize topology and causal relations");
  std::string rel_in, rel_out;
  std::optional<double> rel_radius;
  relations_cmd->add_option("--in", rel_in, "input dataset")->required();
  relations_cmd->add_option("--radius", rel_radius, "ball radius (default: spacing rule)");
  relations_cmd->add_option("--out", rel_out, "output dataset")->required();

  auto* check_cmd = app.add_subcommand("check", "run named property checks");
  std::string check_in, checks_csv;
  std::optional<double> check_margin;
  std::string check_format = "json";
  check_cmd->add_option("--in", check_in, "input dataset")->required();
  check_cmd->add_option("--check", checks_csv, "comma-separated check names")->required();
  check_cmd->add_option("--margin", check_margin, "boundary margin (default: 2x radius)");
  check_cmd->add_option("--format", check_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* compare_cmd = app.add_subcommand("compare", "compare two topology families");
  std::string cmp_in, cmp_left, cmp_right;
  std::optional<double> cmp_margin;
  compare_cmd->add_option("--in", cmp_in, "input dataset")->required();
  compare_cmd->add_option("--left", cmp_left, "family: balls|alexandrov|k-alexandrov|interval")
      ->required();
  compare_cmd->add_option("--right", cmp_right, "family: balls|alexandrov|k-alexandrov|interval")
      ->required();
  compare_cmd->add_option("--margin", cmp_margin, "boundary margin (default: 2x radius)");

  auto* export_cmd = app.add_subcommand("export", "write a relation as a DOT digraph");
  std::string exp_in, exp_what, exp_out;
  std::string exp_format = "dot";
  export_cmd->add_option("--in", exp_in, "input dataset")->required();
  export_cmd->add_option("--what", exp_what, "relation:NAME or hasse")->required();
  export_cmd->add_option("--format", exp_format, "graph format")
      ->check(CLI::IsMember({"dot"}));
  export_cmd->add_option("--out", exp_out, "output graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed())
      return cmd_sample(model_str, grid_str, n_events, seed, jitter, sample_out);
    if (relations_cmd->parsed()) return cmd_relations(rel_in, rel_radius, rel_out);
    if (check_cmd->parsed())
      return cmd_check(check_in, checks_csv, check_margin, check_format);
    if (compare_cmd->parsed()) return cmd_compare(cmp_in, cmp_left, cmp_right, cmp_margin);
    if (export_cmd->parsed()) return cmd_export(exp_in, exp_what, exp_out);
  } catch (const io_error& e) {
    std::cerr << "IO_ERROR: " << e.what() << "\n";
    return kExitIo;
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "INTERNAL: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
