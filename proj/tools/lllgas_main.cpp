// Command-line front end: convergence checks with certified resampling
// bounds, the resampling solver (single-seed and aggregated batch), the
// exhaustive oracle suite, and tree enumeration. Every report is JSON with a
// schema_version field; key order is fixed so equal inputs give equal bytes.
//
// Exit codes: 0 success / in region, 2 out of region or failed verdict,
// 3 cap exhausted (structured error or partial log emitted), 1 usage or
// parse error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lllgas/cluster.hpp"
#include "lllgas/depgraph.hpp"
#include "lllgas/instances.hpp"
#include "lllgas/json_io.hpp"
#include "lllgas/mt_engine.hpp"
#include "lllgas/penrose.hpp"
#include "lllgas/trees.hpp"
#include "lllgas/verify.hpp"

namespace {

using lllgas::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOutsideRegion = 2;
constexpr int kExitCapExhausted = 3;

// Default for every --seed flag, fixed so bare invocations reproduce exactly.
constexpr std::uint64_t kDefaultSeed = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output: " + output);
  out << text;
}

void emit_cap_error(const std::string& message, const std::string& output) {
  json doc;
  doc["schema_version"] = lllgas::kSchemaVersion;
  doc["error"] = json{{"type", "cap_exceeded"}, {"message", message}};
  emit(doc, output);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric entry: " + item);
    }
    if (used != item.size())
      throw std::invalid_argument("bad numeric entry: " + item);
  }
  return out;
}

std::vector<int> parse_csv_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer entry: " + item);
    }
    if (used != item.size())
      throw std::invalid_argument("bad integer entry: " + item);
  }
  return out;
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == item.size())
      throw std::invalid_argument("bad edge entry: " + item);
    const auto ends = parse_csv_ints(item.substr(0, dash) + "," +
                                     item.substr(dash + 1));
    out.emplace_back(ends[0], ends[1]);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(
    const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos || pos == 0 || pos + 2 == text.size())
    throw std::invalid_argument("seed range must look like A..B");
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  try {
    std::size_t ua = 0;
    std::size_t ub = 0;
    const std::string left = text.substr(0, pos);
    const std::string right = text.substr(pos + 2);
    a = std::stoull(left, &ua);
    b = std::stoull(right, &ub);
    if (ua != left.size() || ub != right.size())
      throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("seed range must look like A..B");
  }
  if (b < a) throw std::invalid_argument("empty seed range");
  return {a, b};
}

struct LoadedInstance {
  lllgas::LllInstance inst;
  json meta;
};

LoadedInstance load_instance(const std::string& path,
                             const std::string& format) {
  LoadedInstance out;
  out.meta["path"] = path;
  out.meta["format"] = format;
  const std::string text = read_file(path);
  json warnings = json::array();
  if (format == "dimacs") {
    const auto parsed = lllgas::parse_dimacs(text);
    for (const auto& w : parsed.warnings) warnings.push_back(w);
    out.inst = lllgas::sat_to_lll(parsed.formula);
    out.meta["variables"] = parsed.formula.n_vars;
  } else if (format == "hypergraph") {
    const auto h = lllgas::parse_hypergraph(text);
    out.inst = lllgas::hypergraph_coloring_to_lll(h);
    out.meta["variables"] = h.n_vertices;
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  out.meta["events"] = out.inst.graph.size();
  out.meta["warnings"] = warnings;
  return out;
}

bool assignment_clean(const lllgas::LllInstance& inst,
                      const lllgas::Assignment& a) {
  std::vector<int> values;
  for (const auto& e : inst.events) {
    values.clear();
    for (const int v : e.vbl) values.push_back(a[v]);
    if (e.occurs(values)) return false;
  }
  return true;
}

int cmd_check(const std::string& input, const std::string& format,
              const std::string& mu_text, bool paranoid,
              const std::string& output) {
  const auto loaded = load_instance(input, format);
  const auto& g = loaded.inst.graph;
  const auto p = loaded.inst.probabilities();

  const bool mu_auto = mu_text == "auto";
  bool mu_converged = true;
  std::vector<double> mu;
  if (mu_auto) {
    bool diverged = false;
    mu = lllgas::find_mu_fixed_point(g, p, &diverged);
    mu_converged = !diverged;
  } else {
    mu = parse_csv_doubles(mu_text);
    if (mu.size() != p.size())
      throw std::invalid_argument("mu length does not match event count");
  }

  const auto dob = lllgas::check_dobrushin(g, p, mu);
  const auto fp = lllgas::check_fp(g, p, mu);
  const auto shearer = lllgas::check_shearer_region(g, p, paranoid);

  json doc;
  doc["schema_version"] = lllgas::kSchemaVersion;
  doc["command"] = "check";
  doc["instance"] = loaded.meta;
  doc["probabilities"] = p;
  doc["mu_source"] = mu_auto ? "auto" : "given";
  doc["mu_converged"] = mu_converged;
  doc["mu"] = mu;
  doc["dobrushin"] = lllgas::report_to_json(dob);
  doc["fernandez_procacci"] = lllgas::report_to_json(fp);
  doc["shearer"] = lllgas::shearer_to_json(shearer);
  doc["in_region"] = shearer.in_region;
  if (shearer.in_region) {
    json bounds = lllgas::report_to_json(lllgas::mt_bounds(g, p));
    bounds["pressure_bound"] = lllgas::mt_pressure_bound(g, p);
    doc["bounds"] = bounds;
  } else {
    doc["bounds"] = nullptr;
  }
  emit(doc, output);
  return shearer.in_region ? kExitOk : kExitOutsideRegion;
}

struct SeedRecord {
  bool terminated = false;
  std::uint64_t steps = 0;
  std::vector<std::uint64_t> counts;
};

std::vector<SeedRecord> run_batch(const lllgas::LllInstance& inst,
                                  std::uint64_t first, std::uint64_t last,
                                  std::uint64_t step_cap,
                                  lllgas::SelectionRule rule, int jobs) {
  const std::uint64_t count = last - first + 1;
  std::vector<SeedRecord> records(count);
  std::atomic<std::uint64_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      const auto log = lllgas::run_mt(inst.model, inst.events, inst.graph,
                                      first + i, step_cap, rule);
      records[i] = {log.terminated, log.steps.size(), log.counts};
    }
  };
  std::uint64_t n_threads =
      jobs > 0 ? static_cast<std::uint64_t>(jobs)
               : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, count);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::uint64_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

int cmd_run(const std::string& input, const std::string& format,
            std::uint64_t seed, const std::string& seeds_text,
            std::uint64_t step_cap, const std::string& rule_text, int jobs,
            const std::string& output) {
  const auto loaded = load_instance(input, format);
  const auto& inst = loaded.inst;
  const auto p = inst.probabilities();
  const auto rule = lllgas::rule_from_name(rule_text);

  std::optional<lllgas::ConvergenceReport> bounds;
  try {
    bounds = lllgas::mt_bounds(inst.graph, p);
  } catch (const lllgas::OutsideRegionError&) {
    // Out of certified territory; the solver may still terminate.
  }

  json doc;
  doc["schema_version"] = lllgas::kSchemaVersion;
  doc["command"] = "run";
  doc["instance"] = loaded.meta;
  doc["rule"] = rule_text;
  doc["step_cap"] = step_cap;

  if (seeds_text.empty()) {
    const auto log = lllgas::run_mt(inst.model, inst.events, inst.graph, seed,
                                    step_cap, rule);
    doc["log"] = lllgas::log_to_json(log);
    doc["assignment_clean"] = assignment_clean(inst, log.final_assignment);
    if (bounds) {
      json per_event = json::array();
      for (int x = 0; x < inst.graph.size(); ++x)
        per_event.push_back(json{{"id", x},
                                 {"count", log.counts[x]},
                                 {"expected_bound", bounds->per_vertex[x].t_bound}});
      doc["bounds"] = json{{"total_expected", *bounds->total_bound},
                           {"per_event", per_event}};
    } else {
      doc["bounds"] = nullptr;
    }
    emit(doc, output);
    return log.terminated ? kExitOk : kExitCapExhausted;
  }

  const auto [first, last] = parse_seed_range(seeds_text);
  const auto records = run_batch(inst, first, last, step_cap, rule, jobs);
  const double runs = static_cast<double>(records.size());

  std::uint64_t terminated_runs = 0;
  double total_steps = 0.0;
  for (const auto& r : records) {
    terminated_runs += r.terminated ? 1 : 0;
    total_steps += static_cast<double>(r.steps);
  }

  json per_event = json::array();
  bool all_within = true;
  for (int x = 0; x < inst.graph.size(); ++x) {
    double sum = 0.0;
    for (const auto& r : records) sum += static_cast<double>(r.counts[x]);
    const double mean = sum / runs;
    double ss = 0.0;
    for (const auto& r : records) {
      const double d = static_cast<double>(r.counts[x]) - mean;
      ss += d * d;
    }
    const double se =
        records.size() > 1 ? std::sqrt(ss / (runs - 1.0) / runs) : 0.0;
    json entry;
    entry["id"] = x;
    entry["mean_count"] = mean;
    entry["std_error"] = se;
    if (bounds) {
      const double t = bounds->per_vertex[x].t_bound;
      const bool within = mean <= t + 3.0 * se;
      all_within = all_within && within;
      entry["expected_bound"] = t;
      entry["within_bound"] = within;
    } else {
      entry["expected_bound"] = nullptr;
      entry["within_bound"] = nullptr;
    }
    per_event.push_back(entry);
  }

  doc["seeds"] = json{{"first", first}, {"last", last}, {"runs", records.size()}};
  doc["all_terminated"] = terminated_runs == records.size();
  doc["terminated_runs"] = terminated_runs;
  doc["mean_steps"] = total_steps / runs;
  doc["per_event"] = per_event;
  doc["bounds_respected"] = bounds ? json(all_within) : json(nullptr);
  emit(doc, output);
  return terminated_runs == records.size() ? kExitOk : kExitCapExhausted;
}

int cmd_verify(std::uint64_t seed, int tuple_order, bool mutate,
               const std::string& output) {
  lllgas::VerifySuiteOptions opt;
  opt.seed = seed;
  opt.max_tuple_order = tuple_order;
  opt.mutate = mutate;
  const auto families = lllgas::run_verify_suite(opt);

  json fam = json::array();
  bool all_pass = true;
  for (const auto& f : families) {
    all_pass = all_pass && f.pass;
    json entry;
    entry["family"] = f.family;
    entry["pass"] = f.pass;
    entry["cases"] = f.cases;
    entry["counterexample"] =
        f.pass ? json(nullptr) : json(f.counterexample);
    fam.push_back(entry);
  }

  json doc;
  doc["schema_version"] = lllgas::kSchemaVersion;
  doc["command"] = "verify";
  doc["seed"] = seed;
  doc["mutate"] = mutate;
  doc["families"] = fam;
  doc["all_pass"] = all_pass;
  emit(doc, output);
  return all_pass ? kExitOk : kExitOutsideRegion;
}

int cmd_enumerate(const std::string& kind, int n_max,
                  const std::string& tuple_text, const std::string& input,
                  const std::string& format, const std::string& edges_text,
                  int vertices, const std::string& output) {
  json doc;
  doc["schema_version"] = lllgas::kSchemaVersion;
  doc["command"] = "enumerate";
  doc["kind"] = kind;

  if (kind == "plane") {
    const auto trees = lllgas::enumerate_plane_trees(n_max);
    json arr = json::array();
    for (const auto& t : trees) arr.push_back(lllgas::to_parenthesized(t));
    doc["n"] = n_max;
    doc["count"] = trees.size();
    doc["trees"] = arr;
  } else if (kind == "labeled") {
    const auto trees = lllgas::enumerate_labeled_trees(n_max);
    json arr = json::array();
    for (const auto& t : trees) arr.push_back(t.parent);
    doc["n"] = n_max;
    doc["count"] = trees.size();
    doc["trees"] = arr;
  } else {
    if (tuple_text.empty())
      throw std::invalid_argument("penrose enumeration needs --tuple");
    const auto ids = parse_csv_ints(tuple_text);
    const lllgas::VertexTuple tuple(ids.begin(), ids.end());

    lllgas::DependencyGraph g;
    if (!input.empty()) {
      g = load_instance(input, format).inst.graph;
    } else if (!edges_text.empty() || vertices > 0) {
      g = lllgas::DependencyGraph::from_edges(vertices,
                                              parse_edge_list(edges_text));
    } else {
      throw std::invalid_argument(
          "penrose enumeration needs --input or --edges/--vertices");
    }

    const int n = static_cast<int>(tuple.size()) - 1;
    json arr = json::array();
    std::size_t count = 0;
    for (const auto& checker : lllgas::make_penrose_checkers(n)) {
      if (!checker.check(tuple, g)) continue;
      ++count;
      json entry;
      entry["parent"] = checker.tree().parent;
      entry["shape"] = lllgas::to_parenthesized(lllgas::map_m(checker.tree()));
      arr.push_back(entry);
    }
    doc["tuple"] = tuple;
    doc["count"] = count;
    doc["ursell"] = lllgas::ursell_penrose(tuple, g);
    doc["trees"] = arr;
  }
  emit(doc, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Resampling-solver toolkit: convergence criteria, certified "
      "expected-resampling bounds, reproducible solver runs, tree "
      "enumeration, and an exhaustive self-test suite."};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success or in region, 2 out of region or failed "
      "verdict, 3 cap exhausted, 1 usage or parse error.");

  std::string input;
  std::string format = "dimacs";
  std::string mu_text = "auto";
  std::string output;
  std::string seeds_text;
  std::string rule_text = "lowest_index";
  std::string kind;
  std::string tuple_text;
  std::string edges_text;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t step_cap = lllgas::kDefaultStepCap;
  int n_max = 3;
  int verify_n_max = 4;
  int vertices = 0;
  int jobs = 0;
  bool paranoid = false;
  bool mutate = false;

  auto* check =
      app.add_subcommand("check", "Convergence criteria and certified bounds");
  check->add_option("--input", input, "Instance file")->required();
  check->add_option("--format", format, "Input format (default dimacs)")
      ->check(CLI::IsMember({"dimacs", "hypergraph"}));
  check->add_option("--mu", mu_text,
                    "Per-event weights as comma-separated values, or 'auto' "
                    "for the least fixed point (default auto)");
  check->add_flag("--paranoid", paranoid,
                  "Positivity check over every vertex subset");
  check->add_option("--output", output, "Write JSON here instead of stdout");

  auto* run = app.add_subcommand("run", "Run the resampling solver");
  run->add_option("--input", input, "Instance file")->required();
  run->add_option("--format", format, "Input format (default dimacs)")
      ->check(CLI::IsMember({"dimacs", "hypergraph"}));
  run->add_option("--seed", seed, "RNG seed (default 1)");
  run->add_option("--seeds", seeds_text,
                  "Inclusive seed range A..B; emits aggregate statistics");
  run->add_option("--step-cap", step_cap,
                  "Give up after this many resamplings (default 1000000)");
  run->add_option("--rule", rule_text,
                  "Violated-event selection (default lowest_index)")
      ->check(CLI::IsMember({"lowest_index", "uniform_random"}));
  run->add_option("--jobs", jobs,
                  "Worker threads for --seeds (default: hardware)");
  run->add_option("--output", output, "Write JSON here instead of stdout");

  auto* verify = app.add_subcommand(
      "verify", "Exhaustive small-case identity suite with counterexamples");
  verify->add_option("--seed", seed, "Sweep seed (default 1)");
  verify->add_option("--n-max", verify_n_max,
                     "Largest tuple order in the sweep (default 4)");
  verify->add_flag("--mutate", mutate,
                   "Drop the uncle condition; the sweep must then fail");
  verify->add_option("--output", output, "Write JSON here instead of stdout");

  auto* enumerate = app.add_subcommand(
      "enumerate", "List plane trees, labeled trees, or Penrose trees");
  enumerate->add_option("kind", kind, "plane | labeled | penrose")
      ->required()
      ->check(CLI::IsMember({"plane", "labeled", "penrose"}));
  enumerate->add_option("--n-max", n_max, "Tree order, n+1 vertices (default 3)");
  enumerate->add_option("--tuple", tuple_text,
                        "Penrose only: vertex tuple x0,x1,...,xn");
  enumerate->add_option("--input", input,
                        "Penrose only: instance supplying the graph");
  enumerate->add_option("--format", format, "Input format (default dimacs)")
      ->check(CLI::IsMember({"dimacs", "hypergraph"}));
  enumerate->add_option("--edges", edges_text,
                        "Penrose only: explicit edge list a-b,c-d,...");
  enumerate->add_option("--vertices", vertices,
                        "Penrose only: vertex count for --edges");
  enumerate->add_option("--output", output, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(check))
      return cmd_check(input, format, mu_text, paranoid, output);
    if (app.got_subcommand(run))
      return cmd_run(input, format, seed, seeds_text, step_cap, rule_text,
                     jobs, output);
    if (app.got_subcommand(verify))
      return cmd_verify(seed, verify_n_max, mutate, output);
    return cmd_enumerate(kind, n_max, tuple_text, input, format, edges_text,
                         vertices, output);
  } catch (const std::domain_error& e) {
    emit_cap_error(e.what(), output);
    return kExitCapExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
