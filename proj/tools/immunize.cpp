// immunize: command-line front end for CONTAIN, the shield baselines and the cascade simulator.
//
// Options may also come from --config FILE (key=value lines, keys named after the long flags).
// Precedence is command line, then config file, then built-in defaults. The RNG seed default
// is read from IMMUNIZE_RNG_SEED when neither source sets it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "contain/baselines.hpp"
#include "contain/contain.hpp"
#include "contain/errors.hpp"
#include "contain/generators.hpp"
#include "contain/harness.hpp"
#include "contain/icm.hpp"
#include "contain/louvain.hpp"
#include "contain/structural.hpp"

namespace fs = std::filesystem;
using namespace contain;

namespace {

struct Common {
  std::string graph;
  std::string edge_format = "whitespace";
  bool weighted = false;
  std::string seeds_file;
  double seed_fraction = 0.0;
  std::uint64_t rng_seed = 42;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string dataset;
  std::string config;
};

struct Settings {
  Common common;
  ContainOptions contain;
  std::optional<std::size_t> budget;
  double alpha = 1.0;
  std::string algorithm = "sparseshield";
  double gamma = 1.0;
  double gamma0 = 0.5;
  double delta_gamma = 0.1;
  std::size_t steps = 150;
  std::string immunized_file;
  std::vector<std::string> results;
  CascadeConfig cascade;
  std::vector<std::string> bench_graphs;
  std::vector<std::string> synthetic;
  std::string baseline_budget = "seeds";
  std::vector<std::string> algorithms{"contain", "netshield", "sparseshield"};
};

void add_common(CLI::App* cmd, Common& c, bool needs_seeds) {
  cmd->add_option("--graph", c.graph, "Edge list file");
  cmd->add_option("--edge-format", c.edge_format, "Edge list layout")->check(CLI::IsMember({"whitespace", "csv"}));
  cmd->add_flag("--weighted", c.weighted, "Third column holds edge weights");
  if (needs_seeds) {
    auto* seeds = cmd->add_option("--seeds", c.seeds_file, "File with one spreader id per line");
    cmd->add_option("--seed-fraction", c.seed_fraction, "Sample this fraction of nodes as spreaders")
        ->excludes(seeds);
  }
  cmd->add_option("--rng-seed", c.rng_seed, "Random seed (default $IMMUNIZE_RNG_SEED or 42)");
  cmd->add_option("--out-dir", c.out_dir, "Directory for result files");
  cmd->add_option("--format", c.format, "Result file format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--dataset", c.dataset, "Dataset label (default: graph file stem)");
  cmd->add_option("--config", c.config, "key=value file; command-line flags take precedence");
}

// Fills options the command line left unset from the config file, then the seed from the environment.
void apply_config(CLI::App* cmd, Common& c) {
  if (!c.config.empty()) {
    for (const auto& [key, value] : load_config(c.config)) {
      CLI::Option* opt = nullptr;
      try {
        opt = cmd->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        throw ParseError("unknown config key '" + key + "' for " + cmd->get_name(), 0);
      }
      if (opt->count() > 0) continue;
      opt->add_result(value);
      opt->run_callback();
    }
  }
  auto* seed = cmd->get_option("--rng-seed");
  if (seed->count() == 0) {
    if (const char* env = std::getenv("IMMUNIZE_RNG_SEED")) {
      seed->add_result(env);
      seed->run_callback();
    }
  }
}

Graph load_graph(const Common& c, LoadStats* stats = nullptr) {
  if (c.graph.empty()) throw DomainError("--graph is required");
  const auto fmt = c.edge_format == "csv" ? EdgeListFormat::csv : EdgeListFormat::whitespace;
  return load_edge_list(c.graph, fmt, c.weighted, stats);
}

NodeSet load_seeds(const Common& c, const Graph& g) {
  if (!c.seeds_file.empty()) return load_node_set(c.seeds_file, g);
  if (c.seed_fraction > 0.0) return sample_seeds(g, c.seed_fraction, c.rng_seed);
  throw DomainError("one of --seeds or --seed-fraction is required");
}

std::string dataset_name(const Common& c) {
  if (!c.dataset.empty()) return c.dataset;
  return c.graph.empty() ? "graph" : fs::path(c.graph).stem().string();
}

fs::path output_path(const Common& c, const std::string& stem) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / (dataset_name(c) + "_" + stem + "." + c.format);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  return out;
}

void print_rows(const std::vector<ResultRow>& rows) {
  CsvWriter w(std::cout, ResultRow::header());
  for (const auto& r : rows) w.row(r.fields());
}

void cmd_contain(Settings& s) {
  Graph g = load_graph(s.common);
  NodeSet seeds = load_seeds(s.common, g);
  s.contain.rng_seed = s.common.rng_seed;
  ContainRun run = run_contain(g, seeds, s.contain);
  const fs::path path = output_path(s.common, "contain");
  auto out = open_output(path);
  if (s.common.format == "json") out << to_json(g, run).dump(2) << '\n';
  else write_contain_csv(out, g, run);
  print_rows({make_row(dataset_name(s.common), g, run)});
  std::cerr << "wrote " << path.string() << '\n';
}

void write_shield(const Settings& s, const Graph& g, const ShieldRun& run) {
  std::string stem(to_string(run.algorithm));
  if (run.searched) stem = "budget-search_" + stem;
  const fs::path path = output_path(s.common, stem);
  auto out = open_output(path);
  if (s.common.format == "json") out << to_json(g, run).dump(2) << '\n';
  else write_shield_csv(out, g, run);
  if (run.selection.clamped) std::cerr << "warning: budget clamped to " << g.num_nodes() << " nodes\n";
  print_rows({make_row(dataset_name(s.common), g, run)});
  std::cerr << "wrote " << path.string() << '\n';
}

void cmd_shield(Settings& s, ShieldAlgorithm algorithm) {
  Graph g = load_graph(s.common);
  std::size_t budget = 0;
  if (s.budget) budget = *s.budget;
  else budget = load_seeds(s.common, g).size();  // default: as many nodes as spreaders
  write_shield(s, g, run_shield(g, algorithm, budget, algorithm == ShieldAlgorithm::netshield ? 1.0 : s.alpha));
}

void cmd_budget_search(Settings& s) {
  Graph g = load_graph(s.common);
  NodeSet seeds = load_seeds(s.common, g);
  write_shield(s, g, run_budget_search(g, seeds, parse_shield_algorithm(s.algorithm), s.alpha));
}

void cmd_communities(Settings& s) {
  Graph g = load_graph(s.common);
  Partition p = louvain(g, s.gamma, s.common.rng_seed);
  const fs::path path = output_path(s.common, "communities");
  auto out = open_output(path);
  if (s.common.format == "json") {
    json doc{{"gamma", s.gamma}, {"rng_seed", s.common.rng_seed}, {"communities", json::array()}};
    if (g.num_edges() > 0) doc["modularity"] = modularity(g, p, s.gamma);
    for (const auto& members : p.community_nodes) {
      json ids = json::array();
      for (NodeId v : members) ids.push_back(g.external_id(v));
      doc["communities"].push_back(std::move(ids));
    }
    out << doc.dump(2) << '\n';
  } else {
    CsvWriter w(out, {"node", "community"});
    for (NodeId v = 0; v < g.num_nodes(); ++v) w.row({g.external_id(v), std::to_string(p.assignment[v])});
  }
  std::cout << p.num_communities() << " communities";
  if (g.num_edges() > 0) std::cout << ", modularity " << format_number(modularity(g, p, s.gamma));
  std::cout << '\n';
}

void cmd_constraint(Settings& s) {
  Graph g = load_graph(s.common);
  ConstraintCalculator calc(g);
  const fs::path path = output_path(s.common, "constraint");
  auto out = open_output(path);
  json doc = json::object();
  std::optional<CsvWriter> w;
  if (s.common.format == "csv") w.emplace(out, std::vector<std::string>{"node", "constraint"});
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const bool defined = g.weighted_degree(v) > 0.0;
    const double c = defined ? calc(v) : 0.0;
    if (w) w->row({g.external_id(v), defined ? format_number(c) : ""});  // empty: undefined for isolated nodes
    else doc[g.external_id(v)] = defined ? json(c) : json(nullptr);
  }
  if (!w) out << doc.dump(2) << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

void cmd_converge_sweep(Settings& s) {
  Graph g = load_graph(s.common);
  NodeSet seeds = load_seeds(s.common, g);
  auto rows = converge_sweep(g, seeds, s.gamma0, s.delta_gamma, s.steps, s.common.rng_seed);
  const fs::path path = output_path(s.common, "sweep");
  auto out = open_output(path);
  if (s.common.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) {
      doc.push_back({{"step", r.step}, {"gamma", r.gamma}, {"iteration", r.iteration},
                     {"communities", r.communities}, {"intersecting", r.intersecting},
                     {"immunized_count", r.immunized_count}, {"wall_time_ms", r.wall_time_ms}});
    }
    out << doc.dump(2) << '\n';
  } else {
    write_sweep_csv(out, rows);
  }
  if (auto at = stabilized_at(rows)) {
    std::cout << "stable from step " << *at << " (gamma " << format_number(rows[*at].gamma) << ") at "
              << rows[*at].immunized_count << " nodes\n";
  } else {
    std::cout << "no 3-step plateau within " << rows.size() << " steps\n";
  }
}

void print_estimate(const std::string& label, const SpreadEstimate& e) {
  std::cout << label << ": mean_infected " << format_number(e.mean_infected) << ", std "
            << format_number(e.std_infected) << ", saved " << format_number(e.saved) << " over " << e.trials
            << " trials\n";
}

void cmd_simulate(Settings& s) {
  Graph g = load_graph(s.common);
  NodeSet seeds = load_seeds(s.common, g);
  NodeSet immunized = s.immunized_file.empty() ? NodeSet{} : load_node_set(s.immunized_file, g);
  s.cascade.rng_seed = s.common.rng_seed;
  SpreadEstimate e = simulate(g, seeds, immunized, s.cascade);
  e.saved = immunized.empty() ? 0.0 : saved_nodes(g, seeds, immunized, s.cascade);
  print_estimate("simulate", e);
}

void cmd_evaluate(Settings& s) {
  Graph g = load_graph(s.common);
  NodeSet seeds = load_seeds(s.common, g);
  if (s.results.empty()) throw DomainError("--results needs at least one result file");
  std::vector<ImmunizationRecord> records;
  for (const auto& file : s.results) records.push_back(read_result_file(file, g));
  s.cascade.rng_seed = s.common.rng_seed;
  auto rows = evaluate(g, seeds, records, s.cascade);
  Common csv = s.common;
  csv.format = "csv";
  const fs::path path = output_path(csv, "evaluation");
  auto out = open_output(path);
  CsvWriter file(out, EvaluationRow::header());
  CsvWriter term(std::cout, EvaluationRow::header());
  for (const auto& r : rows) {
    file.row(r.fields());
    term.row(r.fields());
  }
}

struct BenchJob {
  std::string name;
  std::function<Graph()> load;
};

std::vector<ResultRow> bench_dataset(const Settings& s, const BenchJob& job) {
  Graph g = job.load();
  NodeSet seeds = sample_seeds(g, s.common.seed_fraction > 0.0 ? s.common.seed_fraction : 0.1, s.common.rng_seed);
  std::vector<ResultRow> rows;
  for (const auto& algo : s.algorithms) {
    if (algo == "contain") {
      ContainOptions opts = s.contain;
      opts.rng_seed = s.common.rng_seed;
      rows.push_back(make_row(job.name, g, run_contain(g, seeds, opts)));
      continue;
    }
    const ShieldAlgorithm a = parse_shield_algorithm(algo);
    const double alpha = a == ShieldAlgorithm::netshield ? 1.0 : s.alpha;
    ShieldRun run = s.baseline_budget == "search" ? run_budget_search(g, seeds, a, alpha)
                                                  : run_shield(g, a, s.budget.value_or(seeds.size()), alpha);
    rows.push_back(make_row(job.name, g, run));
  }
  return rows;
}

// One worker per dataset; rows come back in dataset order.
void cmd_bench(Settings& s) {
  std::vector<BenchJob> jobs;
  for (const auto& file : s.bench_graphs) {
    Common c = s.common;
    c.graph = file;
    c.dataset.clear();
    jobs.push_back({dataset_name(c), [c] { return load_graph(c); }});
  }
  for (const auto& shape : s.synthetic) {
    const auto colon = shape.find(':');
    if (colon == std::string::npos) throw ParseError("--synthetic expects N:M, got '" + shape + "'", 0);
    const std::size_t n = std::stoul(shape.substr(0, colon)), m = std::stoul(shape.substr(colon + 1));
    const std::uint64_t seed = s.common.rng_seed;
    jobs.push_back({"gnm_" + shape, [=] { return gnm_random_graph(n, m, seed); }});
  }
  if (jobs.empty()) throw DomainError("bench needs --graphs or --synthetic");

  std::vector<std::vector<ResultRow>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          results[i] = bench_dataset(s, jobs[i]);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
    }
  }
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) throw DomainError(jobs[i].name + ": " + errors[i]);
    rows.insert(rows.end(), results[i].begin(), results[i].end());
  }
  fs::create_directories(s.common.out_dir);
  const fs::path path = fs::path(s.common.out_dir) / "bench.csv";
  auto out = open_output(path);
  CsvWriter w(out, ResultRow::header());
  for (const auto& r : rows) w.row(r.fields());
  print_rows(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-based network immunization"};
  app.require_subcommand(1);
  Settings s;

  auto add_contain_options = [&](CLI::App* cmd) {
    cmd->add_option("-k,--k", s.contain.k, "Communities to immunize");
    cmd->add_option("--gamma0", s.contain.gamma0, "Initial resolution");
    cmd->add_option("--delta-gamma", s.contain.delta_gamma, "Resolution step");
    cmd->add_option("--gamma-max", s.contain.gamma_max, "Give up beyond this resolution");
  };
  auto add_cascade_options = [&](CLI::App* cmd) {
    cmd->add_option("-p,--p", s.cascade.p, "Uniform activation probability");
    cmd->add_flag("--weights-as-probabilities", s.cascade.weights_as_probabilities,
                  "Use edge weights as activation probabilities");
    cmd->add_option("--trials", s.cascade.trials, "Monte-Carlo trials");
    cmd->add_option("--threads", s.cascade.threads, "Worker threads (0 = all cores)");
  };

  auto* contain_cmd = app.add_subcommand("contain", "Rank harmful communities and immunize the top k");
  add_common(contain_cmd, s.common, true);
  add_contain_options(contain_cmd);

  auto* netshield_cmd = app.add_subcommand("netshield", "NetShield greedy node selection");
  add_common(netshield_cmd, s.common, true);
  netshield_cmd->add_option("--budget", s.budget, "Nodes to immunize (default: number of spreaders)");

  auto* sparseshield_cmd = app.add_subcommand("sparseshield", "SparseShield lazy greedy node selection");
  add_common(sparseshield_cmd, s.common, true);
  sparseshield_cmd->add_option("--budget", s.budget, "Nodes to immunize (default: number of spreaders)");
  sparseshield_cmd->add_option("--alpha", s.alpha, "Neighbour penalty multiplier");

  auto* search_cmd = app.add_subcommand("budget-search", "Smallest greedy budget that covers every spreader");
  add_common(search_cmd, s.common, true);
  search_cmd->add_option("--algorithm", s.algorithm)->check(CLI::IsMember({"netshield", "sparseshield"}));
  search_cmd->add_option("--alpha", s.alpha, "Neighbour penalty multiplier");

  auto* communities_cmd = app.add_subcommand("communities", "Dump a Louvain partition");
  add_common(communities_cmd, s.common, false);
  communities_cmd->add_option("--gamma", s.gamma, "Resolution");

  auto* constraint_cmd = app.add_subcommand("constraint", "Dump node constraint values");
  add_common(constraint_cmd, s.common, false);

  auto* sweep_cmd = app.add_subcommand("converge-sweep", "Immunized count across a resolution sweep");
  add_common(sweep_cmd, s.common, true);
  sweep_cmd->add_option("--gamma0", s.gamma0, "First resolution");
  sweep_cmd->add_option("--delta-gamma", s.delta_gamma, "Resolution step");
  sweep_cmd->add_option("--steps", s.steps, "Number of resolutions")->check(CLI::PositiveNumber);

  auto* simulate_cmd = app.add_subcommand("simulate", "Independent Cascade spread estimate");
  add_common(simulate_cmd, s.common, true);
  simulate_cmd->add_option("--immunized", s.immunized_file, "File with one immunized id per line");
  add_cascade_options(simulate_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare JSON result files under the cascade model");
  add_common(evaluate_cmd, s.common, true);
  evaluate_cmd->add_option("--results", s.results, "JSON result files")->expected(1, -1);
  add_cascade_options(evaluate_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over several datasets in parallel");
  add_common(bench_cmd, s.common, true);
  bench_cmd->add_option("--graphs", s.bench_graphs, "Edge list files")->expected(1, -1);
  bench_cmd->add_option("--synthetic", s.synthetic, "Random graphs given as N:M")->expected(1, -1);
  bench_cmd->add_option("--algorithms", s.algorithms)
      ->expected(1, -1)
      ->check(CLI::IsMember({"contain", "netshield", "sparseshield"}));
  bench_cmd->add_option("--baseline-budget", s.baseline_budget, "Baseline budget: spreader count or search")
      ->check(CLI::IsMember({"seeds", "search"}));
  bench_cmd->add_option("--budget", s.budget, "Fixed baseline budget");
  bench_cmd->add_option("--alpha", s.alpha, "SparseShield penalty multiplier");
  add_contain_options(bench_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* cmd = app.get_subcommands().front();
    apply_config(cmd, s.common);
    const std::string name = cmd->get_name();
    if (name == "contain") cmd_contain(s);
    else if (name == "netshield") cmd_shield(s, ShieldAlgorithm::netshield);
    else if (name == "sparseshield") cmd_shield(s, ShieldAlgorithm::sparseshield);
    else if (name == "budget-search") cmd_budget_search(s);
    else if (name == "communities") cmd_communities(s);
    else if (name == "constraint") cmd_constraint(s);
    else if (name == "converge-sweep") cmd_converge_sweep(s);
    else if (name == "simulate") cmd_simulate(s);
    else if (name == "evaluate") cmd_evaluate(s);
    else if (name == "bench") cmd_bench(s);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
