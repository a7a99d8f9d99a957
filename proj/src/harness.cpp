#include "contain/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "contain/errors.hpp"

namespace contain {

NodeSet sample_seeds(const Graph& g, double fraction, std::uint64_t rng_seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("seed fraction must lie in (0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(g.num_nodes())));
  std::vector<NodeId> all(g.num_nodes());
  std::iota(all.begin(), all.end(), NodeId{0});
  std::mt19937_64 rng(rng_seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(count);
  return NodeSet(std::move(all));
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw DomainError("CSV row width does not match header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << "\r\n";
}

std::string format_number(double value) {
  std::ostringstream s;
  s << std::setprecision(12) << value;
  return s.str();
}

const std::vector<std::string>& ResultRow::header() {
  static const std::vector<std::string> h{"dataset",         "algorithm",  "nodes",       "edges",      "budget",
                                          "immunized_count", "iterations", "gamma_final", "wall_time_s"};
  return h;
}

std::vector<std::string> ResultRow::fields() const {
  return {dataset,
          algorithm,
          std::to_string(nodes),
          std::to_string(edges),
          std::to_string(budget),
          std::to_string(immunized_count),
          std::to_string(iterations),
          gamma_final ? format_number(*gamma_final) : std::string(),
          format_number(wall_time_s)};
}

ContainRun run_contain(const Graph& g, const NodeSet& seeds, const ContainOptions& options) {
  Stopwatch watch;
  ContainRun run;
  run.k = options.k;
  run.ranked = contain(g, seeds, options);
  run.immunized = immunized_node_set(run.ranked, options.k);
  run.wall_time_ms = watch.elapsed_ms();
  return run;
}

ShieldRun run_shield(const Graph& g, ShieldAlgorithm algorithm, std::size_t budget, double alpha) {
  Stopwatch watch;
  ShieldRun run;
  run.algorithm = algorithm;
  run.selection = shield(g, algorithm, budget, alpha);
  run.budget = run.selection.picked.size();
  run.wall_time_ms = watch.elapsed_ms();
  return run;
}

ShieldRun run_budget_search(const Graph& g, const NodeSet& seeds, ShieldAlgorithm algorithm, double alpha) {
  Stopwatch watch;
  ShieldRun run;
  run.algorithm = algorithm;
  auto found = budget_search(g, seeds, algorithm, alpha);
  run.budget = found.budget;
  run.selection = std::move(found.selection);
  run.searched = true;
  run.wall_time_ms = watch.elapsed_ms();
  return run;
}

ResultRow make_row(std::string dataset, const Graph& g, const ContainRun& run) {
  ResultRow row;
  row.dataset = std::move(dataset);
  row.algorithm = "contain";
  row.nodes = g.num_nodes();
  row.edges = g.num_edges();
  row.budget = run.k;
  row.immunized_count = run.immunized.size();
  row.iterations = run.ranked.iterations;
  row.gamma_final = run.ranked.gamma_final;
  row.wall_time_s = run.wall_time_ms / 1000.0;
  return row;
}

ResultRow make_row(std::string dataset, const Graph& g, const ShieldRun& run) {
  ResultRow row;
  row.dataset = std::move(dataset);
  row.algorithm = std::string(to_string(run.algorithm));
  row.nodes = g.num_nodes();
  row.edges = g.num_edges();
  row.budget = run.budget;
  row.immunized_count = run.selection.picked.size();
  row.iterations = run.selection.picked.size();
  row.wall_time_s = run.wall_time_ms / 1000.0;
  return row;
}

std::vector<std::string> external_ids(const Graph& g, const NodeSet& nodes) {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(g.external_id(v));
  return out;
}

json to_json(const Graph& g, const ContainRun& run) {
  json entries = json::array();
  for (const auto& e : run.ranked.entries) {
    entries.push_back({{"community_members", external_ids(g, e.members)},
                       {"n_h", e.harmful},
                       {"n_C", e.size},
                       {"score", e.score}});
  }
  return {{"algorithm", "contain"},
          {"k", run.k},
          {"gamma_final", run.ranked.gamma_final},
          {"iterations", run.ranked.iterations},
          {"entries", std::move(entries)},
          {"immunized", external_ids(g, run.immunized)},
          {"immunized_count", run.immunized.size()},
          {"wall_time_ms", run.wall_time_ms}};
}

json to_json(const Graph& g, const ShieldRun& run) {
  std::vector<std::string> picked;
  picked.reserve(run.selection.picked.size());
  for (NodeId v : run.selection.picked) picked.push_back(g.external_id(v));
  return {{"algorithm", std::string(to_string(run.algorithm))},
          {"budget", run.budget},
          {"picked", std::move(picked)},
          {"lambda", run.selection.lambda},
          {"wall_time_ms", run.wall_time_ms}};
}

void write_contain_csv(std::ostream& out, const Graph& g, const ContainRun& run) {
  CsvWriter csv(out, {"rank", "community_members", "n_h", "n_C", "score", "immunized"});
  for (std::size_t i = 0; i < run.ranked.entries.size(); ++i) {
    const auto& e = run.ranked.entries[i];
    std::string members;
    for (const auto& id : external_ids(g, e.members)) {
      if (!members.empty()) members += ' ';
      members += id;
    }
    csv.row({std::to_string(i + 1), members, std::to_string(e.harmful), std::to_string(e.size),
             format_number(e.score), i < run.k ? "1" : "0"});
  }
}

void write_shield_csv(std::ostream& out, const Graph& g, const ShieldRun& run) {
  CsvWriter csv(out, {"order", "external_id", "score"});
  for (std::size_t i = 0; i < run.selection.picked.size(); ++i) {
    csv.row({std::to_string(i + 1), g.external_id(run.selection.picked[i]), format_number(run.selection.scores[i])});
  }
}

std::vector<SweepRow> converge_sweep(const Graph& g, const NodeSet& seeds, double gamma0, double delta_gamma,
                                     std::size_t steps, std::uint64_t rng_seed) {
  Resolution{gamma0, delta_gamma}.validate();
  const ComposedSubgraph composed = compose_seed_subgraph(g, seeds);
  std::vector<SweepRow> rows;
  Stopwatch watch;
  for (std::size_t step = 0; step < steps; ++step) {
    SweepRow row;
    row.step = step;
    row.gamma = Resolution{gamma0, delta_gamma}.at(step);
    row.iteration = step + 1;
    Partition p = louvain(g, row.gamma, rng_seed);
    auto entries = rank_communities(p, composed.nodes, seeds);
    row.communities = p.num_communities();
    row.intersecting = entries.size();
    for (const auto& e : entries) row.immunized_count += e.size;
    row.wall_time_ms = watch.elapsed_ms();
    rows.push_back(row);
  }
  return rows;
}

std::optional<std::size_t> stabilized_at(const std::vector<SweepRow>& rows, std::size_t window) {
  if (window == 0) return std::nullopt;
  std::size_t run = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    run = (i > 0 && rows[i].immunized_count == rows[i - 1].immunized_count) ? run + 1 : 1;
    if (run >= window) return i;
  }
  return std::nullopt;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out, {"step", "gamma", "iteration", "communities", "intersecting", "immunized_count", "wall_time_ms"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.step), format_number(r.gamma), std::to_string(r.iteration),
             std::to_string(r.communities), std::to_string(r.intersecting), std::to_string(r.immunized_count),
             format_number(r.wall_time_ms)});
  }
}

ImmunizationRecord read_result_file(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open result file '" + path.string() + "'", 0);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what(), 0);
  }
  ImmunizationRecord record;
  try {
    record.algorithm = doc.at("algorithm").get<std::string>();
    const json& ids = doc.contains("picked") ? doc.at("picked") : doc.at("immunized");
    std::vector<NodeId> members;
    for (const auto& id : ids) {
      const auto name = id.get<std::string>();
      if (!g.has_external_id(name)) throw ParseError("result file '" + path.string() + "' names unknown node '" + name + "'", 0);
      members.push_back(g.internal_id(name));
    }
    record.immunized = NodeSet(std::move(members));
    record.budget = doc.contains("budget") ? doc.at("budget").get<std::size_t>() : doc.at("k").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError("result file '" + path.string() + "' lacks expected fields: " + e.what(), 0);
  }
  return record;
}

const std::vector<std::string>& EvaluationRow::header() {
  static const std::vector<std::string> h{"algorithm",    "budget",       "p",    "trials",
                                          "mean_infected", "std_infected", "saved"};
  return h;
}

std::vector<std::string> EvaluationRow::fields() const {
  return {algorithm,
          std::to_string(budget),
          format_number(p),
          std::to_string(trials),
          format_number(estimate.mean_infected),
          format_number(estimate.std_infected),
          format_number(estimate.saved)};
}

std::vector<EvaluationRow> evaluate(const Graph& g, const NodeSet& seeds,
                                    const std::vector<ImmunizationRecord>& records, const CascadeConfig& cfg) {
  const SpreadEstimate reference = simulate(g, seeds, NodeSet{}, cfg);
  std::vector<EvaluationRow> rows;
  for (const auto& record : records) {
    EvaluationRow row;
    row.algorithm = record.algorithm;
    row.budget = record.budget;
    row.p = cfg.p;
    row.trials = cfg.trials;
    row.estimate = simulate(g, seeds, record.immunized, cfg);
    row.estimate.saved = reference.mean_infected - row.estimate.mean_infected;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'", 0);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace contain
