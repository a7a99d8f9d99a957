#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "contain/baselines.hpp"
#include "contain/contain.hpp"
#include "contain/graph.hpp"
#include "contain/icm.hpp"

namespace contain {

using json = nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// floor(fraction * n) nodes drawn uniformly without replacement.
NodeSet sample_seeds(const Graph& g, double fraction, std::uint64_t rng_seed);

// RFC 4180: quote fields containing a comma, quote, CR or LF; double embedded quotes.
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

std::string format_number(double value);

struct ResultRow {
  std::string dataset;
  std::string algorithm;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t budget = 0;  // k for CONTAIN, node budget for baselines
  std::size_t immunized_count = 0;
  std::size_t iterations = 0;
  std::optional<double> gamma_final;
  double wall_time_s = 0.0;

  static const std::vector<std::string>& header();
  std::vector<std::string> fields() const;
};

struct ContainRun {
  RankedCommunities ranked;
  NodeSet immunized;
  std::size_t k = 0;
  double wall_time_ms = 0.0;
};

// Wall time covers composition and the gamma sweep, not graph loading.
ContainRun run_contain(const Graph& g, const NodeSet& seeds, const ContainOptions& options);

struct ShieldRun {
  ShieldAlgorithm algorithm = ShieldAlgorithm::netshield;
  std::size_t budget = 0;
  ShieldSelection selection;
  bool searched = false;  // budget came from seed-coverage search
  double wall_time_ms = 0.0;
};

ShieldRun run_shield(const Graph& g, ShieldAlgorithm algorithm, std::size_t budget, double alpha);
ShieldRun run_budget_search(const Graph& g, const NodeSet& seeds, ShieldAlgorithm algorithm, double alpha);

ResultRow make_row(std::string dataset, const Graph& g, const ContainRun& run);
ResultRow make_row(std::string dataset, const Graph& g, const ShieldRun& run);

std::vector<std::string> external_ids(const Graph& g, const NodeSet& nodes);

json to_json(const Graph& g, const ContainRun& run);
json to_json(const Graph& g, const ShieldRun& run);

// CSV flattening of a CONTAIN result: one row per ranked entry.
void write_contain_csv(std::ostream& out, const Graph& g, const ContainRun& run);
void write_shield_csv(std::ostream& out, const Graph& g, const ShieldRun& run);

struct SweepRow {
  std::size_t step = 0;
  double gamma = 0.0;
  std::size_t iteration = 0;  // Louvain invocations so far
  std::size_t communities = 0;
  std::size_t intersecting = 0;
  std::size_t immunized_count = 0;  // nodes in communities intersecting G'
  double wall_time_ms = 0.0;        // cumulative
};

// One Louvain run per gamma = gamma0 + i * delta_gamma, i < steps.
std::vector<SweepRow> converge_sweep(const Graph& g, const NodeSet& seeds, double gamma0, double delta_gamma,
                                     std::size_t steps, std::uint64_t rng_seed);
// First step index at which the immunized count has been identical for `window` consecutive rows.
std::optional<std::size_t> stabilized_at(const std::vector<SweepRow>& rows, std::size_t window = 3);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ImmunizationRecord {
  std::string algorithm;
  std::size_t budget = 0;
  NodeSet immunized;
};

// Reads a result JSON written by to_json. Throws ParseError for missing or malformed files.
ImmunizationRecord read_result_file(const std::filesystem::path& path, const Graph& g);

struct EvaluationRow {
  std::string algorithm;
  std::size_t budget = 0;
  double p = 0.0;
  std::size_t trials = 0;
  SpreadEstimate estimate;

  static const std::vector<std::string>& header();
  std::vector<std::string> fields() const;
};

std::vector<EvaluationRow> evaluate(const Graph& g, const NodeSet& seeds,
                                    const std::vector<ImmunizationRecord>& records, const CascadeConfig& cfg);

// key=value lines; '#' comments and blank lines skipped.
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

}  // namespace contain
