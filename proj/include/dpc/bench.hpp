#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpc/centers.hpp"
#include "dpc/metrics.hpp"
#include "dpc/neighborhood.hpp"
#include "dpc/registry.hpp"

namespace dpc {

/// Bad run configuration (unknown algorithm, empty grid, ...). Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { ppnnn, dpc, kmeans, dbscan };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct ParamGrid {
  std::vector<double> c{0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> boost_factor{1.0, 1.5, 2.0};
  std::vector<double> dc_percentile{1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  /// Percentile levels of the pairwise-distance distribution used as eps.
  std::vector<double> eps_percentile = default_eps_percentiles();
  std::vector<std::size_t> min_pts{3, 4, 5, 10};
  std::size_t kmeans_restarts = 20;
  /// Overrides the registry cluster count for dpc and kmeans.
  std::optional<std::size_t> k;

  /// 20 log-spaced levels from 0.1% to 10%.
  static std::vector<double> default_eps_percentiles();
};

struct RunSpec {
  std::vector<std::string> datasets;
  std::vector<Algorithm> algorithms{Algorithm::ppnnn};
  ParamGrid grid;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  NormalizeMode normalize = NormalizeMode::auto_;
  NnnMode nnn_mode = NnnMode::exact;
  SpreadMode spread_mode = SpreadMode::std_dev;
  std::filesystem::path data_dir = "data";
  std::filesystem::path out_dir;
  std::size_t jobs = 1;
  bool allow_surrogate = true;
  /// Keep every run's labels in memory and on disk.
  bool keep_labels = true;

  /// Throws ConfigError on empty lists.
  void validate() const;
};

RunSpec runspec_from_json(const std::string& text);
std::string runspec_to_json(const RunSpec& spec);

struct RunRecord {
  std::string run_id;
  std::string dataset;
  Algorithm algorithm = Algorithm::ppnnn;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::optional<MetricTriple> scores;
  std::size_t clusters = 0;
  std::size_t noise = 0;
  std::vector<int> labels;
  std::vector<std::size_t> centers;
};

struct BestResult {
  std::string dataset;
  std::string source;
  Algorithm algorithm = Algorithm::ppnnn;
  std::size_t run_count = 0;
  /// Index into EvalReport::runs; absent without gold labels.
  std::optional<std::size_t> best_run;
  double wall_seconds = 0.0;
};

struct EvalReport {
  std::string criterion = "max ARI, ties by AMI, then first run";
  std::vector<BestResult> best;
  std::vector<RunRecord> runs;
  std::vector<std::string> warnings;
  /// Resolved inputs, kept for plotting; not serialized.
  std::map<std::string, Dataset> datasets;

  const RunRecord* best_record(const std::string& dataset, Algorithm algorithm) const;
};

/// Runs the grid x seeds product for every (dataset, algorithm) pair.
EvalReport run_benchmark(const RunSpec& spec, const Registry& registry);

/// Deterministic JSON (no timings).
std::string report_json(const EvalReport& report);
/// Text table, one block per dataset with ARI/AMI/FMI per algorithm.
std::string report_table(const EvalReport& report);

/// report.json, table.txt, timings.json, spec.json, runs/<id>.json,
/// labels/<id>.csv and plots/<id>.svg for each best run.
void write_report(const EvalReport& report, const RunSpec& spec,
                  const std::filesystem::path& out_dir);

}  // namespace dpc
