#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgr/ga.hpp"
#include "qgr/grading.hpp"
#include "qgr/knowledge_base.hpp"
#include "qgr/run_config.hpp"
#include "qgr/topology.hpp"

namespace qgr {

enum class RunMode { graded, ungraded };
enum class RunStatus { ok, disconnected, no_route };

const char* to_string(RunMode m);
const char* to_string(RunStatus s);
RunMode run_mode_from_string(const std::string& s);

struct RunReport {
  RunMode mode = RunMode::graded;
  RunStatus status = RunStatus::ok;
  std::uint32_t total_nodes = 0;
  std::uint32_t nodes_selected = 0; // distinct nodes in the final generation
  Chromosome best_path;
  std::size_t route_length = 0; // hops = |best_path| - 1
  double report_fitness = 0.0;  // best bottleneck / max bandwidth in the working graph
  bool oracle_evaluated = false;
  std::size_t oracle_path_length = 0;
  bool oracle_match = false; // route_length == oracle_path_length
  bool congestion_after_fix = false;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<double> history;

  bool operator==(const RunReport&) const = default;
};

// Exhaustive search over simple source -> destination paths. Among paths
// whose bottleneck meets demand: fewest hops, then largest bottleneck, then
// lexicographic. When none meets demand: largest bottleneck, then fewest
// hops, then lexicographic. Throws no_route when no path exists.
Chromosome oracle_best_path(const GradedSubgraph& subgraph, const Topology& metrics, double demand);

// Oracle comparison key of a concrete path.
struct OracleScore {
  bool feasible = false;
  std::size_t hops = 0;
  double bottleneck = 0.0;

  bool operator==(const OracleScore&) const = default;
};
OracleScore oracle_score(const Topology& metrics, const Chromosome& c, double demand);

// Grading thresholds with the delay cutoff resolved against this topology
// (median node delay unless a fixed threshold is configured).
GradingThresholds resolve_thresholds(const RunConfig& cfg, const Topology& topo);

// Generate + attribute + delay-annotate one topology instance of the given
// size using sweep-derived sub-seeds.
Topology make_instance(const RunConfig& cfg, std::uint32_t node_count, std::uint64_t topo_seed,
                       std::uint64_t attr_seed);

// One full pipeline execution. Graded mode runs level-1 filtering first;
// ungraded runs the GA over the whole topology. Disconnected / no-route
// outcomes are recorded in the report status rather than thrown.
RunReport run_once(const Topology& topo, RunMode mode, const RunConfig& cfg, std::uint64_t seed,
                   KnowledgeBase* kb = nullptr);

struct AggregateRow {
  std::uint32_t node_count = 0;
  RunMode mode = RunMode::graded;
  std::uint32_t runs = 0;
  std::uint32_t ok = 0;
  std::uint32_t failed = 0;
  double mean_nodes_selected = 0.0;
  double mean_route_length = 0.0;
  double mean_report_fitness = 0.0;
  std::uint32_t oracle_runs = 0;
  std::uint32_t oracle_hits = 0;
  double hit_rate = 0.0; // oracle_hits / oracle_runs, 0 when no oracle runs
  double congestion_rate = 0.0;

  bool operator==(const AggregateRow&) const = default;
};

struct SweepReport {
  std::string config_digest;
  std::uint64_t base_seed = 0;
  std::vector<AggregateRow> rows; // per node count, graded then ungraded
  std::vector<RunReport> runs;

  bool operator==(const SweepReport&) const = default;
};

// Both modes over runs_per_count seeded topologies per node count; each run
// pair shares one topology and one GA seed.
SweepReport run_sweep(const RunConfig& cfg);

// Fixed-schema text emissions (documented in the README).
std::string run_report_to_json(const RunReport& report);
std::string run_report_csv(const RunReport& report);
std::string sweep_report_to_json(const SweepReport& report);
std::string sweep_csv(const SweepReport& report);
std::string plot_data_csv(const SweepReport& report);

}  // namespace qgr
