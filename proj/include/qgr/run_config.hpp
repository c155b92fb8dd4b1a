#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgr/ga.hpp"
#include "qgr/generator.hpp"
#include "qgr/grading.hpp"

namespace qgr {

struct TopologyParams {
  std::uint32_t node_count = 32;
  std::uint32_t region_count = 0; // 0 = node_count / 6, clamped to [1,64]
  double edge_density = 0.5;
  std::uint64_t seed = 1;
  std::int64_t source = -1;      // -1 = generator default
  std::int64_t destination = -1; // -1 = generator default

  bool operator==(const TopologyParams&) const = default;
};

struct DelayParams {
  double mu = 12.0;            // service-rate constant
  bool median_threshold = true; // delay cutoff = median node delay of the topology
  double fixed_threshold = 0.0; // used when median_threshold is false

  bool operator==(const DelayParams&) const = default;
};

struct SweepParams {
  std::vector<std::uint32_t> node_counts{4, 8, 16, 32, 64, 128, 256};
  std::uint32_t runs_per_count = 25;
  std::uint64_t base_seed = 42;
  std::size_t oracle_cap = 14; // exhaustive oracle only at or below this many nodes

  bool operator==(const SweepParams&) const = default;
};

struct RunConfig {
  TopologyParams topology;
  AttributeConfig attributes;
  DelayParams delay;
  GradingThresholds grading; // delay_threshold ignored when delay.median_threshold
  GaConfig ga;
  SweepParams sweep;

  bool operator==(const RunConfig&) const = default;
};

std::uint32_t effective_region_count(const RunConfig& cfg, std::uint32_t node_count);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

// Hex digest of the canonical JSON form; embedded in every emitted report.
std::string config_digest(const RunConfig& cfg);

}  // namespace qgr
