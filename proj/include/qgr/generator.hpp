#pragma once

#include <cstdint>

#include "qgr/topology.hpp"

namespace qgr {

struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const ValueRange&) const = default;
};

// Random attribute model. traffic_load is drawn as a fraction of the node's
// own bandwidth, which keeps the congestion rate independent of how much
// bandwidth a node happens to have. A capacity range of {0,0} means "reuse
// the bandwidth range".
struct AttributeConfig {
  ValueRange bandwidth{10.0, 100.0};
  ValueRange lifetime{0.0, 100.0};
  ValueRange capacity{0.0, 0.0};
  ValueRange traffic_fraction{0.0, 1.0};
  double resource_probability = 0.8;

  bool operator==(const AttributeConfig&) const = default;
};

// Builds a region-partitioned random digraph:
//  - nodes are split round-robin over regions (sizes differ by at most 1);
//  - each region gets a random Hamiltonian cycle (keeps it strongly
//    connected) plus random extra edges up to edge_density of its possible
//    directed pairs;
//  - regions are joined into a sparse mesh: each region picks a few partner
//    regions and every joined pair gets random links in both directions;
//  - source defaults to the first node of region 0, destination to the first
//    node of the last region (next node when that collides with the source).
// Retries with a fresh sub-seed until source -> destination is reachable;
// fails after 100 attempts.
Topology generate_topology(std::uint32_t node_count, std::uint32_t region_count,
                           double edge_density, std::uint64_t seed);

// Populates bandwidth, lifetime, resource flag, traffic and edge capacities
// from a seeded generator, and sets node_density to each node's in-degree.
// Deterministic for fixed inputs; the input topology is left untouched.
Topology assign_attributes(const Topology& topo, std::uint64_t seed,
                           const AttributeConfig& cfg = {});

Topology assign_attributes(const Topology& topo, std::uint64_t seed, ValueRange bandwidth,
                           ValueRange lifetime);

}  // namespace qgr
