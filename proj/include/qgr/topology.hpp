#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgr/error.hpp"

namespace qgr {

using NodeId = std::uint32_t;
using RegionId = std::uint32_t;

// Per-node attribute vector feeding the grading pipeline.
struct NodeMetrics {
  double bandwidth = 1.0;        // available bandwidth, > 0
  double network_lifetime = 0.0; // remaining lifetime, >= 0
  bool resource_allocated = false;
  std::uint32_t node_density = 0; // in-degree of the node
  double traffic_load = 0.0;      // current traffic, same units as bandwidth
  double delay = 0.0;             // seconds, filled by annotate_delays()

  bool operator==(const NodeMetrics&) const = default;
};

struct Node {
  NodeId id = 0;
  RegionId region = 0;
  NodeMetrics metrics;

  bool operator==(const Node&) const = default;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double capacity = 1.0; // channel capacity, > 0

  bool operator==(const Edge&) const = default;
};

// Directed graph partitioned into regions. Immutable value type: operations
// that "modify" a topology return a new one.
struct Topology {
  std::vector<Node> nodes;  // node id == vector index
  std::vector<Edge> edges;  // sorted by (from, to); no self-loops, no duplicates
  NodeId source = 0;
  NodeId destination = 0;
  std::uint64_t seed = 0;

  std::size_t node_count() const { return nodes.size(); }

  const Node& node(NodeId id) const {
    if (id >= nodes.size()) fail(Errc::unknown_node, "node " + std::to_string(id));
    return nodes[id];
  }

  bool operator==(const Topology&) const = default;
};

std::size_t in_degree(const Topology& topo, NodeId node);
std::size_t out_degree(const Topology& topo, NodeId node);

// Out-neighbour lists indexed by node id, neighbours ascending.
std::vector<std::vector<NodeId>> out_adjacency(const Topology& topo);

// BFS reachability over directed edges.
bool path_exists(const Topology& topo, NodeId from, NodeId to);

// Lossless JSON round trip; canonical byte form (sorted keys).
std::string topology_to_json(const Topology& topo);
Topology topology_from_json(const std::string& text);
void save_topology(const Topology& topo, const std::string& path);
Topology load_topology(const std::string& path);

// Hex digest of the canonical JSON form.
std::string topology_digest(const Topology& topo);

}  // namespace qgr
