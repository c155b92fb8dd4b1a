#pragma once

#include <cstdint>
#include <vector>

#include "qgr/topology.hpp"

namespace qgr {

// Cutoffs for the per-node priority predicates. delay_threshold is normally
// resolved to the topology's median node delay before grading (see harness).
struct GradingThresholds {
  double nl_threshold = 0.0;        // alive iff network_lifetime > nl_threshold
  std::uint32_t nd_limit = 5;       // dense iff node_density >= nd_limit
  double congestion_fraction = 0.8; // congested iff traffic > fraction * bandwidth
  double delay_threshold = 0.0;     // delayed iff delay > delay_threshold

  bool operator==(const GradingThresholds&) const = default;
};

// Priority class 1..6 (1 best) from the nested predicate chain:
//   lifetime gone -> 6; density >= limit -> 5; congested -> 4;
//   no resources -> 3; delayed -> 2; otherwise 1.
int priority_of(const NodeMetrics& metrics, const GradingThresholds& thresholds);

// Grade on the -3..+3 quality scale. 0 is the most optimal node, positive
// grades are degraded but usable, negative grades mark non-production nodes
// (congested / resource-starved), -3 means no lifetime left. +3 is unused.
//   P1 -> 0, P2 -> +1, P3 -> -1, P4 -> -2, P5 -> +2, P6 -> -3
int grade_of(int priority);

// Node-induced subgraph of a parent topology. Adjacency is indexed by parent
// node ids so chromosomes can be validated without id remapping.
struct GradedSubgraph {
  std::vector<NodeId> nodes; // surviving ids, ascending
  std::vector<Edge> edges;   // parent edges with both endpoints surviving
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<std::vector<NodeId>> adjacency; // by parent id, neighbours ascending
  std::vector<char> member;                   // by parent id

  bool contains(NodeId id) const { return id < member.size() && member[id]; }
  bool has_edge(NodeId from, NodeId to) const;
  bool reachable(NodeId from, NodeId to) const;

  // hop count of the shortest source -> destination route; throws no_route
  std::size_t shortest_hops() const;

  static GradedSubgraph induced(const Topology& topo, std::vector<NodeId> keep);
};

// Region-wise grade filtering:
//   1. keep nodes whose priority class is among the three best classes
//      present in their region;
//   2. of those, keep grades in [-2,+2];
//   3. then keep grades in [0,+2];
//   4. induce the subgraph, force-include source and destination, and verify
//      a source -> destination route survives (throws disconnected if not).
GradedSubgraph level1_select(const Topology& topo, const GradingThresholds& thresholds);

// The whole topology as a subgraph; the ungraded pipeline runs on this.
GradedSubgraph full_subgraph(const Topology& topo);

}  // namespace qgr
