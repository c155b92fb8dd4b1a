#include "qgr/grading.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "qgr/queueing.hpp"

namespace qgr {

int priority_of(const NodeMetrics& metrics, const GradingThresholds& thresholds) {
  if (!(metrics.network_lifetime > thresholds.nl_threshold)) return 6;
  if (!(metrics.node_density < thresholds.nd_limit)) return 5;
  if (congestion_exists(metrics, thresholds.congestion_fraction)) return 4;
  if (!metrics.resource_allocated) return 3;
  if (metrics.delay > thresholds.delay_threshold) return 2;
  return 1;
}

int grade_of(int priority) {
  switch (priority) {
    case 1: return 0;
    case 2: return +1;
    case 3: return -1;
    case 4: return -2;
    case 5: return +2;
    case 6: return -3;
    default: fail(Errc::invalid_config, "priority must be in 1..6");
  }
}

bool GradedSubgraph::has_edge(NodeId from, NodeId to) const {
  if (from >= adjacency.size()) return false;
  const auto& row = adjacency[from];
  return std::binary_search(row.begin(), row.end(), to);
}

std::size_t GradedSubgraph::shortest_hops() const {
  if (!contains(source) || !contains(destination)) fail(Errc::no_route, "endpoint filtered out");
  std::vector<std::size_t> dist(member.size(), SIZE_MAX);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == destination) return dist[u];
    for (NodeId v : adjacency[u]) {
      if (dist[v] == SIZE_MAX) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  fail(Errc::no_route, "destination unreachable");
}

bool GradedSubgraph::reachable(NodeId from, NodeId to) const {
  if (!contains(from) || !contains(to)) return false;
  std::vector<char> seen(member.size(), 0);
  std::deque<NodeId> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == to) return true;
    for (NodeId v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

GradedSubgraph GradedSubgraph::induced(const Topology& topo, std::vector<NodeId> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  GradedSubgraph g;
  g.source = topo.source;
  g.destination = topo.destination;
  g.member.assign(topo.node_count(), 0);
  for (NodeId id : keep) {
    if (id >= topo.node_count()) fail(Errc::unknown_node, "node " + std::to_string(id));
    g.member[id] = 1;
  }
  g.nodes = std::move(keep);
  g.adjacency.assign(topo.node_count(), {});
  for (const Edge& e : topo.edges) {
    if (g.member[e.from] && g.member[e.to]) {
      g.edges.push_back(e);
      g.adjacency[e.from].push_back(e.to); // topo.edges sorted, rows stay sorted
    }
  }
  return g;
}

GradedSubgraph level1_select(const Topology& topo, const GradingThresholds& thresholds) {
  std::map<RegionId, std::vector<NodeId>> regions;
  for (const Node& n : topo.nodes) regions[n.region].push_back(n.id);

  std::vector<NodeId> survivors;
  for (const auto& [region, ids] : regions) {
    std::set<int> classes;
    std::vector<int> priority(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      priority[i] = priority_of(topo.node(ids[i]).metrics, thresholds);
      classes.insert(priority[i]);
    }
    // best three priority classes present in this region
    std::set<int> top;
    for (int c : classes) {
      top.insert(c);
      if (top.size() == 3) break;
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!top.count(priority[i])) continue;      // step 1
      const int grade = grade_of(priority[i]);
      if (grade < -2 || grade > 2) continue;      // step 2
      if (grade < 0) continue;                    // step 3
      survivors.push_back(ids[i]);
    }
  }
  survivors.push_back(topo.source);
  survivors.push_back(topo.destination);

  GradedSubgraph g = GradedSubgraph::induced(topo, std::move(survivors));
  if (!g.reachable(g.source, g.destination))
    fail(Errc::disconnected, "no source->destination route among surviving nodes");
  return g;
}

GradedSubgraph full_subgraph(const Topology& topo) {
  std::vector<NodeId> all(topo.node_count());
  for (NodeId i = 0; i < topo.node_count(); ++i) all[i] = i;
  return GradedSubgraph::induced(topo, std::move(all));
}

}  // namespace qgr
