#include "qgr/topology.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qgr/digest.hpp"

namespace qgr {

std::size_t in_degree(const Topology& topo, NodeId node) {
  if (node >= topo.node_count()) fail(Errc::unknown_node, "node " + std::to_string(node));
  std::size_t n = 0;
  for (const Edge& e : topo.edges)
    if (e.to == node) ++n;
  return n;
}

std::size_t out_degree(const Topology& topo, NodeId node) {
  if (node >= topo.node_count()) fail(Errc::unknown_node, "node " + std::to_string(node));
  std::size_t n = 0;
  for (const Edge& e : topo.edges)
    if (e.from == node) ++n;
  return n;
}

std::vector<std::vector<NodeId>> out_adjacency(const Topology& topo) {
  std::vector<std::vector<NodeId>> adj(topo.node_count());
  for (const Edge& e : topo.edges) adj[e.from].push_back(e.to);
  return adj;
}

bool path_exists(const Topology& topo, NodeId from, NodeId to) {
  if (from >= topo.node_count() || to >= topo.node_count()) return false;
  auto adj = out_adjacency(topo);
  std::vector<char> seen(topo.node_count(), 0);
  std::deque<NodeId> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == to) return true;
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

using nlohmann::json;

static json metrics_to_json(const NodeMetrics& m) {
  return json{{"bandwidth", m.bandwidth},
              {"network_lifetime", m.network_lifetime},
              {"resource_allocated", m.resource_allocated},
              {"node_density", m.node_density},
              {"traffic_load", m.traffic_load},
              {"delay", m.delay}};
}

static NodeMetrics metrics_from_json(const json& j) {
  NodeMetrics m;
  j.at("bandwidth").get_to(m.bandwidth);
  j.at("network_lifetime").get_to(m.network_lifetime);
  j.at("resource_allocated").get_to(m.resource_allocated);
  j.at("node_density").get_to(m.node_density);
  j.at("traffic_load").get_to(m.traffic_load);
  j.at("delay").get_to(m.delay);
  return m;
}

std::string topology_to_json(const Topology& topo) {
  json doc;
  doc["seed"] = topo.seed;
  doc["source"] = topo.source;
  doc["destination"] = topo.destination;
  json nodes = json::array();
  for (const Node& n : topo.nodes) {
    nodes.push_back(json{{"id", n.id}, {"region", n.region}, {"metrics", metrics_to_json(n.metrics)}});
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& e : topo.edges) {
    edges.push_back(json{{"from", e.from}, {"to", e.to}, {"capacity", e.capacity}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Topology topology_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::storage_error, std::string("topology parse: ") + e.what());
  }
  Topology topo;
  try {
    doc.at("seed").get_to(topo.seed);
    doc.at("source").get_to(topo.source);
    doc.at("destination").get_to(topo.destination);
    for (const json& jn : doc.at("nodes")) {
      Node n;
      jn.at("id").get_to(n.id);
      jn.at("region").get_to(n.region);
      n.metrics = metrics_from_json(jn.at("metrics"));
      topo.nodes.push_back(n);
    }
    for (const json& je : doc.at("edges")) {
      Edge e;
      je.at("from").get_to(e.from);
      je.at("to").get_to(e.to);
      je.at("capacity").get_to(e.capacity);
      topo.edges.push_back(e);
    }
  } catch (const json::exception& e) {
    fail(Errc::storage_error, std::string("topology schema: ") + e.what());
  }
  return topo;
}

void save_topology(const Topology& topo, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::storage_error, "cannot open " + path + " for writing");
  out << topology_to_json(topo);
  if (!out) fail(Errc::storage_error, "write failed: " + path);
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::storage_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return topology_from_json(buf.str());
}

std::string topology_digest(const Topology& topo) { return fnv1a_hex(topology_to_json(topo)); }

}  // namespace qgr
