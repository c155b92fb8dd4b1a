#include "qgr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qgr/rng.hpp"

namespace qgr {

namespace {

std::vector<std::vector<NodeId>> region_members(std::uint32_t node_count, std::uint32_t region_count) {
  std::vector<std::vector<NodeId>> members(region_count);
  for (NodeId i = 0; i < node_count; ++i) members[i % region_count].push_back(i);
  return members;
}

// One generation attempt; connectivity is checked by the caller.
Topology build_attempt(std::uint32_t node_count, std::uint32_t region_count, double edge_density,
                       std::uint64_t seed, Rng& rng) {
  Topology topo;
  topo.seed = seed;
  topo.nodes.reserve(node_count);
  for (NodeId i = 0; i < node_count; ++i) topo.nodes.push_back(Node{i, i % region_count, {}});

  auto members = region_members(node_count, region_count);
  std::set<std::pair<NodeId, NodeId>> edges;

  for (const auto& reg : members) {
    const std::size_t k = reg.size();
    if (k < 2) continue;

    // random cycle keeps the region strongly connected
    std::vector<NodeId> order = reg;
    rng.shuffle(order);
    for (std::size_t i = 0; i < k; ++i) edges.emplace(order[i], order[(i + 1) % k]);

    const auto target = static_cast<std::size_t>(std::llround(edge_density * static_cast<double>(k * (k - 1))));
    if (target > k) {
      std::vector<std::pair<NodeId, NodeId>> pool;
      for (NodeId a : reg)
        for (NodeId b : reg)
          if (a != b && !edges.count({a, b})) pool.emplace_back(a, b);
      rng.shuffle(pool);
      std::size_t need = target - k;
      for (std::size_t i = 0; i < pool.size() && need > 0; ++i, --need) edges.insert(pool[i]);
    }
  }

  // sparse region mesh: every region picks a few partner regions and gets
  // wired to each of them with a handful of random links in both directions;
  // fanout grows with the region count to keep the mesh diameter low
  const std::uint32_t fanout =
      std::min(region_count - 1, std::max<std::uint32_t>(4, region_count / 4));
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t r = 0; r < region_count; ++r) {
    std::vector<std::uint32_t> others;
    for (std::uint32_t s = 0; s < region_count; ++s)
      if (s != r) others.push_back(s);
    rng.shuffle(others);
    for (std::uint32_t i = 0; i < fanout; ++i)
      pairs.emplace(std::min(r, others[i]), std::max(r, others[i]));
  }
  for (const auto& [r, s] : pairs) {
    const auto& a = members[r];
    const auto& b = members[s];
    const auto want = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(edge_density * static_cast<double>(std::min(a.size(), b.size())) / 2.0)));
    for (int dir = 0; dir < 2; ++dir) {
      const auto& from = dir == 0 ? a : b;
      const auto& to = dir == 0 ? b : a;
      std::vector<std::pair<NodeId, NodeId>> pool;
      for (NodeId u : from)
        for (NodeId v : to)
          if (!edges.count({u, v})) pool.emplace_back(u, v);
      rng.shuffle(pool);
      for (std::size_t i = 0; i < pool.size() && i < want; ++i) edges.insert(pool[i]);
    }
  }

  topo.edges.reserve(edges.size());
  for (const auto& [u, v] : edges) topo.edges.push_back(Edge{u, v, 1.0});

  topo.source = members.front().front();
  topo.destination = members.back().front();
  if (topo.destination == topo.source) topo.destination = members.back().at(1);
  return topo;
}

void check_range(const ValueRange& r, const char* name, bool positive_lo) {
  if (!(r.lo < r.hi)) fail(Errc::invalid_config, std::string(name) + " range is empty or inverted");
  if (positive_lo && !(r.lo > 0.0)) fail(Errc::invalid_config, std::string(name) + " range must start above 0");
  if (r.lo < 0.0) fail(Errc::invalid_config, std::string(name) + " range must be non-negative");
}

}  // namespace

Topology generate_topology(std::uint32_t node_count, std::uint32_t region_count, double edge_density,
                           std::uint64_t seed) {
  if (node_count < 2) fail(Errc::invalid_config, "node_count must be >= 2");
  if (region_count < 1) fail(Errc::invalid_config, "region_count must be >= 1");
  if (node_count < region_count) fail(Errc::invalid_config, "node_count must be >= region_count");
  if (!(edge_density > 0.0) || edge_density > 1.0) fail(Errc::invalid_config, "edge_density must be in (0,1]");

  const int max_attempts = 100;
  const std::uint64_t density_bits = static_cast<std::uint64_t>(std::llround(edge_density * 1e9));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, {node_count, region_count, density_bits, static_cast<std::uint64_t>(attempt)}));
    Topology topo = build_attempt(node_count, region_count, edge_density, seed, rng);
    if (path_exists(topo, topo.source, topo.destination)) return topo;
  }
  fail(Errc::generation_failed,
       "no source->destination route after " + std::to_string(max_attempts) + " attempts");
}

Topology assign_attributes(const Topology& topo, std::uint64_t seed, const AttributeConfig& cfg) {
  check_range(cfg.bandwidth, "bandwidth", true);
  check_range(cfg.lifetime, "lifetime", false);
  check_range(cfg.traffic_fraction, "traffic_fraction", false);
  ValueRange capacity = cfg.capacity;
  if (capacity.lo == 0.0 && capacity.hi == 0.0) capacity = cfg.bandwidth;
  check_range(capacity, "capacity", true);
  if (cfg.resource_probability < 0.0 || cfg.resource_probability > 1.0)
    fail(Errc::invalid_config, "resource_probability must be in [0,1]");

  Topology out = topo;
  Rng rng(derive_seed(seed, {0x61747472ull}));  // attribute lane

  for (Node& n : out.nodes) {
    n.metrics.bandwidth = rng.uniform(cfg.bandwidth.lo, cfg.bandwidth.hi);
    n.metrics.network_lifetime = rng.uniform(cfg.lifetime.lo, cfg.lifetime.hi);
    n.metrics.resource_allocated = rng.chance(cfg.resource_probability);
    n.metrics.traffic_load =
        n.metrics.bandwidth * rng.uniform(cfg.traffic_fraction.lo, cfg.traffic_fraction.hi);
    n.metrics.delay = 0.0;
  }
  for (Edge& e : out.edges) e.capacity = rng.uniform(capacity.lo, capacity.hi);

  std::vector<std::uint32_t> indeg(out.node_count(), 0);
  for (const Edge& e : out.edges) ++indeg[e.to];
  for (Node& n : out.nodes) n.metrics.node_density = indeg[n.id];

  return out;
}

Topology assign_attributes(const Topology& topo, std::uint64_t seed, ValueRange bandwidth,
                           ValueRange lifetime) {
  AttributeConfig cfg;
  cfg.bandwidth = bandwidth;
  cfg.lifetime = lifetime;
  return assign_attributes(topo, seed, cfg);
}

}  // namespace qgr
