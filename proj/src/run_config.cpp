#include "qgr/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qgr/digest.hpp"

namespace qgr {

using nlohmann::json;

std::uint32_t effective_region_count(const RunConfig& cfg, std::uint32_t node_count) {
  if (cfg.topology.region_count > 0) return std::min(cfg.topology.region_count, node_count);
  return std::clamp<std::uint32_t>(node_count / 6, 1, 64);
}

namespace {

json range_to_json(const ValueRange& r) { return json{{"lo", r.lo}, {"hi", r.hi}}; }

ValueRange range_from_json(const json& j) {
  ValueRange r;
  j.at("lo").get_to(r.lo);
  j.at("hi").get_to(r.hi);
  return r;
}

template <typename T>
void get_if_present(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
  json doc;
  doc["topology"] = json{{"node_count", cfg.topology.node_count},
                         {"region_count", cfg.topology.region_count},
                         {"edge_density", cfg.topology.edge_density},
                         {"seed", cfg.topology.seed},
                         {"source", cfg.topology.source},
                         {"destination", cfg.topology.destination}};
  doc["attributes"] = json{{"bandwidth", range_to_json(cfg.attributes.bandwidth)},
                           {"lifetime", range_to_json(cfg.attributes.lifetime)},
                           {"capacity", range_to_json(cfg.attributes.capacity)},
                           {"traffic_fraction", range_to_json(cfg.attributes.traffic_fraction)},
                           {"resource_probability", cfg.attributes.resource_probability}};
  doc["delay"] = json{{"mu", cfg.delay.mu},
                      {"median_threshold", cfg.delay.median_threshold},
                      {"fixed_threshold", cfg.delay.fixed_threshold}};
  doc["grading"] = json{{"nl_threshold", cfg.grading.nl_threshold},
                        {"nd_limit", cfg.grading.nd_limit},
                        {"congestion_fraction", cfg.grading.congestion_fraction},
                        {"delay_threshold", cfg.grading.delay_threshold}};
  doc["ga"] = json{{"crossover_prob", cfg.ga.crossover_prob},
                   {"mutation_prob", cfg.ga.mutation_prob},
                   {"generations", cfg.ga.generations},
                   {"population_size", cfg.ga.population_size},
                   {"elite_threshold", cfg.ga.elite_threshold},
                   {"crossover_point", cfg.ga.crossover_point},
                   {"pmx_points", json::array({cfg.ga.pmx_points.first, cfg.ga.pmx_points.second})},
                   {"demand", cfg.ga.demand},
                   {"max_hops", cfg.ga.max_hops},
                   {"seed", cfg.ga.seed}};
  doc["sweep"] = json{{"node_counts", cfg.sweep.node_counts},
                      {"runs_per_count", cfg.sweep.runs_per_count},
                      {"base_seed", cfg.sweep.base_seed},
                      {"oracle_cap", cfg.sweep.oracle_cap}};
  return doc.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::storage_error, std::string("config parse: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (doc.contains("topology")) {
      const json& t = doc["topology"];
      get_if_present(t, "node_count", cfg.topology.node_count);
      get_if_present(t, "region_count", cfg.topology.region_count);
      get_if_present(t, "edge_density", cfg.topology.edge_density);
      get_if_present(t, "seed", cfg.topology.seed);
      get_if_present(t, "source", cfg.topology.source);
      get_if_present(t, "destination", cfg.topology.destination);
    }
    if (doc.contains("attributes")) {
      const json& a = doc["attributes"];
      if (a.contains("bandwidth")) cfg.attributes.bandwidth = range_from_json(a["bandwidth"]);
      if (a.contains("lifetime")) cfg.attributes.lifetime = range_from_json(a["lifetime"]);
      if (a.contains("capacity")) cfg.attributes.capacity = range_from_json(a["capacity"]);
      if (a.contains("traffic_fraction"))
        cfg.attributes.traffic_fraction = range_from_json(a["traffic_fraction"]);
      get_if_present(a, "resource_probability", cfg.attributes.resource_probability);
    }
    if (doc.contains("delay")) {
      const json& d = doc["delay"];
      get_if_present(d, "mu", cfg.delay.mu);
      get_if_present(d, "median_threshold", cfg.delay.median_threshold);
      get_if_present(d, "fixed_threshold", cfg.delay.fixed_threshold);
    }
    if (doc.contains("grading")) {
      const json& g = doc["grading"];
      get_if_present(g, "nl_threshold", cfg.grading.nl_threshold);
      get_if_present(g, "nd_limit", cfg.grading.nd_limit);
      get_if_present(g, "congestion_fraction", cfg.grading.congestion_fraction);
      get_if_present(g, "delay_threshold", cfg.grading.delay_threshold);
    }
    if (doc.contains("ga")) {
      const json& g = doc["ga"];
      get_if_present(g, "crossover_prob", cfg.ga.crossover_prob);
      get_if_present(g, "mutation_prob", cfg.ga.mutation_prob);
      get_if_present(g, "generations", cfg.ga.generations);
      get_if_present(g, "population_size", cfg.ga.population_size);
      get_if_present(g, "elite_threshold", cfg.ga.elite_threshold);
      get_if_present(g, "crossover_point", cfg.ga.crossover_point);
      if (g.contains("pmx_points")) {
        cfg.ga.pmx_points = {g["pmx_points"].at(0).get<std::uint32_t>(),
                             g["pmx_points"].at(1).get<std::uint32_t>()};
      }
      get_if_present(g, "demand", cfg.ga.demand);
      get_if_present(g, "max_hops", cfg.ga.max_hops);
      get_if_present(g, "seed", cfg.ga.seed);
    }
    if (doc.contains("sweep")) {
      const json& s = doc["sweep"];
      get_if_present(s, "node_counts", cfg.sweep.node_counts);
      get_if_present(s, "runs_per_count", cfg.sweep.runs_per_count);
      get_if_present(s, "base_seed", cfg.sweep.base_seed);
      get_if_present(s, "oracle_cap", cfg.sweep.oracle_cap);
    }
  } catch (const json::exception& e) {
    fail(Errc::storage_error, std::string("config schema: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::storage_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_digest(const RunConfig& cfg) { return fnv1a_hex(config_to_json(cfg)); }

}  // namespace qgr
