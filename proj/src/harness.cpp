#include "qgr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qgr/queueing.hpp"
#include "qgr/rng.hpp"

namespace qgr {

using nlohmann::json;

const char* to_string(RunMode m) { return m == RunMode::graded ? "graded" : "ungraded"; }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::disconnected: return "disconnected";
    case RunStatus::no_route: return "no_route";
  }
  return "unknown";
}

RunMode run_mode_from_string(const std::string& s) {
  if (s == "graded") return RunMode::graded;
  if (s == "ungraded") return RunMode::ungraded;
  fail(Errc::invalid_config, "mode must be graded or ungraded, got '" + s + "'");
}

namespace {

struct OracleSearch {
  OracleSearch(const GradedSubgraph& subgraph, const Topology& topo, double required)
      : g(subgraph), metrics(topo), demand(required), stack{subgraph.source} {}

  const GradedSubgraph& g;
  const Topology& metrics;
  double demand;
  Genes stack;
  double bottleneck = std::numeric_limits<double>::infinity();
  std::optional<Chromosome> best_feasible;
  std::size_t best_feasible_hops = 0;
  double best_feasible_bottleneck = 0.0;
  std::optional<Chromosome> best_any;
  double best_any_bottleneck = 0.0;

  void offer(double b) {
    Chromosome c{stack};
    const std::size_t hops = c.hops();
    if (b >= demand) {
      const bool better = !best_feasible || hops < best_feasible_hops ||
                          (hops == best_feasible_hops && b > best_feasible_bottleneck) ||
                          (hops == best_feasible_hops && b == best_feasible_bottleneck &&
                           c.path < best_feasible->path);
      if (better) {
        best_feasible = c;
        best_feasible_hops = hops;
        best_feasible_bottleneck = b;
      }
    }
    if (!best_any || beats(b, c, best_any_bottleneck, *best_any)) {
      best_any = std::move(c);
      best_any_bottleneck = b;
    }
  }

  void dfs(NodeId u, std::vector<char>& on_path) {
    const double saved = bottleneck;
    bottleneck = std::min(bottleneck, metrics.node(u).metrics.bandwidth);
    if (u == g.destination) {
      offer(bottleneck);
      bottleneck = saved;
      return;
    }
    for (NodeId v : g.adjacency[u]) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      stack.push_back(v);
      dfs(v, on_path);
      stack.pop_back();
      on_path[v] = 0;
    }
    bottleneck = saved;
  }
};

}  // namespace

Chromosome oracle_best_path(const GradedSubgraph& subgraph, const Topology& metrics, double demand) {
  if (!subgraph.contains(subgraph.source) || !subgraph.contains(subgraph.destination))
    fail(Errc::no_route, "source or destination missing from subgraph");
  OracleSearch search(subgraph, metrics, demand);
  std::vector<char> on_path(subgraph.member.size(), 0);
  on_path[subgraph.source] = 1;
  search.dfs(subgraph.source, on_path);
  if (search.best_feasible) return *search.best_feasible;
  if (search.best_any) return *search.best_any;
  fail(Errc::no_route, "no source->destination path");
}

OracleScore oracle_score(const Topology& metrics, const Chromosome& c, double demand) {
  OracleScore s;
  s.bottleneck = path_bottleneck(metrics, c);
  s.hops = c.hops();
  s.feasible = s.bottleneck >= demand;
  return s;
}

GradingThresholds resolve_thresholds(const RunConfig& cfg, const Topology& topo) {
  GradingThresholds thr = cfg.grading;
  thr.delay_threshold = cfg.delay.median_threshold ? median_delay(topo) : cfg.delay.fixed_threshold;
  return thr;
}

Topology make_instance(const RunConfig& cfg, std::uint32_t node_count, std::uint64_t topo_seed,
                       std::uint64_t attr_seed) {
  Topology topo = generate_topology(node_count, effective_region_count(cfg, node_count),
                                    cfg.topology.edge_density, topo_seed);
  topo = assign_attributes(topo, attr_seed, cfg.attributes);
  return annotate_delays(topo, cfg.delay.mu);
}

namespace {

enum SeedLane : std::uint64_t { lane_ga = 1, lane_replay = 2 };

bool replay_congestion(const Topology& topo, const Chromosome& path, const RunConfig& cfg,
                       std::uint64_t seed) {
  // one fresh traffic draw after the route is fixed, same traffic model
  Rng rng(derive_seed(seed, {lane_replay}));
  std::vector<double> traffic(topo.node_count(), 0.0);
  for (const Node& n : topo.nodes)
    traffic[n.id] = n.metrics.bandwidth * rng.uniform(cfg.attributes.traffic_fraction.lo,
                                                      cfg.attributes.traffic_fraction.hi);
  for (NodeId id : path.path) {
    if (traffic[id] > cfg.grading.congestion_fraction * topo.node(id).metrics.bandwidth) return true;
  }
  return false;
}

}  // namespace

RunReport run_once(const Topology& topo, RunMode mode, const RunConfig& cfg, std::uint64_t seed,
                   KnowledgeBase* kb) {
  RunReport report;
  report.mode = mode;
  report.seed = seed;
  report.config_digest = config_digest(cfg);
  report.total_nodes = static_cast<std::uint32_t>(topo.node_count());

  GradedSubgraph working;
  if (mode == RunMode::graded) {
    try {
      working = level1_select(topo, resolve_thresholds(cfg, topo));
    } catch (const Error& e) {
      if (e.code() == Errc::disconnected) {
        report.status = RunStatus::disconnected;
        return report;
      }
      throw;
    }
  } else {
    working = full_subgraph(topo);
  }

  std::vector<Chromosome> paths;
  try {
    // default hop bound: a small slack over the working graph's shortest
    // route keeps the input set focused on competitive paths
    const std::size_t max_hops =
        cfg.ga.max_hops > 0 ? cfg.ga.max_hops : working.shortest_hops() + 2;
    paths = enumerate_paths(working, cfg.ga.population_size, max_hops);
  } catch (const Error& e) {
    if (e.code() == Errc::no_route) {
      report.status = RunStatus::no_route;
      return report;
    }
    throw;
  }

  Rng rng(derive_seed(seed, {lane_ga}));
  const EvolveResult result = evolve(Population{std::move(paths), 0}, cfg.ga, topo, working, rng);

  report.best_path = result.best;
  report.route_length = result.best.hops();
  report.report_fitness = result.history.back();
  report.history = result.history;

  std::set<NodeId> distinct;
  for (const Chromosome& c : result.final_population.members)
    distinct.insert(c.path.begin(), c.path.end());
  report.nodes_selected = static_cast<std::uint32_t>(distinct.size());

  if (topo.node_count() <= cfg.sweep.oracle_cap) {
    const Chromosome oracle = oracle_best_path(working, topo, cfg.ga.demand);
    report.oracle_evaluated = true;
    report.oracle_path_length = oracle.hops();
    report.oracle_match = report.route_length == report.oracle_path_length;
  }

  report.congestion_after_fix = replay_congestion(topo, result.best, cfg, seed);
  report.status = RunStatus::ok;

  if (kb) {
    KnowledgeBaseEntry entry;
    entry.topology_digest = topology_digest(topo);
    entry.source = topo.source;
    entry.destination = topo.destination;
    entry.path = result.best.path;
    entry.bottleneck = path_bottleneck(topo, result.best);
    entry.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
    kb->record(entry);
  }
  return report;
}

namespace {

AggregateRow aggregate(std::uint32_t node_count, RunMode mode, const std::vector<RunReport>& runs) {
  AggregateRow row;
  row.node_count = node_count;
  row.mode = mode;
  double sum_selected = 0.0, sum_length = 0.0, sum_fitness = 0.0;
  std::uint32_t congested = 0;
  for (const RunReport& r : runs) {
    if (r.mode != mode) continue;
    ++row.runs;
    if (r.status != RunStatus::ok) {
      ++row.failed;
      continue;
    }
    ++row.ok;
    sum_selected += r.nodes_selected;
    sum_length += static_cast<double>(r.route_length);
    sum_fitness += r.report_fitness;
    if (r.congestion_after_fix) ++congested;
    if (r.oracle_evaluated) {
      ++row.oracle_runs;
      if (r.oracle_match) ++row.oracle_hits;
    }
  }
  if (row.ok > 0) {
    row.mean_nodes_selected = sum_selected / row.ok;
    row.mean_route_length = sum_length / row.ok;
    row.mean_report_fitness = sum_fitness / row.ok;
    row.congestion_rate = static_cast<double>(congested) / row.ok;
  }
  if (row.oracle_runs > 0) row.hit_rate = static_cast<double>(row.oracle_hits) / row.oracle_runs;
  return row;
}

}  // namespace

SweepReport run_sweep(const RunConfig& cfg) {
  if (cfg.sweep.node_counts.empty()) fail(Errc::invalid_config, "node_counts must be nonempty");
  SweepReport report;
  report.config_digest = config_digest(cfg);
  report.base_seed = cfg.sweep.base_seed;

  for (std::uint32_t n : cfg.sweep.node_counts) {
    std::vector<RunReport> cell;
    for (std::uint32_t r = 0; r < cfg.sweep.runs_per_count; ++r) {
      const std::uint64_t topo_seed = derive_seed(cfg.sweep.base_seed, {n, r, 1});
      const std::uint64_t attr_seed = derive_seed(cfg.sweep.base_seed, {n, r, 2});
      const std::uint64_t run_seed = derive_seed(cfg.sweep.base_seed, {n, r, 3});
      const Topology topo = make_instance(cfg, n, topo_seed, attr_seed);
      cell.push_back(run_once(topo, RunMode::graded, cfg, run_seed));
      cell.push_back(run_once(topo, RunMode::ungraded, cfg, run_seed));
    }
    report.rows.push_back(aggregate(n, RunMode::graded, cell));
    report.rows.push_back(aggregate(n, RunMode::ungraded, cell));
    report.runs.insert(report.runs.end(), cell.begin(), cell.end());
  }
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string join_path(const Chromosome& c) {
  std::string out;
  for (std::size_t i = 0; i < c.path.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(c.path[i]);
  }
  return out;
}

json report_json(const RunReport& r) {
  return json{{"mode", to_string(r.mode)},
              {"status", to_string(r.status)},
              {"total_nodes", r.total_nodes},
              {"nodes_selected", r.nodes_selected},
              {"best_path", r.best_path.path},
              {"route_length", r.route_length},
              {"report_fitness", r.report_fitness},
              {"oracle_evaluated", r.oracle_evaluated},
              {"oracle_path_length", r.oracle_path_length},
              {"oracle_match", r.oracle_match},
              {"congestion_after_fix", r.congestion_after_fix},
              {"seed", r.seed},
              {"config_digest", r.config_digest},
              {"history", r.history}};
}

json row_json(const AggregateRow& row) {
  return json{{"node_count", row.node_count},
              {"mode", to_string(row.mode)},
              {"runs", row.runs},
              {"ok", row.ok},
              {"failed", row.failed},
              {"mean_nodes_selected", row.mean_nodes_selected},
              {"mean_route_length", row.mean_route_length},
              {"mean_report_fitness", row.mean_report_fitness},
              {"oracle_runs", row.oracle_runs},
              {"oracle_hits", row.oracle_hits},
              {"shortest_path_hit_rate", row.hit_rate},
              {"congestion_rate", row.congestion_rate}};
}

}  // namespace

std::string run_report_to_json(const RunReport& r) { return report_json(r).dump(2) + "\n"; }

std::string run_report_csv(const RunReport& r) {
  std::ostringstream out;
  out << "mode,status,seed,config_digest,total_nodes,nodes_selected,route_length,report_fitness,"
         "oracle_evaluated,oracle_path_length,oracle_match,congestion_after_fix,best_path\n";
  out << to_string(r.mode) << ',' << to_string(r.status) << ',' << r.seed << ',' << r.config_digest
      << ',' << r.total_nodes << ',' << r.nodes_selected << ',' << r.route_length << ','
      << fmt(r.report_fitness) << ',' << (r.oracle_evaluated ? 1 : 0) << ',' << r.oracle_path_length
      << ',' << (r.oracle_match ? 1 : 0) << ',' << (r.congestion_after_fix ? 1 : 0) << ','
      << join_path(r.best_path) << '\n';
  return out.str();
}

std::string sweep_report_to_json(const SweepReport& report) {
  json doc{{"config_digest", report.config_digest}, {"base_seed", report.base_seed}};
  json rows = json::array();
  for (const AggregateRow& row : report.rows) rows.push_back(row_json(row));
  doc["rows"] = std::move(rows);
  json runs = json::array();
  for (const RunReport& r : report.runs) runs.push_back(report_json(r));
  doc["runs"] = std::move(runs);
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "# config_digest=" << report.config_digest << " base_seed=" << report.base_seed << "\n";
  out << "node_count,mode,runs,ok,failed,mean_nodes_selected,mean_route_length,"
         "mean_report_fitness,oracle_runs,oracle_hits,shortest_path_hit_rate,congestion_rate\n";
  for (const AggregateRow& row : report.rows) {
    out << row.node_count << ',' << to_string(row.mode) << ',' << row.runs << ',' << row.ok << ','
        << row.failed << ',';
    if (row.ok > 0)
      out << fmt(row.mean_nodes_selected) << ',' << fmt(row.mean_route_length) << ','
          << fmt(row.mean_report_fitness) << ',';
    else
      out << ",,,";
    out << row.oracle_runs << ',' << row.oracle_hits << ',';
    if (row.oracle_runs > 0) out << fmt(row.hit_rate);
    out << ',';
    if (row.ok > 0) out << fmt(row.congestion_rate);
    out << '\n';
  }
  return out.str();
}

std::string plot_data_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "# config_digest=" << report.config_digest << " base_seed=" << report.base_seed << "\n";
  out << "node_count,nodes_selected_graded,nodes_selected_ungraded\n";
  for (std::size_t i = 0; i + 1 < report.rows.size(); i += 2) {
    const AggregateRow& g = report.rows[i];
    const AggregateRow& u = report.rows[i + 1];
    out << g.node_count << ',';
    if (g.ok > 0) out << fmt(g.mean_nodes_selected);
    out << ',';
    if (u.ok > 0) out << fmt(u.mean_nodes_selected);
    out << '\n';
  }
  return out.str();
}

}  // namespace qgr
