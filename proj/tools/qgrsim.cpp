#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgr/harness.hpp"
#include "qgr/knowledge_base.hpp"
#include "qgr/queueing.hpp"
#include "qgr/rng.hpp"
#include "qgr/run_config.hpp"

namespace {

// exit codes: 0 success, 2 usage, 3 no-route, 4 I/O
int exit_code_for(const qgr::Error& e) {
  switch (e.code()) {
    case qgr::Errc::no_route:
    case qgr::Errc::disconnected:
    case qgr::Errc::generation_failed:
      return 3;
    case qgr::Errc::storage_error:
      return 4;
    case qgr::Errc::invalid_config:
    case qgr::Errc::unknown_node:
      return 2;
    default:
      return 1;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) qgr::fail(qgr::Errc::storage_error, "cannot open " + path + " for writing");
  out << content;
  if (!out) qgr::fail(qgr::Errc::storage_error, "write failed: " + path);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Options {
  std::string config_path;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;

  // gen-topology
  std::uint32_t nodes = 32;
  std::uint32_t regions = 0;
  double density = 0.5;
  double bw_min = 10.0, bw_max = 100.0;
  double life_min = 0.0, life_max = 100.0;
  double cap_min = 0.0, cap_max = 0.0;
  double resource_prob = 0.8;
  double mu = 12.0;
  std::int64_t source = -1;
  std::int64_t destination = -1;

  // run
  std::string topology_path;
  std::string mode = "graded";
  double demand = 50.0;
  std::string kb_path;

  // compare
  std::vector<std::uint32_t> sweep_nodes;
  std::uint32_t runs = 25;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgrsim - deterministic simulator comparing grade-filtered vs plain GA routing"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON run-config file; flags override its values");
  app.add_option("--seed", opt.seed, "master seed for the subcommand");
  app.add_option("-o,--output", opt.output, "output file (or file prefix for compare)");
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* gen = app.add_subcommand("gen-topology", "generate a topology file");
  gen->fallthrough();
  gen->add_option("--nodes", opt.nodes, "node count");
  gen->add_option("--regions", opt.regions, "region count (0 = nodes/6, clamped to [1,64])");
  gen->add_option("--density", opt.density, "edge density in (0,1]");
  gen->add_option("--bw-min", opt.bw_min, "bandwidth range low");
  gen->add_option("--bw-max", opt.bw_max, "bandwidth range high");
  gen->add_option("--life-min", opt.life_min, "lifetime range low");
  gen->add_option("--life-max", opt.life_max, "lifetime range high");
  gen->add_option("--cap-min", opt.cap_min, "capacity range low (0,0 = bandwidth range)");
  gen->add_option("--cap-max", opt.cap_max, "capacity range high");
  gen->add_option("--resource-prob", opt.resource_prob, "resource allocation probability");
  gen->add_option("--mu", opt.mu, "service-rate constant for delay annotation");
  gen->add_option("--source", opt.source, "override source node");
  gen->add_option("--dest", opt.destination, "override destination node");

  CLI::App* run = app.add_subcommand("run", "run one graded or ungraded routing pass");
  run->fallthrough();
  run->add_option("--topology", opt.topology_path, "topology JSON file")->required();
  run->add_option("--mode", opt.mode, "graded | ungraded")->required();
  run->add_option("--demand", opt.demand, "required bottleneck bandwidth");
  run->add_option("--kb", opt.kb_path, "knowledge base file to append the best path to");

  CLI::App* compare = app.add_subcommand("compare", "sweep both modes and emit aggregate tables");
  compare->fallthrough();
  compare->add_option("--nodes", opt.sweep_nodes, "node counts for the sweep")->delimiter(',');
  compare->add_option("--runs", opt.runs, "runs per node count");
  compare->add_option("--demand", opt.demand, "required bottleneck bandwidth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    qgr::RunConfig cfg = opt.config_path.empty() ? qgr::RunConfig{} : qgr::load_config(opt.config_path);

    if (gen->parsed()) {
      if (gen->count("--nodes")) cfg.topology.node_count = opt.nodes;
      if (gen->count("--regions")) cfg.topology.region_count = opt.regions;
      if (gen->count("--density")) cfg.topology.edge_density = opt.density;
      if (gen->count("--bw-min")) cfg.attributes.bandwidth.lo = opt.bw_min;
      if (gen->count("--bw-max")) cfg.attributes.bandwidth.hi = opt.bw_max;
      if (gen->count("--life-min")) cfg.attributes.lifetime.lo = opt.life_min;
      if (gen->count("--life-max")) cfg.attributes.lifetime.hi = opt.life_max;
      if (gen->count("--cap-min")) cfg.attributes.capacity.lo = opt.cap_min;
      if (gen->count("--cap-max")) cfg.attributes.capacity.hi = opt.cap_max;
      if (gen->count("--resource-prob")) cfg.attributes.resource_probability = opt.resource_prob;
      if (gen->count("--mu")) cfg.delay.mu = opt.mu;
      if (app.count("--seed")) cfg.topology.seed = opt.seed;
      if (gen->count("--source")) cfg.topology.source = opt.source;
      if (gen->count("--dest")) cfg.topology.destination = opt.destination;

      const std::uint64_t seed = cfg.topology.seed;
      qgr::Topology topo = qgr::make_instance(cfg, cfg.topology.node_count, seed,
                                              qgr::derive_seed(seed, {7}));
      if (cfg.topology.source >= 0 || cfg.topology.destination >= 0) {
        const auto n = static_cast<std::int64_t>(topo.node_count());
        if (cfg.topology.source >= 0) {
          if (cfg.topology.source >= n) qgr::fail(qgr::Errc::unknown_node, "source out of range");
          topo.source = static_cast<qgr::NodeId>(cfg.topology.source);
        }
        if (cfg.topology.destination >= 0) {
          if (cfg.topology.destination >= n)
            qgr::fail(qgr::Errc::unknown_node, "destination out of range");
          topo.destination = static_cast<qgr::NodeId>(cfg.topology.destination);
        }
        if (topo.source == topo.destination)
          qgr::fail(qgr::Errc::invalid_config, "source and destination must differ");
        if (!qgr::path_exists(topo, topo.source, topo.destination))
          qgr::fail(qgr::Errc::no_route, "no route between the chosen endpoints");
      }
      const std::string out = opt.output.empty() ? "topology.json" : opt.output;
      qgr::save_topology(topo, out);
      std::cout << "wrote " << out << "\n"
                << "seed: " << seed << "\n"
                << "topology_digest: " << qgr::topology_digest(topo) << "\n"
                << "config_digest: " << qgr::config_digest(cfg) << "\n";
      return 0;
    }

    if (run->parsed()) {
      if (run->count("--demand")) cfg.ga.demand = opt.demand;
      const qgr::RunMode mode = qgr::run_mode_from_string(opt.mode);
      const qgr::Topology topo = qgr::load_topology(opt.topology_path);

      std::uint64_t seed = opt.seed;
      if (!app.count("--seed")) {
        seed = entropy_seed();
        std::cout << "seed drawn from entropy, rerun with --seed " << seed << "\n";
      }
      std::cout << "seed: " << seed << "\n";

      qgr::KnowledgeBase kb(opt.kb_path);
      qgr::RunReport report =
          qgr::run_once(topo, mode, cfg, seed, opt.kb_path.empty() ? nullptr : &kb);

      const std::string out = opt.output.empty() ? ("report." + opt.format) : opt.output;
      write_file(out, opt.format == "csv" ? qgr::run_report_csv(report)
                                          : qgr::run_report_to_json(report));
      std::cout << "wrote " << out << "\n"
                << "status: " << qgr::to_string(report.status) << "\n"
                << "config_digest: " << report.config_digest << "\n";
      if (report.status == qgr::RunStatus::ok) {
        std::cout << "route_length: " << report.route_length
                  << "  report_fitness: " << report.report_fitness << "\n";
        return 0;
      }
      return 3;
    }

    // compare
    if (compare->count("--nodes")) cfg.sweep.node_counts = opt.sweep_nodes;
    if (compare->count("--runs")) cfg.sweep.runs_per_count = opt.runs;
    if (compare->count("--demand")) cfg.ga.demand = opt.demand;
    if (app.count("--seed")) cfg.sweep.base_seed = opt.seed;

    const qgr::SweepReport sweep = qgr::run_sweep(cfg);
    const std::string prefix = opt.output.empty() ? "compare" : opt.output;
    write_file(prefix + ".csv", qgr::sweep_csv(sweep));
    write_file(prefix + "_plot.csv", qgr::plot_data_csv(sweep));
    if (opt.format == "json") write_file(prefix + ".json", qgr::sweep_report_to_json(sweep));
    std::cout << "wrote " << prefix << ".csv, " << prefix << "_plot.csv"
              << (opt.format == "json" ? ", " + prefix + ".json" : "") << "\n"
              << "config_digest: " << sweep.config_digest << "\n";

    bool every_cell_ok = true;
    for (const qgr::AggregateRow& row : sweep.rows)
      if (row.ok == 0) every_cell_ok = false;
    return every_cell_ok ? 0 : 3;
  } catch (const qgr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
