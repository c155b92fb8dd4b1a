#include "qgr/queueing.hpp"

#include <algorithm>
#include <cmath>

namespace qgr {

Mm1Stats mm1_mean(const QueueParams& params) {
  if (!(params.lambda > 0.0)) fail(Errc::invalid_rate, "lambda must be > 0");
  if (params.rho < 0.0 || params.rho >= 1.0) fail(Errc::unstable, "rho must be in [0,1)");
  Mm1Stats s;
  s.mean_jobs = params.rho / (1.0 - params.rho);
  s.mean_time = s.mean_jobs * (1.0 / params.lambda);
  return s;
}

double network_delay(const FlowModel& model) {
  if (model.channel_flows.size() != model.channel_capacities.size())
    fail(Errc::invalid_config, "channel_flows and channel_capacities length mismatch");
  if (!(model.gamma > 0.0)) fail(Errc::invalid_gamma, "gamma must be > 0");
  if (!(model.mu > 0.0)) fail(Errc::invalid_rate, "mu must be > 0");

  double total = 0.0;
  for (std::size_t i = 0; i < model.channel_count(); ++i) {
    const double lambda = model.channel_flows[i];
    const double cap = model.channel_capacities[i];
    if (!(cap > 0.0)) fail(Errc::invalid_config, "capacity must be > 0 on channel " + std::to_string(i));
    if (lambda < 0.0) fail(Errc::invalid_rate, "negative flow on channel " + std::to_string(i));
    if (lambda == 0.0) continue;
    if (model.mu * cap <= lambda)
      fail(Errc::unstable, "mu*C <= lambda on channel " + std::to_string(i));
    total += (lambda / model.gamma) * (1.0 / (model.mu * cap - lambda));
  }
  return total;
}

bool congestion_exists(const NodeMetrics& metrics, double threshold_fraction) {
  if (!(metrics.bandwidth > 0.0)) fail(Errc::invalid_config, "bandwidth must be > 0");
  if (!(threshold_fraction > 0.0) || threshold_fraction > 1.0)
    fail(Errc::invalid_config, "threshold_fraction must be in (0,1]");
  return metrics.traffic_load > threshold_fraction * metrics.bandwidth;
}

Topology annotate_delays(const Topology& topo, double mu) {
  if (!(mu > 0.0)) fail(Errc::invalid_rate, "mu must be > 0");

  double gamma = 0.0;
  for (const Node& n : topo.nodes) gamma += n.metrics.traffic_load;

  Topology out = topo;
  if (gamma <= 0.0) {
    for (Node& n : out.nodes) n.metrics.delay = 0.0;
    return out;
  }

  auto adj = out_adjacency(topo);
  std::vector<std::vector<double>> caps(topo.node_count());
  for (const Edge& e : topo.edges) caps[e.from].push_back(e.capacity);

  for (Node& n : out.nodes) {
    const std::size_t fan_out = adj[n.id].size();
    if (fan_out == 0 || n.metrics.traffic_load <= 0.0) {
      n.metrics.delay = 0.0;
      continue;
    }
    const double lambda = n.metrics.traffic_load / static_cast<double>(fan_out);
    double d = 0.0;
    for (double cap : caps[n.id]) {
      if (mu * cap <= lambda)
        fail(Errc::unstable, "mu*C <= lambda on a channel leaving node " + std::to_string(n.id));
      d += (lambda / gamma) * (1.0 / (mu * cap - lambda));
    }
    n.metrics.delay = d;
  }
  return out;
}

double median_delay(const Topology& topo) {
  if (topo.nodes.empty()) fail(Errc::invalid_config, "empty topology");
  std::vector<double> delays;
  delays.reserve(topo.node_count());
  for (const Node& n : topo.nodes) delays.push_back(n.metrics.delay);
  std::sort(delays.begin(), delays.end());
  const std::size_t n = delays.size();
  if (n % 2 == 1) return delays[n / 2];
  return 0.5 * (delays[n / 2 - 1] + delays[n / 2]);
}

}  // namespace qgr
