#pragma once

#include <cstddef>
#include <vector>

#include "qgr/topology.hpp"

namespace qgr {

struct QueueParams {
  double rho = 0.0;    // traffic intensity, in [0,1)
  double lambda = 1.0; // mean arrival rate, messages/second, > 0
};

// Steady-state M/M/1 statistics.
//   mean_jobs = rho / (1 - rho)
//   mean_time = mean_jobs / lambda   (time in system, by Little's law)
struct Mm1Stats {
  double mean_jobs = 0.0;
  double mean_time = 0.0;
};

Mm1Stats mm1_mean(const QueueParams& params);

// A set of channels with per-channel flow lambda_i and capacity C_i, a
// service-rate constant mu and total external traffic gamma.
struct FlowModel {
  std::vector<double> channel_flows;      // lambda_i >= 0
  std::vector<double> channel_capacities; // C_i > 0
  double mu = 1.0;
  double gamma = 1.0;

  std::size_t channel_count() const { return channel_flows.size(); }
};

// Aggregate delay T = sum_i (lambda_i / gamma) * 1 / (mu * C_i - lambda_i).
// Each channel term is the M/M/1 time in system at intensity
// rho_i = lambda_i / (mu * C_i), weighted by the channel's traffic share.
// Requires mu * C_i > lambda_i on every channel.
double network_delay(const FlowModel& model);

// True iff traffic_load strictly exceeds threshold_fraction * bandwidth.
bool congestion_exists(const NodeMetrics& metrics, double threshold_fraction);

// Fills each node's delay metric with the node's share of the network delay
// sum: its traffic split uniformly over its out-edges, each edge contributing
// (lambda_e / gamma) / (mu * capacity_e - lambda_e), with gamma the total
// traffic entering the network. Nodes without out-edges get delay 0; a
// topology with no traffic at all gets all-zero delays.
Topology annotate_delays(const Topology& topo, double mu);

// Median of the per-node delay metric (midpoint average for even counts);
// the default "delay exists" cutoff.
double median_delay(const Topology& topo);

}  // namespace qgr
