#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qgr/grading.hpp"
#include "qgr/rng.hpp"
#include "qgr/topology.hpp"

namespace qgr {

// Raw gene sequence; may be invalid (duplicates, broken adjacency) while
// passing between crossover, mutation and repair.
using Genes = std::vector<NodeId>;

// A loop-free source -> destination path over a working subgraph.
struct Chromosome {
  Genes path;

  std::size_t hops() const { return path.empty() ? 0 : path.size() - 1; }

  auto operator<=>(const Chromosome&) const = default;
};

struct Population {
  std::vector<Chromosome> members;
  std::uint32_t generation_index = 0;
};

// Per-member fitness views over one population:
//   selection_weights[j] = B_j / sum_i B_i   (roulette probabilities, sum 1)
//   report_fitness[j]    = B_j / max_k B_k   (best-relative score in (0,1])
//   bottlenecks[j]       = B_j, the minimum node bandwidth along path j
struct FitnessReport {
  std::vector<double> selection_weights;
  std::vector<double> report_fitness;
  std::vector<double> bottlenecks;
};

struct GaConfig {
  double crossover_prob = 0.95;
  double mutation_prob = 0.05;
  std::uint32_t generations = 10;
  std::uint32_t population_size = 20;
  double elite_threshold = 0.9;        // report_fitness carryover cutoff
  std::uint32_t crossover_point = 4;   // preferred single-point cut index
  std::pair<std::uint32_t, std::uint32_t> pmx_points{3, 5};
  double demand = 50.0;                // required bottleneck bandwidth
  std::uint32_t max_hops = 0;          // 0 = shortest route + 2 (resolved per run)
  std::uint64_t seed = 0;

  bool operator==(const GaConfig&) const = default;
};

// All simple source -> destination paths of at most max_hops hops, shortest
// first, lexicographic among equal lengths, truncated to max_paths. A fixed
// work budget additionally truncates the sweep on graphs whose cycle
// structure makes deep levels explode; the shortest paths always survive.
// Throws no_route when no path exists within the bound.
std::vector<Chromosome> enumerate_paths(const GradedSubgraph& subgraph, std::size_t max_paths,
                                        std::size_t max_hops);

// Minimum node bandwidth along the path.
double path_bottleneck(const Topology& metrics, const Chromosome& c);

FitnessReport evaluate_fitness(const Population& population, const Topology& metrics);

// Cumulative-sum inversion of a single uniform draw u in [0,1).
std::size_t roulette_pick(std::span<const double> weights, double u);
std::size_t roulette_select(const FitnessReport& report, Rng& rng);

// Head of one parent spliced to the tail of the other at a shared index.
// Output is raw: duplicate genes are allowed and handled by repair().
std::pair<Genes, Genes> single_point_crossover(std::span<const NodeId> p1,
                                               std::span<const NodeId> p2, std::size_t point);

// Partially mapped crossover over two permutations of the same gene set.
// points (a,b) exchange the index range [a,b); offspring remain permutations.
std::pair<Genes, Genes> pmx_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2,
                                      std::pair<std::size_t, std::size_t> points);

// Inserts node at an interior position (1 <= position <= len-1); throws
// duplicate_node / mutation_rejected when the result would break the
// chromosome invariants.
Chromosome insertion_mutation(const Chromosome& c, NodeId node, std::size_t position,
                              const GradedSubgraph& subgraph);

// Splices out the cycle between the first repeated gene's two occurrences,
// repeats until loop-free, then validates endpoints and adjacency.
// nullopt when the loop-free sequence is not a valid path.
std::optional<Chromosome> repair(Genes raw, const GradedSubgraph& subgraph);

// true when (bottleneck_a, a) beats (bottleneck_b, b): larger bottleneck,
// then fewer hops, then lexicographically smaller path.
bool beats(double bottleneck_a, const Chromosome& a, double bottleneck_b, const Chromosome& b);

struct EvolveResult {
  Chromosome best;
  std::vector<double> history; // per generation: best bottleneck / max subgraph bandwidth
  Population final_population;
};

// Generation loop: elite copy, report_fitness > elite_threshold carryover,
// then roulette parents with crossover/mutation/repair until the population
// is refilled. Stops after config.generations or as soon as every member's
// bottleneck meets config.demand.
EvolveResult evolve(Population initial, const GaConfig& config, const Topology& metrics,
                    const GradedSubgraph& subgraph, Rng& rng);

}  // namespace qgr
