#include "qgr/ga.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

namespace qgr {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Work cap for the deepening search below. Graphs whose simple-path count is
// tiny but whose cycle structure is rich would otherwise make the per-level
// sweeps wander an exponential prefix space.
constexpr std::size_t kEnumerationBudget = 4'000'000;

std::vector<std::size_t> bfs_hops(const std::vector<std::vector<NodeId>>& adj, NodeId start) {
  std::vector<std::size_t> dist(adj.size(), kUnreachable);
  std::deque<NodeId> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// shortest hop distance to dest for every subgraph node (reverse BFS)
std::vector<std::size_t> hops_to_destination(const GradedSubgraph& g) {
  std::vector<std::vector<NodeId>> rev(g.member.size());
  for (const Edge& e : g.edges) rev[e.to].push_back(e.from);
  return bfs_hops(rev, g.destination);
}

struct PathCollector {
  const GradedSubgraph& g;
  const std::vector<std::size_t>& dist; // hops to destination
  std::size_t limit = 0;
  std::size_t budget = kEnumerationBudget;
  Genes stack;
  std::vector<char> on_path;
  std::vector<Chromosome> out;

  // Depth-limited DFS emitting, in lexicographic order, every simple path of
  // exactly `target` hops. Neighbour exploration is pruned by the remaining
  // hop budget. Returns false once the path limit or work budget is hit.
  bool collect(std::size_t target) {
    const NodeId u = stack.back();
    const std::size_t depth = stack.size() - 1;
    if (u == g.destination) {
      if (depth == target) {
        out.push_back(Chromosome{stack});
        return out.size() < limit;
      }
      return true; // simple paths cannot pass through the destination
    }
    if (depth >= target) return true;
    for (NodeId v : g.adjacency[u]) {
      if (on_path[v]) continue;
      if (dist[v] == kUnreachable || depth + 1 + dist[v] > target) continue;
      if (budget == 0) return false;
      --budget;
      stack.push_back(v);
      on_path[v] = 1;
      const bool keep_going = collect(target);
      on_path[v] = 0;
      stack.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<Chromosome> enumerate_paths(const GradedSubgraph& g, std::size_t max_paths,
                                        std::size_t max_hops) {
  if (max_paths == 0) fail(Errc::invalid_config, "max_paths must be >= 1");
  if (!g.contains(g.source) || !g.contains(g.destination))
    fail(Errc::no_route, "source or destination missing from subgraph");

  const auto dist = hops_to_destination(g);
  if (dist[g.source] == kUnreachable || dist[g.source] > max_hops)
    fail(Errc::no_route, "destination unreachable within hop bound");

  // only nodes lying on some source->destination walk can appear on a simple
  // path, which bounds the useful search depth
  const auto from_source = bfs_hops(g.adjacency, g.source);
  std::size_t usable = 0;
  for (NodeId id : g.nodes)
    if (from_source[id] != kUnreachable && dist[id] != kUnreachable) ++usable;
  const std::size_t depth_cap = std::min(max_hops, usable > 0 ? usable - 1 : 0);

  PathCollector collector{g, dist, max_paths, kEnumerationBudget, {g.source},
                          std::vector<char>(g.member.size(), 0), {}};
  collector.on_path[g.source] = 1;
  for (std::size_t len = dist[g.source]; len <= depth_cap && collector.out.size() < max_paths;
       ++len) {
    if (!collector.collect(len)) break;
  }
  if (collector.out.empty()) fail(Errc::no_route, "no simple path within hop bound");
  return collector.out;
}

double path_bottleneck(const Topology& metrics, const Chromosome& c) {
  if (c.path.empty()) fail(Errc::invalid_config, "empty chromosome");
  double b = std::numeric_limits<double>::infinity();
  for (NodeId id : c.path) b = std::min(b, metrics.node(id).metrics.bandwidth);
  return b;
}

FitnessReport evaluate_fitness(const Population& population, const Topology& metrics) {
  if (population.members.empty()) fail(Errc::invalid_config, "empty population");
  FitnessReport report;
  report.bottlenecks.reserve(population.members.size());
  double sum = 0.0;
  double best = 0.0;
  for (const Chromosome& c : population.members) {
    const double b = path_bottleneck(metrics, c);
    if (!(b > 0.0)) fail(Errc::degenerate_bandwidth, "non-positive path bottleneck");
    report.bottlenecks.push_back(b);
    sum += b;
    best = std::max(best, b);
  }
  report.selection_weights.reserve(report.bottlenecks.size());
  report.report_fitness.reserve(report.bottlenecks.size());
  for (double b : report.bottlenecks) {
    report.selection_weights.push_back(b / sum);
    report.report_fitness.push_back(b / best);
  }
  return report;
}

std::size_t roulette_pick(std::span<const double> weights, double u) {
  if (weights.empty()) fail(Errc::invalid_config, "empty weight vector");
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return weights.size() - 1; // floating-point slack at u ~ 1
}

std::size_t roulette_select(const FitnessReport& report, Rng& rng) {
  return roulette_pick(report.selection_weights, rng.uniform01());
}

std::pair<Genes, Genes> single_point_crossover(std::span<const NodeId> p1,
                                               std::span<const NodeId> p2, std::size_t point) {
  if (point < 1 || point >= std::min(p1.size(), p2.size()))
    fail(Errc::bad_cut_point, "cut point " + std::to_string(point));
  Genes o1(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(point));
  o1.insert(o1.end(), p2.begin() + static_cast<std::ptrdiff_t>(point), p2.end());
  Genes o2(p2.begin(), p2.begin() + static_cast<std::ptrdiff_t>(point));
  o2.insert(o2.end(), p1.begin() + static_cast<std::ptrdiff_t>(point), p1.end());
  return {std::move(o1), std::move(o2)};
}

namespace {

bool same_gene_set(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.size() != b.size()) return false;
  Genes sa(a.begin(), a.end());
  Genes sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  return std::adjacent_find(sa.begin(), sa.end()) == sa.end(); // genes distinct
}

Genes pmx_child(std::span<const NodeId> fill, std::span<const NodeId> seg, std::size_t a,
                std::size_t b) {
  Genes child(fill.begin(), fill.end());
  std::unordered_map<NodeId, NodeId> mapping; // segment value -> fill value at same slot
  for (std::size_t i = a; i < b; ++i) {
    child[i] = seg[i];
    mapping[seg[i]] = fill[i];
  }
  for (std::size_t i = 0; i < child.size(); ++i) {
    if (i >= a && i < b) continue;
    NodeId v = fill[i];
    while (mapping.count(v)) v = mapping[v];
    child[i] = v;
  }
  return child;
}

}  // namespace

std::pair<Genes, Genes> pmx_crossover(std::span<const NodeId> p1, std::span<const NodeId> p2,
                                      std::pair<std::size_t, std::size_t> points) {
  if (!same_gene_set(p1, p2)) fail(Errc::not_permutation, "parents are not permutations of one gene set");
  const auto [a, b] = points;
  if (a < 1 || a >= b || b > p1.size())
    fail(Errc::bad_cut_point, "pmx points (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return {pmx_child(p1, p2, a, b), pmx_child(p2, p1, a, b)};
}

namespace {

std::optional<Chromosome> try_insertion(const Chromosome& c, NodeId node, std::size_t position,
                                        const GradedSubgraph& g) {
  if (!g.contains(node)) return std::nullopt;
  if (position < 1 || position > c.path.size() - 1) return std::nullopt;
  if (std::find(c.path.begin(), c.path.end(), node) != c.path.end()) return std::nullopt;
  if (!g.has_edge(c.path[position - 1], node) || !g.has_edge(node, c.path[position]))
    return std::nullopt;
  Chromosome out = c;
  out.path.insert(out.path.begin() + static_cast<std::ptrdiff_t>(position), node);
  return out;
}

}  // namespace

Chromosome insertion_mutation(const Chromosome& c, NodeId node, std::size_t position,
                              const GradedSubgraph& g) {
  if (c.path.size() < 2) fail(Errc::invalid_config, "chromosome too short");
  if (position < 1 || position > c.path.size() - 1)
    fail(Errc::invalid_config, "insertion position " + std::to_string(position));
  if (std::find(c.path.begin(), c.path.end(), node) != c.path.end())
    fail(Errc::duplicate_node, "node " + std::to_string(node) + " already on path");
  auto out = try_insertion(c, node, position, g);
  if (!out) fail(Errc::mutation_rejected, "insertion breaks adjacency");
  return *out;
}

std::optional<Chromosome> repair(Genes raw, const GradedSubgraph& g) {
  // splice out duplicate cycles: keep the first occurrence, drop through the
  // second
  for (;;) {
    std::size_t first = 0, second = 0;
    bool found = false;
    for (std::size_t j = 1; j < raw.size() && !found; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (raw[i] == raw[j]) {
          first = i;
          second = j;
          found = true;
          break;
        }
      }
    }
    if (!found) break;
    Genes next(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(first + 1));
    next.insert(next.end(), raw.begin() + static_cast<std::ptrdiff_t>(second + 1), raw.end());
    raw = std::move(next);
  }

  if (raw.size() < 2) return std::nullopt;
  if (raw.front() != g.source || raw.back() != g.destination) return std::nullopt;
  for (NodeId id : raw)
    if (!g.contains(id)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    if (!g.has_edge(raw[i], raw[i + 1])) return std::nullopt;
  return Chromosome{std::move(raw)};
}

bool beats(double bottleneck_a, const Chromosome& a, double bottleneck_b, const Chromosome& b) {
  if (bottleneck_a != bottleneck_b) return bottleneck_a > bottleneck_b;
  if (a.hops() != b.hops()) return a.hops() < b.hops();
  return a.path < b.path;
}

namespace {

std::size_t best_index(const Population& pop, const FitnessReport& report) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < pop.members.size(); ++j) {
    if (beats(report.bottlenecks[j], pop.members[j], report.bottlenecks[best], pop.members[best]))
      best = j;
  }
  return best;
}

// Cut candidates for path crossover: interior indices where both parents
// carry the same node, so splicing keeps both junctions on real edges.
std::vector<std::size_t> shared_cut_points(const Genes& p1, const Genes& p2) {
  std::vector<std::size_t> points;
  const std::size_t limit = std::min(p1.size(), p2.size());
  for (std::size_t i = 1; i < limit; ++i)
    if (p1[i] == p2[i]) points.push_back(i);
  return points;
}

Genes mutate_raw(Genes raw, const GradedSubgraph& g, Rng& rng) {
  std::vector<NodeId> candidates;
  for (NodeId id : g.nodes)
    if (std::find(raw.begin(), raw.end(), id) == raw.end()) candidates.push_back(id);
  if (candidates.empty() || raw.size() < 2) return raw;
  const NodeId node = candidates[rng.below(candidates.size())];
  const std::size_t position = 1 + rng.below(raw.size() - 1);
  // rejected mutations are no-ops
  if (!g.has_edge(raw[position - 1], node) || !g.has_edge(node, raw[position])) return raw;
  raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(position), node);
  return raw;
}

std::pair<Genes, Genes> mate(const Chromosome& p1, const Chromosome& p2, const GaConfig& cfg,
                             Rng& rng) {
  if (rng.chance(cfg.crossover_prob)) {
    const auto cuts = shared_cut_points(p1.path, p2.path);
    if (!cuts.empty()) {
      std::size_t point = cuts.front();
      for (std::size_t c : cuts) {
        const auto d = [&](std::size_t x) {
          return x > cfg.crossover_point ? x - cfg.crossover_point : cfg.crossover_point - x;
        };
        if (d(c) < d(point)) point = c;
      }
      return single_point_crossover(p1.path, p2.path, point);
    }
    if (p1.path.size() == p2.path.size() && p1.path.size() >= 2 &&
        same_gene_set(p1.path, p2.path)) {
      std::size_t a = cfg.pmx_points.first;
      std::size_t b = cfg.pmx_points.second;
      a = std::clamp<std::size_t>(a, 1, p1.path.size() - 1);
      b = std::clamp<std::size_t>(b, a + 1, p1.path.size());
      return pmx_crossover(p1.path, p2.path, {a, b});
    }
  }
  return {p1.path, p2.path}; // clone
}

}  // namespace

EvolveResult evolve(Population initial, const GaConfig& config, const Topology& metrics,
                    const GradedSubgraph& subgraph, Rng& rng) {
  if (initial.members.empty()) fail(Errc::no_route, "empty initial population");
  if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0 || config.mutation_prob < 0.0 ||
      config.mutation_prob > 1.0)
    fail(Errc::invalid_config, "operator probabilities must be in [0,1]");
  if (config.generations < 1) fail(Errc::invalid_config, "generations must be >= 1");

  double normalizer = 0.0; // best bandwidth available anywhere in the subgraph
  for (NodeId id : subgraph.nodes)
    normalizer = std::max(normalizer, metrics.node(id).metrics.bandwidth);
  if (!(normalizer > 0.0)) fail(Errc::degenerate_bandwidth, "subgraph has no positive bandwidth");

  const std::size_t n = initial.members.size();
  Population pop = std::move(initial);
  FitnessReport report = evaluate_fitness(pop, metrics);
  std::vector<double> history{report.bottlenecks[best_index(pop, report)] / normalizer};

  for (std::uint32_t gen = 1; gen <= config.generations; ++gen) {
    const bool demand_met =
        *std::min_element(report.bottlenecks.begin(), report.bottlenecks.end()) >= config.demand;
    if (demand_met) break;

    Population next;
    next.generation_index = gen;
    next.members.reserve(n);

    const std::size_t elite = best_index(pop, report);
    next.members.push_back(pop.members[elite]);
    for (std::size_t j = 0; j < n && next.members.size() < n; ++j)
      if (report.report_fitness[j] > config.elite_threshold) next.members.push_back(pop.members[j]);

    while (next.members.size() < n) {
      const std::size_t i1 = roulette_select(report, rng);
      const std::size_t i2 = roulette_select(report, rng);
      const Chromosome& p1 = pop.members[i1];
      const Chromosome& p2 = pop.members[i2];
      const Chromosome& fitter =
          beats(report.bottlenecks[i1], p1, report.bottlenecks[i2], p2) ? p1 : p2;

      auto [r1, r2] = mate(p1, p2, config, rng);
      for (Genes* raw : {&r1, &r2}) {
        if (next.members.size() >= n) break;
        if (rng.chance(config.mutation_prob)) *raw = mutate_raw(std::move(*raw), subgraph, rng);
        auto repaired = repair(std::move(*raw), subgraph);
        next.members.push_back(repaired ? std::move(*repaired) : fitter);
      }
    }

    pop = std::move(next);
    report = evaluate_fitness(pop, metrics);
    history.push_back(report.bottlenecks[best_index(pop, report)] / normalizer);
  }

  EvolveResult result;
  result.best = pop.members[best_index(pop, report)];
  result.history = std::move(history);
  result.final_population = std::move(pop);
  return result;
}

}  // namespace qgr
