#include <algorithm>
#include <set>

#include "doctest.h"

#include "qgr/ga.hpp"
#include "qgr/generator.hpp"
#include "qgr/queueing.hpp"

using namespace qgr;

namespace {

// hand-built working graph: node bandwidths by id, explicit edge list
struct Fixture {
  Topology topo;
  GradedSubgraph sub;
};

Fixture make_fixture(const std::vector<double>& bandwidths,
                     const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId source,
                     NodeId destination) {
  Fixture f;
  for (NodeId i = 0; i < bandwidths.size(); ++i) {
    Node n{i, 0, {}};
    n.metrics.bandwidth = bandwidths[i];
    f.topo.nodes.push_back(n);
  }
  for (auto [a, b] : edges) f.topo.edges.push_back(Edge{a, b, 50.0});
  std::sort(f.topo.edges.begin(), f.topo.edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });
  f.topo.source = source;
  f.topo.destination = destination;
  f.sub = full_subgraph(f.topo);
  return f;
}

// complete digraph on ids 0..n-1, uniform bandwidth
Fixture complete_fixture(NodeId n, NodeId source, NodeId destination) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      if (a != b) edges.emplace_back(a, b);
  return make_fixture(std::vector<double>(n, 100.0), edges, source, destination);
}

bool valid_chromosome(const Chromosome& c, const GradedSubgraph& g) {
  if (c.path.size() < 2) return false;
  if (c.path.front() != g.source || c.path.back() != g.destination) return false;
  std::set<NodeId> seen;
  for (NodeId id : c.path)
    if (!g.contains(id) || !seen.insert(id).second) return false;
  for (std::size_t i = 0; i + 1 < c.path.size(); ++i)
    if (!g.has_edge(c.path[i], c.path[i + 1])) return false;
  return true;
}

}  // namespace

TEST_CASE("single point crossover reproduces the worked example, duplicates included") {
  const Genes p1{1, 2, 3, 4, 5, 6, 7};
  const Genes p2{1, 3, 4, 6, 2, 5, 7};
  const auto [o1, o2] = single_point_crossover(p1, p2, 4);
  CHECK(o1 == Genes{1, 2, 3, 4, 2, 5, 7});
  CHECK(o2 == Genes{1, 3, 4, 6, 5, 6, 7});
}

TEST_CASE("single point crossover boundaries") {
  const Genes p1{1, 2, 3, 4, 5, 6, 7};
  const Genes p2{1, 3, 4, 6, 2, 5, 7};
  const auto [same1, same2] = single_point_crossover(p1, p1, 3);
  CHECK(same1 == p1);
  CHECK(same2 == p1);

  const auto [head, tail] = single_point_crossover(p1, p2, 1);
  CHECK(head == Genes{1, 3, 4, 6, 2, 5, 7});
  CHECK(tail == Genes{1, 2, 3, 4, 5, 6, 7});

  CHECK_THROWS_AS((void)single_point_crossover(p1, p2, 0), Error);
  CHECK_THROWS_AS((void)single_point_crossover(p1, p2, 7), Error);
}

TEST_CASE("single point crossover preserves the combined gene multiset") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Genes p1, p2;
    const std::size_t len1 = 3 + rng.below(8), len2 = 3 + rng.below(8);
    for (std::size_t i = 0; i < len1; ++i) p1.push_back(static_cast<NodeId>(rng.below(20)));
    for (std::size_t i = 0; i < len2; ++i) p2.push_back(static_cast<NodeId>(rng.below(20)));
    const std::size_t point = 1 + rng.below(std::min(len1, len2) - 1);
    auto [o1, o2] = single_point_crossover(p1, p2, point);
    Genes combined_parents = p1, combined_children = o1;
    combined_parents.insert(combined_parents.end(), p2.begin(), p2.end());
    combined_children.insert(combined_children.end(), o2.begin(), o2.end());
    std::sort(combined_parents.begin(), combined_parents.end());
    std::sort(combined_children.begin(), combined_children.end());
    CHECK(combined_parents == combined_children);
  }
}

TEST_CASE("pmx crossover matches standard semantics on the worked parents") {
  const Genes p1{1, 2, 3, 4, 5, 6, 7};
  const Genes p2{1, 3, 4, 6, 2, 5, 7};
  const auto [o1, o2] = pmx_crossover(p1, p2, {3, 5});
  CHECK(o1 == Genes{1, 5, 3, 6, 2, 4, 7});
  CHECK(o2 == Genes{1, 3, 6, 4, 5, 2, 7});
}

TEST_CASE("pmx crossover edge cases") {
  const Genes p1{1, 2, 3, 4, 5, 6, 7};
  const auto [same1, same2] = pmx_crossover(p1, p1, {3, 5});
  CHECK(same1 == p1);
  CHECK(same2 == p1);

  CHECK_THROWS_AS((void)pmx_crossover(p1, Genes{1, 2, 3}, {1, 2}), Error);
  CHECK_THROWS_AS((void)pmx_crossover(p1, Genes{1, 2, 3, 4, 5, 6, 8}, {3, 5}), Error);
  CHECK_THROWS_AS((void)pmx_crossover(p1, Genes{1, 3, 4, 6, 2, 5, 7}, {0, 5}), Error);
  CHECK_THROWS_AS((void)pmx_crossover(p1, Genes{1, 3, 4, 6, 2, 5, 7}, {5, 5}), Error);
  CHECK_THROWS_AS((void)pmx_crossover(p1, Genes{1, 3, 4, 6, 2, 5, 7}, {3, 8}), Error);
}

TEST_CASE("pmx offspring are permutations of the parent gene set") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = 5 + rng.below(8);
    Genes base;
    for (std::size_t i = 0; i < len; ++i) base.push_back(static_cast<NodeId>(i * 3 + 1));
    Genes p1 = base, p2 = base;
    rng.shuffle(p1);
    rng.shuffle(p2);
    const std::size_t a = 1 + rng.below(len - 1);
    const std::size_t b = a + 1 + rng.below(len - a);
    auto [o1, o2] = pmx_crossover(p1, p2, {a, b});
    for (Genes* o : {&o1, &o2}) {
      Genes sorted = *o;
      std::sort(sorted.begin(), sorted.end());
      Genes expect = base;
      std::sort(expect.begin(), expect.end());
      CHECK(sorted == expect);
    }
  }
}

TEST_CASE("enumerate_paths finds all five simple paths in K4") {
  const Fixture f = complete_fixture(4, 0, 3);
  const auto paths = enumerate_paths(f.sub, 100, 3);
  REQUIRE(paths.size() == 5);
  CHECK(paths[0].path == Genes{0, 3});
  CHECK(paths[1].path == Genes{0, 1, 3});
  CHECK(paths[2].path == Genes{0, 2, 3});
  CHECK(paths[3].path == Genes{0, 1, 2, 3});
  CHECK(paths[4].path == Genes{0, 2, 1, 3});
}

TEST_CASE("enumerate_paths returns both vertex-disjoint routes") {
  const Fixture f = make_fixture({100, 100, 100, 100}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, 0, 3);
  const auto paths = enumerate_paths(f.sub, 10, 3);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].path == Genes{0, 1, 3});
  CHECK(paths[1].path == Genes{0, 2, 3});
}

TEST_CASE("enumerate_paths truncates shortest-first and honours the hop bound") {
  const Fixture f = complete_fixture(5, 0, 4);
  const auto top3 = enumerate_paths(f.sub, 3, 4);
  REQUIRE(top3.size() == 3);
  CHECK(top3[0].path == Genes{0, 4});
  CHECK(top3[1].path == Genes{0, 1, 4});
  CHECK(top3[2].path == Genes{0, 2, 4});

  const auto short_only = enumerate_paths(f.sub, 100, 2);
  for (const Chromosome& c : short_only) CHECK(c.hops() <= 2);
  CHECK(short_only.size() == 4); // direct + three 2-hop routes
}

TEST_CASE("enumerate_paths reports unreachable destinations") {
  const Fixture f = make_fixture({100, 100, 100}, {{1, 0}, {2, 1}}, 0, 2);
  CHECK_THROWS_AS((void)enumerate_paths(f.sub, 10, 2), Error);
}

TEST_CASE("evaluate_fitness normalizes bottlenecks per the selection rule") {
  const Fixture f = make_fixture({100, 30, 50, 20, 100},
                                 {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, 0, 4);
  Population pop{{Chromosome{{0, 1, 4}}, Chromosome{{0, 2, 4}}, Chromosome{{0, 3, 4}}}, 0};
  const FitnessReport rep = evaluate_fitness(pop, f.topo);
  CHECK(rep.bottlenecks == std::vector<double>{30, 50, 20});
  CHECK(rep.selection_weights[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rep.selection_weights[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.selection_weights[2] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(rep.report_fitness[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate_fitness identity and symmetry cases") {
  const Fixture f = make_fixture({100, 40, 40, 100}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3);

  Population single{{Chromosome{{0, 1, 3}}}, 0};
  const FitnessReport one = evaluate_fitness(single, f.topo);
  CHECK(one.selection_weights == std::vector<double>{1.0});
  CHECK(one.report_fitness == std::vector<double>{1.0});

  Population equal{{Chromosome{{0, 1, 3}}, Chromosome{{0, 2, 3}}}, 0};
  const FitnessReport two = evaluate_fitness(equal, f.topo);
  for (double w : two.selection_weights) CHECK(w == doctest::Approx(0.5).epsilon(1e-12));
  for (double r : two.report_fitness) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate_fitness rejects degenerate bandwidth and empty populations") {
  Fixture f = make_fixture({100, 40, 100}, {{0, 1}, {1, 2}}, 0, 2);
  f.topo.nodes[1].metrics.bandwidth = 0.0;
  Population pop{{Chromosome{{0, 1, 2}}}, 0};
  CHECK_THROWS_AS((void)evaluate_fitness(pop, f.topo), Error);
  CHECK_THROWS_AS((void)evaluate_fitness(Population{}, f.topo), Error);
}

TEST_CASE("roulette_pick walks the cumulative sum") {
  const std::vector<double> weights{0.3, 0.5, 0.2};
  CHECK(roulette_pick(weights, 0.85) == 2);
  CHECK(roulette_pick(weights, 0.0) == 0);
  CHECK(roulette_pick(weights, 0.3) == 1);  // boundaries go to the next slice
  CHECK(roulette_pick(weights, 0.999999) == 2);
  CHECK(roulette_pick(std::vector<double>{1.0}, 0.73) == 0);
}

TEST_CASE("insertion_mutation inserts a feasible node") {
  const Fixture f = make_fixture({100, 80, 70, 100}, {{0, 1}, {1, 3}, {1, 2}, {2, 3}}, 0, 3);
  const Chromosome c{{0, 1, 3}};
  const Chromosome mutated = insertion_mutation(c, 2, 2, f.sub);
  CHECK(mutated.path == Genes{0, 1, 2, 3});
}

TEST_CASE("insertion_mutation error paths") {
  const Fixture f = make_fixture({100, 80, 70, 100}, {{0, 1}, {1, 3}, {1, 2}, {2, 3}}, 0, 3);
  const Chromosome c{{0, 1, 3}};
  CHECK_THROWS_AS((void)insertion_mutation(c, 1, 2, f.sub), Error);  // already on path
  CHECK_THROWS_AS((void)insertion_mutation(c, 2, 1, f.sub), Error);  // edge 0->2 missing
  CHECK_THROWS_AS((void)insertion_mutation(c, 2, 0, f.sub), Error);  // would displace source
  CHECK_THROWS_AS((void)insertion_mutation(c, 2, 3, f.sub), Error);  // past the destination
}

TEST_CASE("repair splices out the duplicate cycle from the worked offspring") {
  const Fixture f = complete_fixture(8, 1, 7);
  const auto repaired = repair(Genes{1, 2, 3, 4, 2, 5, 7}, f.sub);
  REQUIRE(repaired.has_value());
  CHECK(repaired->path == Genes{1, 2, 5, 7});
}

TEST_CASE("repair keeps valid paths unchanged and rejects broken ones") {
  const Fixture f = make_fixture({100, 80, 70, 100}, {{0, 1}, {1, 3}, {1, 2}, {2, 3}}, 0, 3);
  const auto ok = repair(Genes{0, 1, 2, 3}, f.sub);
  REQUIRE(ok.has_value());
  CHECK(ok->path == Genes{0, 1, 2, 3});

  CHECK_FALSE(repair(Genes{0, 2, 3}, f.sub).has_value());    // edge 0->2 missing
  CHECK_FALSE(repair(Genes{0, 1}, f.sub).has_value());       // wrong endpoint
  CHECK_FALSE(repair(Genes{0}, f.sub).has_value());          // too short
  CHECK_FALSE(repair(Genes{0, 9, 3}, f.sub).has_value());    // unknown node
}

TEST_CASE("repair is idempotent and never lengthens the sequence") {
  const Fixture f = complete_fixture(9, 0, 8);
  Rng rng(55);
  for (int trial = 0; trial < 300; ++trial) {
    Genes raw{0};
    const std::size_t mid = 1 + rng.below(6);
    for (std::size_t i = 0; i < mid; ++i) raw.push_back(1 + static_cast<NodeId>(rng.below(7)));
    raw.push_back(8);
    const auto once = repair(raw, f.sub);
    if (!once) continue;
    CHECK(once->path.size() <= raw.size());
    CHECK(valid_chromosome(*once, f.sub));
    const auto twice = repair(once->path, f.sub);
    REQUIRE(twice.has_value());
    CHECK(twice->path == once->path);
  }
}

TEST_CASE("beats orders by bottleneck, then hops, then path") {
  const Chromosome a{{0, 1, 3}}, b{{0, 2, 3}}, c{{0, 1, 2, 3}};
  CHECK(beats(90, c, 50, a));        // higher bottleneck wins
  CHECK(beats(50, a, 50, c));        // fewer hops next
  CHECK(beats(50, a, 50, b));        // lexicographic last
  CHECK_FALSE(beats(50, b, 50, a));
}

TEST_CASE("evolve keeps the best member through elitism") {
  // 2-hop bottleneck 50 vs 3-hop bottleneck 90
  const Fixture f = make_fixture({100, 50, 90, 95, 100},
                                 {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}}, 0, 4);
  GaConfig cfg;
  cfg.demand = 1000.0; // never met, run the full loop
  Population initial{enumerate_paths(f.sub, 20, 4), 0};
  Rng rng(3);
  const EvolveResult result = evolve(initial, cfg, f.topo, f.sub, rng);
  CHECK(result.best.path == Genes{0, 2, 3, 4});
  CHECK(result.history.size() == cfg.generations + 1);
  for (std::size_t i = 1; i < result.history.size(); ++i)
    CHECK(result.history[i] >= result.history[i - 1]);
  CHECK(result.history.back() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("evolve is deterministic for a fixed seed") {
  Topology topo = generate_topology(10, 2, 0.5, 12);
  topo = assign_attributes(topo, 13);
  const GradedSubgraph sub = full_subgraph(topo);
  GaConfig cfg;
  Population initial{enumerate_paths(sub, cfg.population_size, 9), 0};

  Rng r1(100), r2(100), r3(101);
  const EvolveResult a = evolve(initial, cfg, topo, sub, r1);
  const EvolveResult b = evolve(initial, cfg, topo, sub, r2);
  const EvolveResult c = evolve(initial, cfg, topo, sub, r3);
  CHECK(a.best == b.best);
  CHECK(a.history == b.history);
  CHECK(a.final_population.members == b.final_population.members);
  (void)c; // different stream may or may not differ; only equality is contractual
}

TEST_CASE("every member of every returned generation is a valid chromosome") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Topology topo = generate_topology(12, 2, 0.4, seed);
    topo = assign_attributes(topo, seed * 7);
    const GradedSubgraph sub = full_subgraph(topo);
    GaConfig cfg;
    cfg.demand = 1000.0;
    Population initial{enumerate_paths(sub, cfg.population_size, 11), 0};
    Rng rng(seed);
    const EvolveResult result = evolve(initial, cfg, topo, sub, rng);
    CHECK(result.final_population.members.size() == initial.members.size());
    for (const Chromosome& c : result.final_population.members) CHECK(valid_chromosome(c, sub));
    CHECK(valid_chromosome(result.best, sub));
  }
}

TEST_CASE("evolve stops immediately once demand is met everywhere") {
  const Fixture f = make_fixture({100, 50, 90, 95, 100},
                                 {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}}, 0, 4);
  GaConfig cfg;
  cfg.demand = 10.0; // both initial paths already satisfy it
  Population initial{enumerate_paths(f.sub, 20, 4), 0};
  Rng rng(9);
  const EvolveResult result = evolve(initial, cfg, f.topo, f.sub, rng);
  CHECK(result.history.size() == 1);
  CHECK(result.final_population.generation_index == 0);
}

TEST_CASE("evolve refuses an empty initial population") {
  const Fixture f = complete_fixture(4, 0, 3);
  Rng rng(1);
  CHECK_THROWS_AS((void)evolve(Population{}, GaConfig{}, f.topo, f.sub, rng), Error);
}

TEST_CASE("default GA configuration matches the documented experiment setup") {
  const GaConfig cfg;
  CHECK(cfg.crossover_prob == 0.95);
  CHECK(cfg.mutation_prob == 0.05);
  CHECK(cfg.generations == 10);
  CHECK(cfg.elite_threshold == 0.9);
  CHECK(cfg.crossover_point == 4);
  CHECK(cfg.pmx_points == std::pair<std::uint32_t, std::uint32_t>{3, 5});
}
