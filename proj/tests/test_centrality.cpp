#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "imea/centrality.hpp"

using namespace imea;

namespace {

Graph undirected(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return Graph::from_arcs(n, std::move(edges), false);
}

Graph star(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return undirected(leaves + 1, edges);
}

// Counts, for every node, the fraction of shortest s-t paths through it by
// listing every path explicitly.
std::vector<double> betweenness_by_enumeration(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> result(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::vector<NodeId>> paths;
      std::vector<NodeId> path{s};
      std::size_t best = n;
      // Depth-first over simple paths; keep only the shortest ones.
      std::function<void(NodeId)> walk = [&](NodeId u) {
        if (path.size() - 1 > best) return;
        if (u == t) {
          if (path.size() - 1 < best) {
            best = path.size() - 1;
            paths.clear();
          }
          paths.push_back(path);
          return;
        }
        for (NodeId v : g.out_neighbors(u)) {
          if (std::find(path.begin(), path.end(), v) != path.end()) continue;
          path.push_back(v);
          walk(v);
          path.pop_back();
        }
      };
      walk(s);
      if (paths.empty()) continue;
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) result[p[i]] += 1.0 / static_cast<double>(paths.size());
      }
    }
  }
  if (!g.directed()) {
    for (auto& v : result) v /= 2.0;
  }
  return result;
}

Graph random_graph(std::mt19937_64& rng, bool directed) {
  std::uniform_int_distribution<std::size_t> nd(3, 8);
  const std::size_t n = nd(rng);
  std::bernoulli_distribution edge(0.35);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && (directed || u < v) && edge(rng)) arcs.emplace_back(u, v);
    }
  }
  return Graph::from_arcs(n, arcs, directed);
}

const std::vector<CentralityMetric> kAllMetrics{CentralityMetric::betweenness, CentralityMetric::closeness,
                                                CentralityMetric::degree, CentralityMetric::eigenvector,
                                                CentralityMetric::katz};

}  // namespace

TEST_CASE("degree is out-degree") {
  Graph g = Graph::from_arcs(3, {{0, 1}, {1, 2}}, true);
  auto s = centrality(g, CentralityMetric::degree);
  CHECK(s.values == std::vector<double>{1, 1, 0});
}

TEST_CASE("betweenness on a star") {
  auto s = centrality(star(4), CentralityMetric::betweenness);
  CHECK(s.values[0] == doctest::Approx(6.0));
  for (NodeId i = 1; i <= 4; ++i) CHECK(s.values[i] == 0.0);
}

TEST_CASE("betweenness matches path enumeration on small graphs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    Graph g = random_graph(rng, t % 2 == 0);
    auto fast = centrality(g, CentralityMetric::betweenness).values;
    auto slow = betweenness_by_enumeration(g);
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
}

TEST_CASE("betweenness is independent of the thread count") {
  Graph g = generate_barabasi_albert(300, 2, 4);
  CentralityOptions one;
  CentralityOptions many;
  many.threads = 4;
  CHECK(centrality(g, CentralityMetric::betweenness, one).values ==
        centrality(g, CentralityMetric::betweenness, many).values);
}

TEST_CASE("five-cycle scores are uniform for every metric") {
  Graph g = undirected(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  for (auto m : kAllMetrics) {
    auto s = centrality(g, m).values;
    for (double v : s) CHECK(v == doctest::Approx(s[0]));
  }
  CHECK(centrality(g, CentralityMetric::closeness).values[0] == doctest::Approx(4.0 / 6.0));
  CHECK(centrality(g, CentralityMetric::eigenvector).values[0] == doctest::Approx(1.0));
}

TEST_CASE("closeness with unreachable nodes") {
  // 0 -> 1 -> 2, 3 isolated.
  Graph g = Graph::from_arcs(4, {{0, 1}, {1, 2}}, true);
  auto s = centrality(g, CentralityMetric::closeness).values;
  CHECK(s[0] == doctest::Approx((2.0 / 3.0) * (2.0 / 3.0)));
  CHECK(s[1] == doctest::Approx((1.0 / 3.0) * 1.0));
  CHECK(s[2] == 0.0);
  CHECK(s[3] == 0.0);
}

TEST_CASE("scores are finite, non-negative and sized to the graph") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_graph(rng, true);
    for (auto m : kAllMetrics) {
      CentralityScores s;
      try {
        s = centrality(g, m);
      } catch (const ConvergenceError&) {
        // Power iteration has no dominant eigenvector on acyclic digraphs.
        CHECK(m == CentralityMetric::eigenvector);
        continue;
      }
      CHECK(s.metric == m);
      REQUIRE(s.values.size() == g.node_count());
      for (double v : s.values) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
      }
    }
  }
}

TEST_CASE("eigenvector scores: unit max and isomorphism invariance") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_graph(rng, false);
    if (g.arc_count() == 0) continue;
    auto base = centrality(g, CentralityMetric::eigenvector).values;
    CHECK(*std::max_element(base.begin(), base.end()) == doctest::Approx(1.0));

    std::vector<NodeId> perm(g.node_count());
    for (NodeId i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (auto [u, v] : g.arcs()) arcs.emplace_back(perm[u], perm[v]);
    Graph h = Graph::from_arcs(g.node_count(), arcs, false);
    auto moved = centrality(h, CentralityMetric::eigenvector).values;
    for (NodeId i = 0; i < perm.size(); ++i) CHECK(moved[perm[i]] == doctest::Approx(base[i]).epsilon(1e-4));
  }
}

TEST_CASE("eigenvector prefers nodes pointed to by important nodes") {
  // 1, 2, 3 all point at 0; 0 points at 4, which points back at 1, 2, 3.
  Graph g = Graph::from_arcs(5, {{1, 0}, {2, 0}, {3, 0}, {0, 4}, {4, 1}, {4, 2}, {4, 3}}, true);
  auto s = centrality(g, CentralityMetric::eigenvector).values;
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[0] > s[4]);
  CHECK(s[4] > s[1]);
}

TEST_CASE("Katz solves x = alpha A^T x + 1") {
  Graph g = Graph::from_arcs(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 0}}, true);
  auto x = centrality(g, CentralityMetric::katz).values;
  const double alpha = 0.005;
  for (NodeId v = 0; v < 4; ++v) {
    double rhs = 1.0;
    for (NodeId u : g.in_neighbors(v)) rhs += alpha * x[u];
    CHECK(x[v] == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("non-convergence reports the iteration count") {
  Graph g = generate_barabasi_albert(200, 3, 2);
  CentralityOptions opt;
  opt.max_iterations = 2;
  opt.tolerance = 1e-15;
  try {
    centrality(g, CentralityMetric::eigenvector, opt);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 2);
  }
  CHECK_THROWS_AS(centrality(g, CentralityMetric::katz, opt), ConvergenceError);
}

TEST_CASE("wall-clock budget aborts") {
  Graph g = generate_barabasi_albert(3000, 3, 2);
  CentralityOptions opt;
  opt.budget = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(centrality(g, CentralityMetric::betweenness, opt), BudgetExceeded);
}

TEST_CASE("symmetrize treats arcs as edges") {
  Graph g = Graph::from_arcs(3, {{0, 1}, {1, 2}}, true);
  CentralityOptions opt;
  opt.symmetrize = true;
  CHECK(centrality(g, CentralityMetric::degree, opt).values == std::vector<double>{1, 2, 1});
}

TEST_CASE("top_k orders by score with ties to the lower index") {
  CentralityScores s{CentralityMetric::degree, {1, 3, 3, 0, 2}};
  CHECK(top_k(s, 3) == std::vector<NodeId>{1, 2, 4});
  CHECK(top_k(s, 2, {0, 3, 4}) == std::vector<NodeId>{4, 0});
  CHECK(top_k(centrality(star(4), CentralityMetric::degree), 1) == std::vector<NodeId>{0});
}

TEST_CASE("metric names round trip") {
  for (auto m : kAllMetrics) CHECK(parse_centrality(to_string(m)) == m);
  CHECK_THROWS_AS(parse_centrality("pagerank"), std::invalid_argument);
}
