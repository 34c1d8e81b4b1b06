#include <array>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "imea/embeddings.hpp"

using namespace imea;

namespace {

Graph line_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1);
  return Graph::from_arcs(n, arcs, true);
}

EmbeddingTable parse(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return load_embeddings(in, g);
}

}  // namespace

TEST_CASE("embeddings: basic load") {
  Graph g = line_graph(2);
  auto t = parse("2 2\n0 1.0 0.0\n1 0.0 1.0\n", g);
  CHECK(t.dimension() == 2);
  CHECK(t.embedded_count() == 2);
  CHECK(t.vector(1)[1] == 1.0);
}

TEST_CASE("embeddings: row length mismatch is a format error") {
  Graph g = line_graph(2);
  CHECK_THROWS_AS(parse("2 2\n0 1.0 0.0 3.0\n1 0.0 1.0\n", g), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0 1.0\n1 0.0 1.0\n", g), ParseError);
  CHECK_THROWS_AS(parse("3 2\n0 1.0 0.0\n1 0.0 1.0\n", g), ParseError);
}

TEST_CASE("embeddings: partial coverage and unknown labels") {
  Graph g = line_graph(10);
  std::string text = "10 1\n";
  for (int i = 0; i < 9; ++i) text += std::to_string(i) + " " + std::to_string(i) + ".5\n";
  text += "99 0.0\n";
  auto t = parse(text, g);
  CHECK(t.embedded_count() == 9);
  CHECK(t.missing_count() == 1);
  CHECK(t.skipped_rows() == 1);
  CHECK_FALSE(t.has(9));
  CHECK_THROWS_AS(t.vector(9), MissingEmbedding);
}

TEST_CASE("nearest embedding neighbours") {
  Graph g = line_graph(3);
  auto t = parse("3 2\n0 0 0\n1 1 0\n2 5 0\n", g);
  CHECK(nearest_embedding_neighbors(t, 0, 1) == std::vector<NodeId>{1});
  CHECK(nearest_embedding_neighbors(t, 0, 10) == std::vector<NodeId>{1, 2});
  CHECK(nearest_embedding_neighbors(t, 2, 5) == std::vector<NodeId>{1, 0});
}

TEST_CASE("nearest embedding neighbours: ties by index, missing node") {
  Graph g = line_graph(4);
  auto t = parse("3 1\n0 0\n1 1\n3 -1\n", g);
  CHECK(nearest_embedding_neighbors(t, 0, 2) == std::vector<NodeId>{1, 3});
  CHECK_THROWS_AS(nearest_embedding_neighbors(t, 2, 1), MissingEmbedding);
}

TEST_CASE("nearest embedding neighbours match an exhaustive distance sort") {
  Graph g = line_graph(10);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(-3, 3);
  EmbeddingTable t(10, 3);
  std::vector<std::array<double, 3>> pts(10);
  for (NodeId i = 0; i < 10; ++i) {
    for (auto& c : pts[i]) c = coord(rng);
    t.set(i, pts[i]);
  }
  for (NodeId q = 0; q < 10; ++q) {
    // Oracle: all pairwise distances, stable sort on (distance, index).
    std::vector<std::pair<double, NodeId>> all;
    for (NodeId j = 0; j < 10; ++j) {
      if (j == q) continue;
      double d = 0;
      for (int c = 0; c < 3; ++c) d += std::pow(pts[j][c] - pts[q][c], 2);
      all.emplace_back(std::sqrt(d), j);
    }
    std::stable_sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (std::size_t m : {1u, 4u, 9u}) {
      std::vector<NodeId> expect;
      for (std::size_t i = 0; i < m; ++i) expect.push_back(all[i].second);
      CHECK(nearest_embedding_neighbors(t, q, m) == expect);
    }
  }
}
