#include "imea/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace imea {

namespace {

struct WeightedGraph {
  // adjacency[i] holds (j, w); a self-loop carries the weight of every
  // internal arc of the collapsed community.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> strength;
  double total = 0.0;  // sum of strengths (= 2m)
};

WeightedGraph symmetric_weighted(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      nbrs[u].push_back(v);
      nbrs[v].push_back(u);
    }
  }
  WeightedGraph w;
  w.adjacency.resize(n);
  w.strength.assign(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    auto& list = nbrs[u];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (auto v : list) w.adjacency[u].emplace_back(v, 1.0);
    w.strength[u] = static_cast<double>(list.size());
    w.total += w.strength[u];
  }
  return w;
}

// One level of local moves. Returns true if any node changed community.
bool local_moves(const WeightedGraph& g, std::vector<std::uint32_t>& community, std::mt19937_64& rng) {
  const std::size_t n = g.adjacency.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[community[i]] += g.strength[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t old_c = community[i];
      const double ki = g.strength[i];
      touched.clear();
      for (auto [j, w] : g.adjacency[i]) {
        if (j == i) continue;
        const std::uint32_t c = community[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      tot[old_c] -= ki;
      std::uint32_t best = old_c;
      double best_gain = link[old_c] - tot[old_c] * ki / g.total;
      // Visit candidate communities in ascending id for a deterministic
      // tie-break.
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        const double gain = link[c] - tot[c] * ki / g.total;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += ki;
      community[i] = best;
      for (std::uint32_t c : touched) link[c] = 0.0;
      link[old_c] = 0.0;
      if (best != old_c) {
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers community ids densely; returns the community count.
std::size_t renumber(std::vector<std::uint32_t>& community) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (auto& c : community) {
    auto [it, inserted] = ids.emplace(c, static_cast<std::uint32_t>(ids.size()));
    c = it->second;
  }
  return ids.size();
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community, std::size_t count) {
  WeightedGraph out;
  out.adjacency.resize(count);
  out.strength.assign(count, 0.0);
  out.total = g.total;
  std::vector<std::unordered_map<std::uint32_t, double>> weights(count);
  for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
    for (auto [j, w] : g.adjacency[i]) weights[community[i]][community[j]] += w;
  }
  for (std::size_t c = 0; c < count; ++c) {
    for (auto [d, w] : weights[c]) out.adjacency[c].emplace_back(d, w);
    std::sort(out.adjacency[c].begin(), out.adjacency[c].end());
    for (auto [d, w] : out.adjacency[c]) out.strength[c] += w;
  }
  return out;
}

}  // namespace

CommunityPartition detect_communities(const Graph& graph, std::uint64_t seed) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw std::invalid_argument("community detection on an empty graph");

  std::mt19937_64 rng(seed);
  WeightedGraph level = symmetric_weighted(graph);
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0U);

  if (level.total > 0.0) {
    while (true) {
      std::vector<std::uint32_t> community(level.adjacency.size());
      std::iota(community.begin(), community.end(), 0U);
      if (!local_moves(level, community, rng)) break;
      const std::size_t count = renumber(community);
      for (auto& m : membership) m = community[m];
      if (count == level.adjacency.size()) break;
      level = aggregate(level, community, count);
    }
  }

  // Canonical ids: ordered by the lowest node index in each community.
  CommunityPartition partition;
  partition.assignment = membership;
  const std::size_t count = renumber(partition.assignment);
  partition.sizes.assign(count, 0);
  for (auto c : partition.assignment) ++partition.sizes[c];
  return partition;
}

double modularity(const Graph& graph, const std::vector<std::uint32_t>& assignment) {
  const WeightedGraph g = symmetric_weighted(graph);
  if (assignment.size() != g.adjacency.size()) throw std::invalid_argument("assignment size mismatch");
  if (g.total == 0.0) return 0.0;
  const std::size_t count = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  std::vector<double> internal(count, 0.0), tot(count, 0.0);
  for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
    tot[assignment[i]] += g.strength[i];
    for (auto [j, w] : g.adjacency[i]) {
      if (assignment[i] == assignment[j]) internal[assignment[i]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    q += internal[c] / g.total - (tot[c] / g.total) * (tot[c] / g.total);
  }
  return q;
}

}  // namespace imea
