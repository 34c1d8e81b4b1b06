#include "imea/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "imea/parallel.hpp"

namespace imea {

CentralityMetric parse_centrality(const std::string& name) {
  if (name == "betweenness") return CentralityMetric::betweenness;
  if (name == "closeness") return CentralityMetric::closeness;
  if (name == "degree") return CentralityMetric::degree;
  if (name == "eigenvector") return CentralityMetric::eigenvector;
  if (name == "katz") return CentralityMetric::katz;
  throw std::invalid_argument("unknown centrality metric '" + name + "'");
}

std::string to_string(CentralityMetric metric) {
  switch (metric) {
    case CentralityMetric::betweenness: return "betweenness";
    case CentralityMetric::closeness: return "closeness";
    case CentralityMetric::degree: return "degree";
    case CentralityMetric::eigenvector: return "eigenvector";
    case CentralityMetric::katz: return "katz";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(const std::optional<std::chrono::milliseconds>& budget)
      : active_(budget.has_value()), end_(Clock::now() + budget.value_or(std::chrono::milliseconds(0))) {}
  void check(const char* what) const {
    if (active_ && Clock::now() > end_) throw BudgetExceeded(std::string(what) + " exceeded its time budget");
  }

 private:
  bool active_;
  Clock::time_point end_;
};

std::vector<double> betweenness(const Graph& g, const Deadline& deadline, unsigned threads) {
  const std::size_t n = g.node_count();
  // Sources are split into a fixed number of blocks, whatever the thread
  // count, so the floating-point reduction order never changes.
  constexpr std::size_t kBlocks = 16;
  const std::size_t blocks = std::min<std::size_t>(kBlocks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));
  const std::size_t chunk = (n + blocks - 1) / blocks;

  parallel_for(blocks, threads, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      auto& acc = partial[w];
      std::vector<std::vector<NodeId>> preds(n);
      std::vector<double> sigma(n), delta(n);
      std::vector<long> dist(n);
      std::vector<NodeId> order;
      std::queue<NodeId> queue;
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t src = begin; src < end; ++src) {
        if ((src & 63U) == 0) deadline.check("betweenness");
        for (auto& p : preds) p.clear();
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        const auto s = static_cast<NodeId>(src);
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
          NodeId v = queue.front();
          queue.pop();
          order.push_back(v);
          for (NodeId x : g.out_neighbors(v)) {
            if (dist[x] < 0) {
              dist[x] = dist[v] + 1;
              queue.push(x);
            }
            if (dist[x] == dist[v] + 1) {
              sigma[x] += sigma[v];
              preds[x].push_back(v);
            }
          }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
          NodeId x = *it;
          for (NodeId v : preds[x]) delta[v] += sigma[v] / sigma[x] * (1.0 + delta[x]);
          if (x != s) acc[x] += delta[x];
        }
      }
    }
  });

  std::vector<double> out(n, 0.0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < n; ++i) out[i] += p[i];
  }
  if (!g.directed()) {
    for (double& v : out) v /= 2.0;
  }
  return out;
}

std::vector<double> closeness(const Graph& g, const Deadline& deadline, unsigned threads) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<long> dist(n, -1);
    std::vector<NodeId> touched;
    std::queue<NodeId> queue;
    for (std::size_t src = begin; src < end; ++src) {
      if ((src & 63U) == 0) deadline.check("closeness");
      touched.clear();
      const auto s = static_cast<NodeId>(src);
      dist[s] = 0;
      touched.push_back(s);
      queue.push(s);
      double total = 0.0;
      while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop();
        for (NodeId x : g.out_neighbors(v)) {
          if (dist[x] < 0) {
            dist[x] = dist[v] + 1;
            total += static_cast<double>(dist[x]);
            touched.push_back(x);
            queue.push(x);
          }
        }
      }
      const double reached = static_cast<double>(touched.size() - 1);
      if (reached > 0 && n > 1) {
        out[src] = (reached / static_cast<double>(n - 1)) * (reached / total);
      }
      for (NodeId t : touched) dist[t] = -1;
    }
  });
  return out;
}

std::vector<double> eigenvector(const Graph& g, const Deadline& deadline, double tol, std::size_t cap) {
  const std::size_t n = g.node_count();
  std::vector<double> x(n, 1.0), next(n);
  for (std::size_t it = 1; it <= cap; ++it) {
    deadline.check("eigenvector");
    for (NodeId v = 0; v < n; ++v) {
      double s = x[v];
      for (NodeId u : g.in_neighbors(v)) s += x[u];
      next[v] = s;
    }
    const double top = *std::max_element(next.begin(), next.end());
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= top;
      change = std::max(change, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (change < tol) return x;
  }
  throw ConvergenceError("eigenvector centrality", cap);
}

std::vector<double> katz(const Graph& g, const Deadline& deadline, double tol, std::size_t cap) {
  const std::size_t n = g.node_count();
  // The spectral radius is bounded by both the max row and max column sum.
  std::size_t max_in = 0, max_out = 0;
  for (NodeId v = 0; v < n; ++v) {
    max_in = std::max(max_in, g.in_degree(v));
    max_out = std::max(max_out, g.out_degree(v));
  }
  const double radius = static_cast<double>(std::min(max_in, max_out));
  const double alpha = radius > 0 ? std::min(0.005, 0.85 / radius) : 0.005;
  std::vector<double> x(n, 0.0), next(n);
  for (std::size_t it = 1; it <= cap; ++it) {
    deadline.check("katz");
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double s = 0.0;
      for (NodeId u : g.in_neighbors(v)) s += x[u];
      next[v] = alpha * s + 1.0;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < tol) return x;
  }
  throw ConvergenceError("katz centrality", cap);
}

Graph symmetrized(const Graph& g) {
  std::vector<Label> labels(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) labels[u] = g.label(u);
  return Graph::from_arcs(g.node_count(), g.arcs(), /*directed=*/false, std::move(labels));
}

}  // namespace

CentralityScores centrality(const Graph& input, CentralityMetric metric, const CentralityOptions& options) {
  if (input.node_count() == 0) throw std::invalid_argument("centrality of an empty graph");
  Graph sym;
  if (options.symmetrize && input.directed()) sym = symmetrized(input);
  const Graph& g = (options.symmetrize && input.directed()) ? sym : input;
  const Deadline deadline(options.budget);

  CentralityScores scores;
  scores.metric = metric;
  switch (metric) {
    case CentralityMetric::degree:
      scores.values.resize(g.node_count());
      for (NodeId u = 0; u < g.node_count(); ++u) scores.values[u] = static_cast<double>(g.out_degree(u));
      break;
    case CentralityMetric::betweenness:
      scores.values = betweenness(g, deadline, options.threads);
      break;
    case CentralityMetric::closeness:
      scores.values = closeness(g, deadline, options.threads);
      break;
    case CentralityMetric::eigenvector:
      scores.values = eigenvector(g, deadline, options.tolerance, options.max_iterations);
      break;
    case CentralityMetric::katz:
      scores.values = katz(g, deadline, options.tolerance, options.max_iterations);
      break;
  }
  return scores;
}

std::vector<NodeId> top_k(const CentralityScores& scores, std::size_t k, const std::vector<NodeId>& candidates) {
  std::vector<NodeId> pool = candidates;
  if (pool.empty()) {
    pool.resize(scores.values.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<NodeId>(i);
  }
  if (k > pool.size()) throw std::invalid_argument("k exceeds the number of candidate nodes");
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(), [&](NodeId a, NodeId b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  });
  pool.resize(k);
  return pool;
}

}  // namespace imea
