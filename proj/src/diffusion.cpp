#include "imea/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "imea/parallel.hpp"
#include "imea/rng.hpp"

namespace imea {

DiffusionModel DiffusionModel::ic(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("IC probability must lie in [0, 1]");
  return {ModelKind::independent_cascade, p};
}

std::string DiffusionModel::name() const {
  return kind == ModelKind::independent_cascade ? "IC" : "WC";
}

DiffusionModel parse_model(const std::string& name, double p) {
  if (name == "ic" || name == "IC") return DiffusionModel::ic(p);
  if (name == "wc" || name == "WC") return DiffusionModel::wc();
  throw std::invalid_argument("unknown diffusion model '" + name + "' (expected ic or wc)");
}

namespace {

double arc_probability(const DiffusionModel& model, const Graph& graph, NodeId v) {
  if (model.kind == ModelKind::independent_cascade) return model.p;
  return 1.0 / static_cast<double>(graph.in_degree(v));
}

struct Workspace {
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;

  explicit Workspace(std::size_t n) : stamp(n, 0) {}

  void advance() {
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }
};

}  // namespace

void validate_seeds(const Graph& graph, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  std::vector<NodeId> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= graph.node_count()) throw std::invalid_argument("seed index out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("seed set contains duplicates");
  }
}

double activation_probability(const DiffusionModel& model, const Graph& graph, NodeId u, NodeId v) {
  if (u >= graph.node_count() || v >= graph.node_count() || !graph.has_arc(u, v)) {
    throw ContractViolation("activation probability queried on a non-arc");
  }
  return arc_probability(model, graph, v);
}

CascadeSimulator::CascadeSimulator(const Graph& graph, const DiffusionModel& model)
    : graph_(&graph), model_(model), incoming_(graph.node_count(), 0.0) {
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (graph.in_degree(v) > 0) incoming_[v] = arc_probability(model, graph, v);
  }
}

std::vector<std::uint32_t> CascadeSimulator::sample(std::span<const NodeId> seeds, const SimulationOptions& options,
                                                    std::size_t* max_depth) const {
  validate_seeds(*graph_, seeds);
  if (options.simulations < 1) throw std::invalid_argument("at least one simulation is required");
  if (options.max_hop < 1) throw std::invalid_argument("max_hop must be at least 1");

  const Graph& g = *graph_;
  std::vector<std::uint32_t> counts(options.simulations);
  std::vector<std::size_t> depths(options.simulations);

  parallel_for(options.simulations, options.threads, [&](std::size_t begin, std::size_t end) {
    Workspace ws(g.node_count());
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng(derive_seed(options.master_seed, options.evaluation_id, options.first_simulation + i));
      ws.advance();
      ws.frontier.assign(seeds.begin(), seeds.end());
      for (NodeId s : seeds) ws.stamp[s] = ws.epoch;
      std::size_t active = seeds.size();
      std::size_t hops = 0;
      std::size_t depth = 0;
      while (!ws.frontier.empty() && hops < options.max_hop) {
        ws.next.clear();
        for (NodeId n : ws.frontier) {
          for (NodeId m : g.out_neighbors(n)) {
            if (ws.stamp[m] == ws.epoch) continue;
            if (uniform01(rng) < incoming_[m]) {
              ws.stamp[m] = ws.epoch;
              ws.next.push_back(m);
            }
          }
        }
        ++hops;
        if (!ws.next.empty()) depth = hops;
        active += ws.next.size();
        std::swap(ws.frontier, ws.next);
      }
      counts[i] = static_cast<std::uint32_t>(active);
      depths[i] = depth;
    }
  });

  if (max_depth != nullptr) *max_depth = *std::max_element(depths.begin(), depths.end());
  return counts;
}

SpreadEstimate CascadeSimulator::estimate(std::span<const NodeId> seeds, const SimulationOptions& options) const {
  SpreadEstimate est;
  const auto counts = sample(seeds, options, &est.max_depth);
  std::vector<double> values(counts.begin(), counts.end());
  const auto stats = mean_std(values);
  est.mean = stats.mean;
  est.std = stats.std;
  est.n_simulations = counts.size();
  return est;
}

SpreadEstimate estimate_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds,
                               const SimulationOptions& options) {
  return CascadeSimulator(graph, model).estimate(seeds, options);
}

double exact_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds) {
  validate_seeds(graph, seeds);
  const auto arcs = graph.arcs();
  if (arcs.size() > kExactSpreadMaxArcs) {
    throw std::invalid_argument("exact spread refuses graphs with more than " +
                                std::to_string(kExactSpreadMaxArcs) + " arcs");
  }
  const std::size_t m = arcs.size();
  const std::size_t n = graph.node_count();
  std::vector<double> prob(m);
  for (std::size_t e = 0; e < m; ++e) prob[e] = arc_probability(model, graph, arcs[e].second);

  // Arc e of the CSR arc list belongs to the source's contiguous block.
  std::vector<std::size_t> first_arc(n + 1, 0);
  for (const auto& a : arcs) ++first_arc[a.first + 1];
  for (std::size_t i = 0; i < n; ++i) first_arc[i + 1] += first_arc[i];

  double total = 0.0;
  std::vector<char> reached(n);
  std::vector<NodeId> stack;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double weight = 1.0;
    for (std::size_t e = 0; e < m && weight > 0.0; ++e) {
      weight *= ((mask >> e) & 1U) ? prob[e] : 1.0 - prob[e];
    }
    if (weight == 0.0) continue;
    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(seeds.begin(), seeds.end());
    for (NodeId s : seeds) reached[s] = 1;
    std::size_t count = seeds.size();
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (std::size_t e = first_arc[u]; e < first_arc[u + 1]; ++e) {
        if (!((mask >> e) & 1U)) continue;
        NodeId v = arcs[e].second;
        if (!reached[v]) {
          reached[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    total += weight * static_cast<double>(count);
  }
  return total;
}

double one_hop_spread(const Graph& graph, const DiffusionModel& model, NodeId u) {
  double s = 1.0;
  for (NodeId c : graph.out_neighbors(u)) s += arc_probability(model, graph, c);
  return s;
}

double two_hop_node_spread(const Graph& graph, const DiffusionModel& model, NodeId s) {
  double total = 1.0;
  for (NodeId c : graph.out_neighbors(s)) {
    total += arc_probability(model, graph, c) * one_hop_spread(graph, model, c);
  }
  return total;
}

double two_hop_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds) {
  validate_seeds(graph, seeds);
  std::vector<NodeId> members(seeds.begin(), seeds.end());
  std::sort(members.begin(), members.end());
  auto in_seeds = [&](NodeId v) { return std::binary_search(members.begin(), members.end(), v); };
  auto p = [&](NodeId u, NodeId v) { return graph.has_arc(u, v) ? arc_probability(model, graph, v) : 0.0; };

  double individual = 0.0;
  double seed_overlap = 0.0;
  double chi = 0.0;
  for (NodeId s : seeds) {
    individual += two_hop_node_spread(graph, model, s);
    for (NodeId c : graph.out_neighbors(s)) {
      const double psc = arc_probability(model, graph, c);
      if (in_seeds(c)) {
        seed_overlap += psc * (one_hop_spread(graph, model, c) - p(c, s));
      } else {
        for (NodeId d : graph.out_neighbors(c)) {
          if (d != s && in_seeds(d)) chi += psc * arc_probability(model, graph, d);
        }
      }
    }
  }
  const double value = individual - seed_overlap - chi;
  return std::max(value, static_cast<double>(seeds.size()));
}

SampleStats mean_std(std::span<const double> values) {
  SampleStats out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / (n - 1.0));
  return out;
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("correlation needs at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("correlation undefined for zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace imea
