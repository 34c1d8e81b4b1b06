#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "imea/ea.hpp"
#include "imea/rng.hpp"

namespace imea {

CandidatePool::CandidatePool(const Graph& graph, std::vector<NodeId> candidates)
    : nodes_(std::move(candidates)), member_(graph.node_count(), 0) {
  if (nodes_.empty()) {
    nodes_.resize(graph.node_count());
    std::iota(nodes_.begin(), nodes_.end(), 0U);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  for (NodeId v : nodes_) {
    if (v >= graph.node_count()) throw std::out_of_range("candidate node out of range");
    member_[v] = 1;
  }
}

namespace {

bool in_span(std::span<const NodeId> s, NodeId v) { return std::find(s.begin(), s.end(), v) != s.end(); }

std::size_t uniform_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

std::optional<NodeId> CandidatePool::draw_excluding(std::span<const NodeId> a, std::span<const NodeId> b,
                                                    Rng& rng) const {
  const std::size_t excluded = a.size() + b.size();
  if (nodes_.size() > 4 * excluded + 8) {
    while (true) {
      const NodeId v = nodes_[uniform_index(nodes_.size(), rng)];
      if (!in_span(a, v) && !in_span(b, v)) return v;
    }
  }
  std::vector<NodeId> free;
  for (NodeId v : nodes_) {
    if (!in_span(a, v) && !in_span(b, v)) free.push_back(v);
  }
  if (free.empty()) return std::nullopt;
  return free[uniform_index(free.size(), rng)];
}

std::optional<NodeId> CandidatePool::draw_excluding(std::span<const NodeId> excluded, Rng& rng) const {
  return draw_excluding(excluded, {}, rng);
}

std::vector<NodeId> CandidatePool::random_subset(std::size_t k, Rng& rng) const {
  if (k > nodes_.size()) throw std::invalid_argument("k exceeds the candidate set size");
  std::vector<NodeId> out;
  out.reserve(k);
  if (nodes_.size() > 4 * k + 8) {
    while (out.size() < k) out.push_back(*draw_excluding(out, rng));
    return out;
  }
  std::sample(nodes_.begin(), nodes_.end(), std::back_inserter(out), static_cast<std::ptrdiff_t>(k), rng);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::size_t weighted_index(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw std::invalid_argument("weighted choice over no items");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) return uniform_index(weights.size(), rng);
  const double r = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (r < acc) return i;
  }
  return last_positive;
}

std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights, std::size_t k,
                                                             Rng& rng) {
  // Efraimidis-Spirakis: the k largest log(u)/w keys are distributed as k
  // successive proportional draws without replacement, in key order.
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    const double u = 1.0 - uniform01(rng);  // (0, 1]
    keys.emplace_back(std::log(u) / weights[i], i);
  }
  if (k > keys.size()) throw std::invalid_argument("not enough positive weights to draw k items");
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = keys[i].second;
  return out;
}

std::vector<double> degree_random_weights(const Graph& graph, std::span<const NodeId> nodes) {
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = static_cast<double>(graph.out_degree(nodes[i])) + 1.0;
  return w;
}

std::vector<double> degree_rank_weights(const Graph& graph, std::span<const NodeId> nodes) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto da = graph.out_degree(nodes[a]);
    const auto db = graph.out_degree(nodes[b]);
    if (da != db) return da > db;
    return nodes[a] < nodes[b];
  });
  std::vector<double> w(nodes.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    w[order[rank]] = static_cast<double>(nodes.size() - rank);
  }
  return w;
}

namespace {

std::vector<NodeId> community_degree_individual(const Graph& graph, const std::vector<std::vector<NodeId>>& members,
                                                std::size_t k, Rng& rng) {
  std::vector<std::vector<NodeId>> remaining = members;
  std::vector<NodeId> out;
  std::vector<double> sizes(remaining.size());
  while (out.size() < k) {
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      sizes[c] = remaining[c].empty() ? 0.0 : static_cast<double>(members[c].size());
    }
    const std::size_t c = weighted_index(sizes, rng);
    auto& nodes = remaining[c];
    const auto w = degree_random_weights(graph, nodes);
    const std::size_t pick = weighted_index(w, rng);
    out.push_back(nodes[pick]);
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace

std::vector<Individual> initialize_population(const Graph& graph, const EAConfig& config, const CandidatePool& pool,
                                              const InitResources& resources, Rng& rng) {
  if (config.k > pool.size()) throw std::invalid_argument("k exceeds the candidate set size");
  const std::size_t size = config.population_size;
  std::vector<Individual> population;
  population.reserve(size);

  const auto& nodes = pool.nodes();
  std::size_t smart = 0;
  switch (config.init.strategy) {
    case InitStrategy::random:
      break;
    case InitStrategy::single_smart: {
      if (resources.scores == nullptr) throw std::invalid_argument("single-smart init needs centrality scores");
      population.push_back({top_k(*resources.scores, config.k, nodes), std::nullopt});
      smart = 1;
      break;
    }
    case InitStrategy::degree_random:
    case InitStrategy::degree_random_ranked:
    case InitStrategy::community_degree: {
      smart = static_cast<std::size_t>(std::ceil(config.init.smart_fraction * static_cast<double>(size) - 1e-9));
      smart = std::min(smart, size);
      if (config.init.strategy == InitStrategy::community_degree) {
        if (resources.partition == nullptr) throw std::invalid_argument("community-degree init needs a partition");
        std::vector<std::vector<NodeId>> members(resources.partition->community_count());
        for (NodeId v : nodes) members[resources.partition->assignment[v]].push_back(v);
        for (std::size_t i = 0; i < smart; ++i) {
          population.push_back({community_degree_individual(graph, members, config.k, rng), std::nullopt});
        }
      } else {
        const auto weights = config.init.strategy == InitStrategy::degree_random ? degree_random_weights(graph, nodes)
                                                                                 : degree_rank_weights(graph, nodes);
        for (std::size_t i = 0; i < smart; ++i) {
          Individual ind;
          for (std::size_t idx : weighted_sample_without_replacement(weights, config.k, rng)) {
            ind.nodes.push_back(nodes[idx]);
          }
          population.push_back(std::move(ind));
        }
      }
      break;
    }
  }
  while (population.size() < size) population.push_back({pool.random_subset(config.k, rng), std::nullopt});
  return population;
}

std::size_t tournament_select(std::span<const Individual> population, std::size_t tournament_size, Rng& rng) {
  if (population.empty()) throw std::invalid_argument("tournament over an empty population");
  std::size_t best = uniform_index(population.size(), rng);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < tournament_size; ++i) {
    const std::size_t c = uniform_index(population.size(), rng);
    const double fc = population[c].fitness.value();
    const double fb = population[best].fitness.value();
    if (fc > fb) {
      best = c;
      ties = 1;
    } else if (fc == fb) {
      ++ties;
      if (uniform_index(ties, rng) == 0) best = c;
    }
  }
  return best;
}

namespace {

void force_mutation(Individual& child, const Individual& a, const Individual& b, const CandidatePool& pool, Rng& rng) {
  const std::size_t pos = uniform_index(child.nodes.size(), rng);
  auto replacement = pool.draw_excluding(a.nodes, b.nodes, rng);
  if (!replacement) replacement = pool.draw_excluding(child.nodes, rng);
  if (!replacement) throw std::logic_error("candidate set leaves no room for mutation");
  child.nodes[pos] = *replacement;
}

}  // namespace

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, const CandidatePool& pool,
                                            Rng& rng) {
  std::vector<NodeId> only_a, only_b;
  for (NodeId v : a.nodes) {
    if (!b.contains(v)) only_a.push_back(v);
  }
  for (NodeId v : b.nodes) {
    if (!a.contains(v)) only_b.push_back(v);
  }
  const std::size_t len = std::min(only_a.size(), only_b.size());
  if (len >= 2) {
    const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, len - 1)(rng);
    for (std::size_t i = cut; i < len; ++i) std::swap(only_a[i], only_b[i]);
  }

  auto rebuild = [](const Individual& parent, const Individual& other, const std::vector<NodeId>& fill) {
    Individual child;
    child.nodes.reserve(parent.nodes.size());
    std::size_t next = 0;
    for (NodeId v : parent.nodes) child.nodes.push_back(other.contains(v) ? v : fill[next++]);
    return child;
  };
  Individual child_a = rebuild(a, b, only_a);
  Individual child_b = rebuild(b, a, only_b);
  force_mutation(child_a, a, b, pool, rng);
  force_mutation(child_b, a, b, pool, rng);
  return {std::move(child_a), std::move(child_b)};
}

namespace {

void replace_global(Individual& ind, std::size_t pos, const CandidatePool& pool, Rng& rng) {
  auto r = pool.draw_excluding(ind.nodes, rng);
  if (!r) throw std::logic_error("candidate set leaves no room for mutation");
  ind.nodes[pos] = *r;
}

std::vector<NodeId> eligible_neighbors(const Individual& ind, NodeId victim, const MutationContext& ctx) {
  std::vector<NodeId> out;
  for (NodeId c : ctx.graph->out_neighbors(victim)) {
    if (ctx.pool->contains(c) && !ind.contains(c)) out.push_back(c);
  }
  return out;
}

const std::vector<double>& require_spread(const MutationContext& ctx) {
  if (ctx.approx_spread == nullptr) throw std::invalid_argument("mutation needs the per-node spread cache");
  return *ctx.approx_spread;
}

}  // namespace

MutationStrategy mutate(Individual& ind, MutationStrategy strategy, const MutationContext& ctx, Rng& rng) {
  const std::size_t k = ind.nodes.size();
  if (k == 0) throw std::invalid_argument("cannot mutate an empty individual");
  ind.fitness.reset();
  std::vector<double> weights(k);

  switch (strategy) {
    case MutationStrategy::global_random:
      replace_global(ind, uniform_index(k, rng), *ctx.pool, rng);
      return strategy;

    case MutationStrategy::global_low_degree:
      for (std::size_t i = 0; i < k; ++i) weights[i] = 1.0 / (static_cast<double>(ctx.graph->out_degree(ind.nodes[i])) + 1.0);
      replace_global(ind, weighted_index(weights, rng), *ctx.pool, rng);
      return strategy;

    case MutationStrategy::global_low_spread: {
      const auto& spread = require_spread(ctx);
      // Cached spread counts the node itself, so spread - 1 + 1 = spread.
      for (std::size_t i = 0; i < k; ++i) weights[i] = 1.0 / std::max(spread[ind.nodes[i]], 1.0);
      replace_global(ind, weighted_index(weights, rng), *ctx.pool, rng);
      return strategy;
    }

    case MutationStrategy::global_low_additional_spread: {
      if (ctx.fitness == nullptr) throw std::invalid_argument("mutation needs a fitness evaluator");
      const double whole = (*ctx.fitness)(ind.nodes);
      std::vector<NodeId> rest;
      for (std::size_t i = 0; i < k; ++i) {
        rest.clear();
        for (std::size_t j = 0; j < k; ++j) {
          if (j != i) rest.push_back(ind.nodes[j]);
        }
        const double gain = std::max(0.0, whole - (*ctx.fitness)(rest));
        weights[i] = 1.0 / (gain + 1.0);
      }
      replace_global(ind, weighted_index(weights, rng), *ctx.pool, rng);
      return strategy;
    }

    case MutationStrategy::local_neighbors_random:
    case MutationStrategy::local_neighbors_second_degree:
    case MutationStrategy::local_neighbors_approx_spread: {
      const std::size_t pos = uniform_index(k, rng);
      const auto options = eligible_neighbors(ind, ind.nodes[pos], ctx);
      if (options.empty()) {
        replace_global(ind, pos, *ctx.pool, rng);
        return MutationStrategy::global_random;
      }
      std::vector<double> w(options.size(), 1.0);
      if (strategy == MutationStrategy::local_neighbors_second_degree) {
        w = degree_random_weights(*ctx.graph, options);
      } else if (strategy == MutationStrategy::local_neighbors_approx_spread) {
        const auto& spread = require_spread(ctx);
        for (std::size_t i = 0; i < options.size(); ++i) w[i] = spread[options[i]];
      }
      ind.nodes[pos] = options[weighted_index(w, rng)];
      return strategy;
    }

    case MutationStrategy::local_embeddings_random: {
      const std::size_t pos = uniform_index(k, rng);
      const NodeId victim = ind.nodes[pos];
      std::vector<NodeId> options;
      if (ctx.embeddings != nullptr && ctx.embeddings->has(victim)) {
        for (NodeId c : nearest_embedding_neighbors(*ctx.embeddings, victim, ctx.embeddings->node_count())) {
          if (options.size() >= ctx.embedding_neighbors) break;
          if (ctx.pool->contains(c) && !ind.contains(c)) options.push_back(c);
        }
      }
      if (options.empty()) {
        replace_global(ind, pos, *ctx.pool, rng);
        return MutationStrategy::global_random;
      }
      ind.nodes[pos] = options[uniform_index(options.size(), rng)];
      return strategy;
    }
  }
  return strategy;
}

}  // namespace imea
