#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "imea/bandit.hpp"
#include "imea/ea.hpp"
#include "imea/rng.hpp"

namespace imea {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool needs_spread_cache(const EAConfig& c) {
  auto uses = [](MutationStrategy s) {
    return s == MutationStrategy::global_low_spread || s == MutationStrategy::local_neighbors_approx_spread;
  };
  if (c.mutation.use_bandit) return std::any_of(c.mutation.pool.begin(), c.mutation.pool.end(), uses);
  return uses(c.mutation.single);
}

// Single-node spread under the run's approximation, computed once.
std::vector<double> node_spread_cache(const Graph& graph, const EAConfig& c, const CandidatePool& pool) {
  FitnessSpec spec = c.fitness;
  if (spec.method == FitnessMethod::mc || spec.method == FitnessMethod::mc_max_hop) {
    spec.simulations = c.spread_cache_simulations;
  }
  FitnessEvaluator eval(graph, c.model, spec, derive_seed(c.master_seed, 0x5eedcac4e), c.threads);
  std::vector<Individual> singles;
  singles.reserve(pool.size());
  for (NodeId v : pool.nodes()) singles.push_back({{v}, std::nullopt});
  eval.evaluate(singles);
  std::vector<double> spread(graph.node_count(), 1.0);
  for (const auto& s : singles) spread[s.nodes[0]] = *s.fitness;
  return spread;
}

GenerationStats summarize(std::size_t generation, double best, const std::vector<Individual>& population,
                          Clock::time_point start) {
  std::vector<double> f;
  f.reserve(population.size());
  for (const auto& ind : population) f.push_back(*ind.fitness);
  const auto stats = mean_std(f);
  return {generation, best, stats.mean, stats.std, ms_since(start)};
}

std::size_t fittest(const std::vector<Individual>& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (*population[i].fitness > *population[best].fitness) best = i;
  }
  return best;
}

}  // namespace

EAResult evolve(const Graph& graph, const EAConfig& config, const EAHooks& hooks) {
  validate(config);
  const auto start = Clock::now();
  EAResult result;

  Rng rng(derive_seed(config.master_seed, 0xea));
  const CandidatePool pool(graph, config.candidates);
  if (config.k > pool.size()) throw std::invalid_argument("k exceeds the candidate set size");
  FitnessEvaluator fitness(graph, config.model, config.fitness, config.master_seed, config.threads);

  auto phase = Clock::now();
  std::optional<CentralityScores> scores;
  std::optional<CommunityPartition> partition;
  if (config.init.strategy == InitStrategy::single_smart) {
    CentralityOptions opt;
    opt.threads = config.threads;
    scores = centrality(graph, config.init.metric, opt);
  } else if (config.init.strategy == InitStrategy::community_degree) {
    partition = detect_communities(graph, derive_seed(config.master_seed, 0x10a));
  }
  std::vector<double> spread_cache;
  if (needs_spread_cache(config)) spread_cache = node_spread_cache(graph, config, pool);
  result.phase_ms["setup"] = ms_since(phase);

  phase = Clock::now();
  InitResources resources{scores ? &*scores : nullptr, partition ? &*partition : nullptr};
  std::vector<Individual> population = initialize_population(graph, config, pool, resources, rng);
  fitness.evaluate(population);
  result.phase_ms["initialization"] = ms_since(phase);

  Individual best = population[fittest(population)];
  result.history.push_back(*best.fitness);
  result.log.push_back(summarize(0, *best.fitness, population, start));
  if (hooks.on_generation) hooks.on_generation(result.log.back());

  if (pool.size() == config.k) {
    result.best = best;
    result.stop_reason = "candidate set equals k";
    result.fitness_evaluations = fitness.computed();
    return result;
  }

  MutationContext ctx;
  ctx.graph = &graph;
  ctx.pool = &pool;
  ctx.approx_spread = spread_cache.empty() ? nullptr : &spread_cache;
  ctx.embeddings = hooks.embeddings;
  ctx.embedding_neighbors = config.mutation.embedding_neighbors;
  ctx.fitness = &fitness;

  const auto& arms = config.mutation.pool;
  std::optional<OperatorBandit> bandit;
  if (config.mutation.use_bandit) bandit.emplace(arms.size(), config.mutation.bandit_window);

  const std::size_t patience = config.effective_patience();
  std::bernoulli_distribution do_crossover(config.crossover_rate);
  std::bernoulli_distribution do_mutate(config.mutation_rate);
  std::size_t stall = 0;
  double variation_ms = 0.0, evaluation_ms = 0.0;
  result.stop_reason = "max generations";

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    if (bandit) bandit->set_generation(gen);

    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return *population[a].fitness > *population[b].fitness; });

    std::vector<Individual> next;
    next.reserve(config.population_size);
    for (std::size_t e = 0; e < config.num_elites; ++e) next.push_back(population[order[e]]);

    auto t0 = Clock::now();
    double eval_inside = 0.0;
    while (next.size() < config.population_size) {
      const Individual& pa = population[tournament_select(population, config.tournament_size, rng)];
      const Individual& pb = population[tournament_select(population, config.tournament_size, rng)];
      std::pair<Individual, Individual> children;
      if (do_crossover(rng)) {
        children = crossover(pa, pb, pool, rng);
      } else {
        children = {pa, pb};
      }
      const Individual* parents[] = {&pa, &pb};
      Individual* kids[] = {&children.first, &children.second};
      for (int c = 0; c < 2 && next.size() < config.population_size; ++c) {
        Individual& child = *kids[c];
        std::vector<std::size_t> applied;
        for (std::size_t pos = 0; pos < config.k; ++pos) {
          if (!do_mutate(rng)) continue;
          if (bandit) {
            const std::size_t arm = bandit->select();
            mutate(child, arms[arm], ctx, rng);
            applied.push_back(arm);
          } else {
            mutate(child, config.mutation.single, ctx, rng);
          }
        }
        if (bandit && !applied.empty()) {
          const auto te = Clock::now();
          fitness.evaluate(child);
          eval_inside += ms_since(te);
          const double parent_fitness = *parents[c]->fitness;
          const double reward = std::max(0.0, *child.fitness - parent_fitness) / std::max(parent_fitness, 1.0);
          std::sort(applied.begin(), applied.end());
          applied.erase(std::unique(applied.begin(), applied.end()), applied.end());
          for (std::size_t arm : applied) bandit->record(arm, reward);
        }
        next.push_back(std::move(child));
      }
    }
    variation_ms += ms_since(t0) - eval_inside;
    evaluation_ms += eval_inside;

    t0 = Clock::now();
    fitness.evaluate(next);
    evaluation_ms += ms_since(t0);
    population = std::move(next);

    const Individual& gen_best = population[fittest(population)];
    if (*gen_best.fitness > *best.fitness) {
      best = gen_best;
      stall = 0;
    } else {
      ++stall;
    }
    result.history.push_back(*best.fitness);
    result.log.push_back(summarize(gen, *best.fitness, population, start));
    if (bandit) {
      BanditSnapshot snap;
      snap.generation = gen;
      for (std::size_t a = 0; a < arms.size(); ++a) {
        snap.pulls.push_back(bandit->pulls(a));
        snap.window_sums.push_back(bandit->window_sum(a));
      }
      result.bandit_log.push_back(std::move(snap));
    }
    if (hooks.on_generation) hooks.on_generation(result.log.back());
    result.generations = gen;
    if (stall >= patience) {
      result.stop_reason = "no improvement";
      break;
    }
  }

  result.phase_ms["variation"] = variation_ms;
  result.phase_ms["evaluation"] = evaluation_ms;
  result.phase_ms["total"] = ms_since(start);
  result.best = best;
  result.fitness_evaluations = fitness.computed();
  return result;
}

}  // namespace imea
