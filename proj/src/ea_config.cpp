#include <algorithm>
#include <stdexcept>

#include "imea/ea.hpp"

namespace imea {

std::vector<MutationStrategy> all_mutation_strategies() {
  return {MutationStrategy::global_random,
          MutationStrategy::global_low_degree,
          MutationStrategy::global_low_spread,
          MutationStrategy::global_low_additional_spread,
          MutationStrategy::local_neighbors_random,
          MutationStrategy::local_neighbors_second_degree,
          MutationStrategy::local_neighbors_approx_spread,
          MutationStrategy::local_embeddings_random};
}

std::size_t EAConfig::effective_patience() const {
  if (patience != 0) return patience;
  return std::max<std::size_t>(1, max_generations / 10);
}

void validate(const EAConfig& c) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid EA config: " + what); };
  if (c.population_size < 2) fail("population_size must be at least 2");
  if (c.k < 1) fail("k must be at least 1");
  if (c.crossover_rate < 0.0 || c.crossover_rate > 1.0) fail("crossover_rate must lie in [0, 1]");
  if (c.mutation_rate < 0.0 || c.mutation_rate > 1.0) fail("mutation_rate must lie in [0, 1]");
  if (c.tournament_size < 1 || c.tournament_size > c.population_size) {
    fail("tournament_size must lie in [1, population_size]");
  }
  if (c.num_elites >= c.population_size) fail("num_elites must be below population_size");
  if (c.init.smart_fraction < 0.0 || c.init.smart_fraction > 1.0) fail("smart_fraction must lie in [0, 1]");
  const bool sampled = c.fitness.method == FitnessMethod::mc || c.fitness.method == FitnessMethod::mc_max_hop;
  if (sampled && c.fitness.simulations < 1) fail("simulations must be at least 1");
  if (c.fitness.method == FitnessMethod::mc_max_hop && c.fitness.max_hop < 1) fail("max_hop must be at least 1");
  if (c.mutation.use_bandit && c.mutation.pool.empty()) fail("bandit mutation pool is empty");
  if (c.mutation.bandit_window < 1) fail("bandit window must be at least 1");
}

std::string to_string(FitnessMethod m) {
  switch (m) {
    case FitnessMethod::mc: return "mc";
    case FitnessMethod::mc_max_hop: return "mc-max-hop";
    case FitnessMethod::two_hop: return "two-hop";
    case FitnessMethod::exact: return "exact";
  }
  return "unknown";
}

std::string to_string(InitStrategy s) {
  switch (s) {
    case InitStrategy::random: return "random";
    case InitStrategy::single_smart: return "single-smart";
    case InitStrategy::degree_random: return "degree-random";
    case InitStrategy::degree_random_ranked: return "degree-random-ranked";
    case InitStrategy::community_degree: return "community-degree";
  }
  return "unknown";
}

std::string to_string(MutationStrategy s) {
  switch (s) {
    case MutationStrategy::global_random: return "global-random";
    case MutationStrategy::global_low_degree: return "global-low-degree";
    case MutationStrategy::global_low_spread: return "global-low-spread";
    case MutationStrategy::global_low_additional_spread: return "global-low-additional-spread";
    case MutationStrategy::local_neighbors_random: return "local-neighbors-random";
    case MutationStrategy::local_neighbors_second_degree: return "local-neighbors-second-degree";
    case MutationStrategy::local_neighbors_approx_spread: return "local-neighbors-approx-spread";
    case MutationStrategy::local_embeddings_random: return "local-embeddings-random";
  }
  return "unknown";
}

FitnessMethod parse_fitness_method(const std::string& name) {
  for (auto m : {FitnessMethod::mc, FitnessMethod::mc_max_hop, FitnessMethod::two_hop, FitnessMethod::exact}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown fitness method '" + name + "'");
}

InitStrategy parse_init_strategy(const std::string& name) {
  for (auto s : {InitStrategy::random, InitStrategy::single_smart, InitStrategy::degree_random,
                 InitStrategy::degree_random_ranked, InitStrategy::community_degree}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown init strategy '" + name + "'");
}

MutationStrategy parse_mutation_strategy(const std::string& name) {
  for (auto s : all_mutation_strategies()) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown mutation strategy '" + name + "'");
}

}  // namespace imea
