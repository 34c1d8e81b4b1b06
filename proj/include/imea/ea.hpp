#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "imea/centrality.hpp"
#include "imea/community.hpp"
#include "imea/diffusion.hpp"
#include "imea/embeddings.hpp"
#include "imea/graph.hpp"

namespace imea {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Configuration

enum class FitnessMethod { mc, mc_max_hop, two_hop, exact };

struct FitnessSpec {
  FitnessMethod method = FitnessMethod::mc_max_hop;
  std::size_t simulations = 100;
  std::size_t max_hop = 3;
};

enum class InitStrategy { random, single_smart, degree_random, degree_random_ranked, community_degree };

struct InitSpec {
  InitStrategy strategy = InitStrategy::random;
  double smart_fraction = 0.5;
  CentralityMetric metric = CentralityMetric::degree;
};

enum class MutationStrategy {
  global_random,
  global_low_degree,
  global_low_spread,
  global_low_additional_spread,
  local_neighbors_random,
  local_neighbors_second_degree,
  local_neighbors_approx_spread,
  local_embeddings_random,
};

inline constexpr std::size_t kMutationStrategyCount = 8;

std::vector<MutationStrategy> all_mutation_strategies();

struct MutationSpec {
  MutationStrategy single = MutationStrategy::global_random;
  // Select among `pool` with the sliding-window UCB1 bandit.
  bool use_bandit = false;
  std::vector<MutationStrategy> pool = all_mutation_strategies();
  std::size_t bandit_window = 100;
  std::size_t embedding_neighbors = 10;
};

struct EAConfig {
  std::size_t population_size = 100;
  std::size_t max_generations = 100;
  double crossover_rate = 1.0;
  double mutation_rate = 0.1;
  std::size_t tournament_size = 5;
  std::size_t num_elites = 1;
  // Generations without strict improvement before stopping; 0 means 10% of
  // max_generations (at least 1).
  std::size_t patience = 0;
  std::size_t k = 10;
  DiffusionModel model = DiffusionModel::wc();
  FitnessSpec fitness;
  InitSpec init;
  MutationSpec mutation;
  // Nodes individuals may draw from; empty means every node.
  std::vector<NodeId> candidates;
  // Simulations behind the per-node spread cache used by spread-aware
  // mutations.
  std::size_t spread_cache_simulations = 100;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;

  std::size_t effective_patience() const;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const EAConfig& config);

std::string to_string(FitnessMethod m);
std::string to_string(InitStrategy s);
std::string to_string(MutationStrategy s);
FitnessMethod parse_fitness_method(const std::string& name);
InitStrategy parse_init_strategy(const std::string& name);
MutationStrategy parse_mutation_strategy(const std::string& name);

// ---------------------------------------------------------------------------
// Individuals and fitness

struct Individual {
  std::vector<NodeId> nodes;  // insertion order matters to crossover
  std::optional<double> fitness;

  bool contains(NodeId v) const;
};

bool same_set(const Individual& a, const Individual& b);

// Fitness with a per-run cache keyed by the sorted seed set. Each set's
// simulation streams derive from a hash of the set, so a value never depends
// on when or in which batch it was computed.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const Graph& graph, const DiffusionModel& model, const FitnessSpec& spec,
                   std::uint64_t master_seed, unsigned threads = 1);

  double operator()(std::span<const NodeId> seeds);
  // Fills every unset fitness, evaluating distinct uncached sets in parallel.
  void evaluate(std::vector<Individual>& individuals);
  void evaluate(Individual& individual);

  std::size_t cache_size() const noexcept { return cache_.size(); }
  std::size_t computed() const noexcept { return computed_; }
  const FitnessSpec& spec() const noexcept { return spec_; }

 private:
  double compute(const std::vector<NodeId>& sorted) const;

  const Graph* graph_;
  DiffusionModel model_;
  FitnessSpec spec_;
  std::uint64_t master_seed_;
  unsigned threads_;
  CascadeSimulator simulator_;
  std::map<std::vector<NodeId>, double> cache_;
  std::size_t computed_ = 0;
};

std::uint64_t seed_set_hash(std::span<const NodeId> sorted);

// ---------------------------------------------------------------------------
// Candidate set

class CandidatePool {
 public:
  CandidatePool(const Graph& graph, std::vector<NodeId> candidates);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  bool contains(NodeId v) const { return v < member_.size() && member_[v]; }

  // Uniform candidate not in `excluded`; nullopt when none exists.
  std::optional<NodeId> draw_excluding(std::span<const NodeId> excluded, Rng& rng) const;
  std::optional<NodeId> draw_excluding(std::span<const NodeId> a, std::span<const NodeId> b, Rng& rng) const;
  std::vector<NodeId> random_subset(std::size_t k, Rng& rng) const;

 private:
  std::vector<NodeId> nodes_;
  std::vector<char> member_;
};

// ---------------------------------------------------------------------------
// Operators

// Index into `weights` drawn proportionally to weight; uniform if all zero.
std::size_t weighted_index(std::span<const double> weights, Rng& rng);
// k distinct indices by successive weighted draws without replacement,
// returned in draw order.
std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights, std::size_t k, Rng& rng);

std::vector<double> degree_random_weights(const Graph& graph, std::span<const NodeId> nodes);
std::vector<double> degree_rank_weights(const Graph& graph, std::span<const NodeId> nodes);

struct InitResources {
  const CentralityScores* scores = nullptr;       // single-smart
  const CommunityPartition* partition = nullptr;  // community-degree
};

std::vector<Individual> initialize_population(const Graph& graph, const EAConfig& config, const CandidatePool& pool,
                                              const InitResources& resources, Rng& rng);

// Index of the fittest of `tournament_size` uniform draws with replacement;
// fitness ties are broken uniformly.
std::size_t tournament_select(std::span<const Individual> population, std::size_t tournament_size, Rng& rng);

// Keeps shared nodes, exchanges the tails of the aligned non-shared parts at
// a single cut point, then forces one position of each child to a node
// outside both parents.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, const CandidatePool& pool,
                                            Rng& rng);

struct MutationContext {
  const Graph* graph = nullptr;
  const CandidatePool* pool = nullptr;
  // Per-node approximate spread (indexed by node id); needed by
  // global-low-spread and local-neighbors-approx-spread.
  const std::vector<double>* approx_spread = nullptr;
  const EmbeddingTable* embeddings = nullptr;
  std::size_t embedding_neighbors = 10;
  // Needed by global-low-additional-spread.
  FitnessEvaluator* fitness = nullptr;
};

// Replaces exactly one node. Returns the strategy actually applied, which is
// global-random when a local strategy has no eligible replacement.
MutationStrategy mutate(Individual& individual, MutationStrategy strategy, const MutationContext& context, Rng& rng);

// ---------------------------------------------------------------------------
// Evolution

struct GenerationStats {
  std::size_t generation = 0;
  double best = 0.0;  // best-ever fitness
  double mean = 0.0;
  double std = 0.0;
  double elapsed_ms = 0.0;
};

struct BanditSnapshot {
  std::size_t generation = 0;
  std::vector<std::size_t> pulls;
  std::vector<double> window_sums;
};

struct EAResult {
  Individual best;
  // Best-ever fitness; entry 0 is the initial population, entry g the state
  // after generation g.
  std::vector<double> history;
  std::vector<GenerationStats> log;
  std::vector<BanditSnapshot> bandit_log;
  std::size_t generations = 0;
  std::string stop_reason;
  std::map<std::string, double> phase_ms;
  std::size_t fitness_evaluations = 0;
};

struct EAHooks {
  const EmbeddingTable* embeddings = nullptr;
  std::function<void(const GenerationStats&)> on_generation;
};

EAResult evolve(const Graph& graph, const EAConfig& config, const EAHooks& hooks = {});

}  // namespace imea
