#include <algorithm>

#include "imea/ea.hpp"
#include "imea/parallel.hpp"
#include "imea/rng.hpp"

namespace imea {

std::uint64_t seed_set_hash(std::span<const NodeId> sorted) {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ sorted.size();
  for (NodeId v : sorted) h = mix64(h ^ (static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL));
  return h;
}

bool Individual::contains(NodeId v) const { return std::find(nodes.begin(), nodes.end(), v) != nodes.end(); }

bool same_set(const Individual& a, const Individual& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  auto x = a.nodes, y = b.nodes;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

FitnessEvaluator::FitnessEvaluator(const Graph& graph, const DiffusionModel& model, const FitnessSpec& spec,
                                   std::uint64_t master_seed, unsigned threads)
    : graph_(&graph),
      model_(model),
      spec_(spec),
      master_seed_(master_seed),
      threads_(threads),
      simulator_(graph, model) {}

double FitnessEvaluator::compute(const std::vector<NodeId>& sorted) const {
  if (sorted.empty()) return 0.0;
  switch (spec_.method) {
    case FitnessMethod::two_hop:
      return two_hop_spread(*graph_, model_, sorted);
    case FitnessMethod::exact:
      return exact_spread(*graph_, model_, sorted);
    case FitnessMethod::mc:
    case FitnessMethod::mc_max_hop: {
      SimulationOptions opt;
      opt.simulations = spec_.simulations;
      opt.max_hop = spec_.method == FitnessMethod::mc ? kUnboundedHops : spec_.max_hop;
      opt.master_seed = master_seed_;
      opt.evaluation_id = seed_set_hash(sorted);
      return simulator_.estimate(sorted, opt).mean;
    }
  }
  return 0.0;
}

double FitnessEvaluator::operator()(std::span<const NodeId> seeds) {
  std::vector<NodeId> key(seeds.begin(), seeds.end());
  std::sort(key.begin(), key.end());
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const double value = compute(key);
  ++computed_;
  cache_.emplace(std::move(key), value);
  return value;
}

void FitnessEvaluator::evaluate(Individual& individual) {
  if (!individual.fitness) individual.fitness = (*this)(individual.nodes);
}

void FitnessEvaluator::evaluate(std::vector<Individual>& individuals) {
  std::vector<std::vector<NodeId>> pending;
  for (auto& ind : individuals) {
    if (ind.fitness) continue;
    std::vector<NodeId> key = ind.nodes;
    std::sort(key.begin(), key.end());
    if (!cache_.contains(key)) pending.push_back(std::move(key));
  }
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());

  std::vector<double> values(pending.size());
  parallel_for(pending.size(), threads_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = compute(pending[i]);
  });
  for (std::size_t i = 0; i < pending.size(); ++i) cache_.emplace(std::move(pending[i]), values[i]);
  computed_ += pending.size();

  for (auto& ind : individuals) {
    if (!ind.fitness) ind.fitness = (*this)(ind.nodes);
  }
}

}  // namespace imea
