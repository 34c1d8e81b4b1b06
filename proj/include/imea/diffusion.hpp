#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "imea/graph.hpp"

namespace imea {

enum class ModelKind { independent_cascade, weighted_cascade };

// IC activates every arc with a fixed probability p; WC activates an arc
// u->v with probability 1/indegree(v).
struct DiffusionModel {
  ModelKind kind = ModelKind::weighted_cascade;
  double p = 0.0;

  static DiffusionModel ic(double p);
  static DiffusionModel wc() { return {ModelKind::weighted_cascade, 0.0}; }
  std::string name() const;
};

DiffusionModel parse_model(const std::string& name, double p);

struct SpreadEstimate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  std::size_t n_simulations = 0;
  // Largest number of productive frontier expansions seen in any cascade.
  std::size_t max_depth = 0;
};

inline constexpr std::size_t kUnboundedHops = std::numeric_limits<std::size_t>::max();

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Throws ContractViolation if u->v is not an arc.
double activation_probability(const DiffusionModel& model, const Graph& graph, NodeId u, NodeId v);

struct SimulationOptions {
  std::size_t simulations = 100;
  std::size_t max_hop = kUnboundedHops;
  std::uint64_t master_seed = 0;
  std::uint64_t evaluation_id = 0;
  // Index of the first simulation; lets callers extend a sample in batches
  // without replaying earlier streams.
  std::uint64_t first_simulation = 0;
  unsigned threads = 1;
};

// Cascade simulator bound to one graph and model. Arc probabilities in both
// models depend only on the arc's target, so they are precomputed per node.
class CascadeSimulator {
 public:
  CascadeSimulator(const Graph& graph, const DiffusionModel& model);

  const Graph& graph() const noexcept { return *graph_; }
  const DiffusionModel& model() const noexcept { return model_; }
  double incoming_probability(NodeId v) const { return incoming_[v]; }

  // Per-simulation activated-node counts; simulation i draws from the stream
  // derive_seed(master_seed, evaluation_id, first_simulation + i).
  std::vector<std::uint32_t> sample(std::span<const NodeId> seeds, const SimulationOptions& options,
                                    std::size_t* max_depth = nullptr) const;
  SpreadEstimate estimate(std::span<const NodeId> seeds, const SimulationOptions& options) const;

 private:
  const Graph* graph_;
  DiffusionModel model_;
  std::vector<double> incoming_;
};

// Monte Carlo (max_hop = kUnboundedHops) or MC max-hop spread estimate.
SpreadEstimate estimate_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds,
                               const SimulationOptions& options);

inline constexpr std::size_t kExactSpreadMaxArcs = 22;

// Expected spread by enumerating every live-arc subset. Refuses graphs with
// more than kExactSpreadMaxArcs stored arcs.
double exact_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds);

// 1 + sum of activation probabilities over u's out-neighbors.
double one_hop_spread(const Graph& graph, const DiffusionModel& model, NodeId u);

// Two-hop closed-form spread with overlap corrections between seeds and the
// chi term for seeds sharing an intermediate neighbor. Clamped below at |S|.
double two_hop_spread(const Graph& graph, const DiffusionModel& model, std::span<const NodeId> seeds);

// Two-hop spread of a single node: 1 + sum_c p(s,c) * one_hop(c).
double two_hop_node_spread(const Graph& graph, const DiffusionModel& model, NodeId s);

class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

struct SampleStats {
  double mean = 0.0;
  double std = 0.0;
};

// Mean and sample (n-1) standard deviation; std is 0 for fewer than 2 values.
SampleStats mean_std(std::span<const double> values);

// Throws std::invalid_argument on empty, duplicate or out-of-range seeds.
void validate_seeds(const Graph& graph, std::span<const NodeId> seeds);

}  // namespace imea
