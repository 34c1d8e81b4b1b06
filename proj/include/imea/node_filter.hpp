#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imea/diffusion.hpp"
#include "imea/graph.hpp"

namespace imea {

struct NodeSpreadRecord {
  NodeId node = 0;
  double mean = 0.0;
  double std = 0.0;
  std::size_t samples = 0;
  double half_width = 0.0;
};

struct FilterReport {
  std::string method;  // "min-degree" or "best-spread"
  std::vector<NodeId> retained;
  // Latest statistics of every node examined (best-spread only).
  std::vector<NodeSpreadRecord> records;
  std::size_t iterations = 0;
  double final_error_rate = 0.0;
  std::vector<std::size_t> examined_per_iteration;
  std::size_t target_count = 0;  // l
  std::size_t upper_count = 0;   // u
  std::size_t total_simulations = 0;
  bool complete = true;
  std::string stop_reason;
};

// Nodes with out-degree >= threshold.
FilterReport filter_min_degree(const Graph& graph, std::size_t threshold);

// Throws std::invalid_argument when fewer than k nodes survived.
void require_candidates(const FilterReport& report, std::size_t k);

// Student-t quantile at probability p with df degrees of freedom.
double t_quantile(double df, double p);

// Two-sided confidence half-width t_{(1+c)/2, n-1} * std / sqrt(n).
double t_halfwidth(double std, std::size_t n, double confidence);

// Binomial coefficient C(n, k) as long double.
long double binomial(std::size_t n, std::size_t k);
// Smallest n with C(n, k) >= lower.
std::size_t min_nodes_for_space(std::size_t k, double lower);
// Largest n with C(n, k) <= upper.
std::size_t max_nodes_for_space(std::size_t k, double upper);

struct BestSpreadParams {
  double initial_error_rate = 0.8;
  double error_decrement = 0.1;
  // Bounds on the residual search-space size C(n, k).
  double space_lower = 1e9;
  double space_upper = 1e11;
  std::size_t batch_size = 30;
  std::size_t max_hop = 2;
  double confidence = 0.95;
  std::size_t max_samples_per_node = 100000;
  // Whole-run simulation cap; 0 disables it.
  std::size_t max_total_simulations = 0;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

// Iteratively samples single-node spreads until each node's relative
// confidence half-width is within the current error rate, keeps the l best
// nodes plus every node whose interval overlaps the l-th node's, and tightens
// the error rate until the overlapping surplus is below u - l.
FilterReport filter_best_spread(const Graph& graph, const DiffusionModel& model, std::size_t k,
                                const BestSpreadParams& params = {});

}  // namespace imea
