#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imea/graph.hpp"

namespace imea {

enum class CentralityMetric { betweenness, closeness, degree, eigenvector, katz };

CentralityMetric parse_centrality(const std::string& name);
std::string to_string(CentralityMetric metric);

struct CentralityScores {
  CentralityMetric metric = CentralityMetric::degree;
  std::vector<double> values;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : std::runtime_error(what + " did not converge after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CentralityOptions {
  // Treat every arc as undirected before scoring.
  bool symmetrize = false;
  // Abort with BudgetExceeded once this much wall-clock time has elapsed.
  std::optional<std::chrono::milliseconds> budget;
  unsigned threads = 1;
  double tolerance = 1e-6;
  std::size_t max_iterations = 1000;
};

// degree: out-degree. betweenness: Brandes accumulation over shortest paths
// (unordered pairs on undirected graphs). closeness: Wasserman-Faust
// ((r-1)/(n-1)) * ((r-1)/sum of distances) over the r nodes u reaches,
// 0 when u reaches nothing. eigenvector: power iteration of (A^T + I) on
// in-edges, scaled to unit max. katz: x = alpha A^T x + 1 with
// alpha = min(0.005, 0.85 / spectral-radius bound).
CentralityScores centrality(const Graph& graph, CentralityMetric metric, const CentralityOptions& options = {});

// Indices of the k highest-scoring nodes among `candidates` (all nodes when
// empty); ties go to the lower index.
std::vector<NodeId> top_k(const CentralityScores& scores, std::size_t k, const std::vector<NodeId>& candidates = {});

}  // namespace imea
