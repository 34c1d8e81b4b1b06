#include "imea/node_filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "imea/parallel.hpp"

namespace imea {

FilterReport filter_min_degree(const Graph& graph, std::size_t threshold) {
  FilterReport report;
  report.method = "min-degree";
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    if (graph.out_degree(u) >= threshold) report.retained.push_back(u);
  }
  report.stop_reason = "threshold";
  return report;
}

void require_candidates(const FilterReport& report, std::size_t k) {
  if (report.retained.size() < k) {
    throw std::invalid_argument("filter retained " + std::to_string(report.retained.size()) +
                                " nodes, fewer than k = " + std::to_string(k));
  }
}

double t_quantile(double df, double p) {
  if (!(df > 0.0)) throw std::invalid_argument("t quantile needs positive degrees of freedom");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("t quantile probability must lie in (0, 1)");
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), p);
}

double t_halfwidth(double std, std::size_t n, double confidence) {
  if (n < 2) throw std::invalid_argument("confidence interval needs at least two samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  if (std == 0.0) return 0.0;
  const double t = t_quantile(static_cast<double>(n - 1), (1.0 + confidence) / 2.0);
  return t * std / std::sqrt(static_cast<double>(n));
}

long double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0L;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  }
  return c;
}

std::size_t min_nodes_for_space(std::size_t k, double lower) {
  std::size_t n = k;
  while (binomial(n, k) < static_cast<long double>(lower)) ++n;
  return n;
}

std::size_t max_nodes_for_space(std::size_t k, double upper) {
  if (binomial(k, k) > static_cast<long double>(upper)) return 0;
  std::size_t n = k;
  while (binomial(n + 1, k) <= static_cast<long double>(upper)) ++n;
  return n;
}

namespace {

struct RunningStats {
  std::uint64_t n = 0;
  std::uint64_t sum = 0;
  long double sum_sq = 0;  // exact for the sample sizes used here

  double mean() const { return n ? static_cast<double>(sum) / static_cast<double>(n) : 0.0; }
  double std() const {
    if (n < 2) return 0.0;
    const long double nn = static_cast<long double>(n);
    const long double m = static_cast<long double>(sum) / nn;
    const long double var = (sum_sq - nn * m * m) / (nn - 1.0L);
    return var > 0 ? static_cast<double>(std::sqrt(var)) : 0.0;
  }
};

}  // namespace

FilterReport filter_best_spread(const Graph& graph, const DiffusionModel& model, std::size_t k,
                                const BestSpreadParams& params) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (!(params.space_lower < params.space_upper)) throw std::invalid_argument("space bounds require L < U");
  if (!(params.initial_error_rate > 0.0) || !(params.error_decrement > 0.0)) {
    throw std::invalid_argument("error rates must be positive");
  }
  if (params.batch_size < 2) throw std::invalid_argument("batch size must be at least 2");

  const std::size_t n = graph.node_count();
  const CascadeSimulator simulator(graph, model);

  FilterReport report;
  report.method = "best-spread";
  report.target_count = min_nodes_for_space(k, params.space_lower);
  report.upper_count = max_nodes_for_space(k, params.space_upper);

  std::vector<RunningStats> stats(n);
  std::vector<double> half_width(n, 0.0);
  std::vector<NodeId> examined(n);
  std::iota(examined.begin(), examined.end(), 0U);

  auto mean_of = [&](NodeId v) { return stats[v].mean(); };
  std::size_t iteration = 0;
  double rate = params.initial_error_rate;

  while (true) {
    ++iteration;
    report.examined_per_iteration.push_back(examined.size());

    std::vector<std::uint64_t> used(examined.size(), 0);
    parallel_for(examined.size(), params.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const NodeId v = examined[i];
        auto& s = stats[v];
        const NodeId seed[] = {v};
        while (true) {
          if (s.n >= 2) {
            half_width[v] = t_halfwidth(s.std(), s.n, params.confidence);
            if (half_width[v] / s.mean() <= rate || s.n >= params.max_samples_per_node) break;
          }
          SimulationOptions opt;
          opt.simulations = params.batch_size;
          opt.max_hop = params.max_hop;
          opt.master_seed = params.master_seed;
          opt.evaluation_id = v;
          opt.first_simulation = s.n;
          for (std::uint32_t c : simulator.sample(seed, opt)) {
            s.sum += c;
            s.sum_sq += static_cast<long double>(c) * c;
            ++s.n;
          }
          used[i] += params.batch_size;
        }
      }
    });
    report.total_simulations += std::accumulate(used.begin(), used.end(), std::uint64_t{0});

    std::sort(examined.begin(), examined.end(), [&](NodeId a, NodeId b) {
      if (mean_of(a) != mean_of(b)) return mean_of(a) > mean_of(b);
      return a < b;
    });

    if (examined.size() <= report.target_count) {
      report.stop_reason = "examined set within target";
      break;
    }

    const std::size_t l = report.target_count;
    const NodeId pivot = examined[l - 1];
    const double pivot_low = mean_of(pivot) - half_width[pivot];
    std::vector<NodeId> kept(examined.begin(), examined.begin() + static_cast<std::ptrdiff_t>(l));
    for (std::size_t i = l; i < examined.size(); ++i) {
      const NodeId v = examined[i];
      if (mean_of(v) + half_width[v] >= pivot_low) kept.push_back(v);
    }
    const std::size_t surplus = kept.size() - l;
    examined = std::move(kept);

    if (static_cast<double>(surplus) < static_cast<double>(report.upper_count) - static_cast<double>(l)) {
      report.stop_reason = "incomparable surplus below u - l";
      break;
    }
    const double next_rate = params.initial_error_rate - static_cast<double>(iteration) * params.error_decrement;
    if (next_rate <= 1e-9) {
      report.stop_reason = "error rate exhausted";
      break;
    }
    if (params.max_total_simulations != 0 && report.total_simulations >= params.max_total_simulations) {
      report.complete = false;
      report.stop_reason = "simulation budget exhausted";
      break;
    }
    rate = next_rate;
  }

  report.iterations = iteration;
  report.final_error_rate = rate;
  report.retained = examined;
  for (NodeId v = 0; v < n; ++v) {
    if (stats[v].n == 0) continue;
    report.records.push_back({v, stats[v].mean(), stats[v].std(), static_cast<std::size_t>(stats[v].n), half_width[v]});
  }
  return report;
}

}  // namespace imea
