#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imea/diffusion.hpp"
#include "imea/ea.hpp"
#include "imea/graph.hpp"
#include "imea/node_filter.hpp"

namespace imea {

struct RunRecord {
  std::size_t run_id = 0;
  std::string method;
  std::string dataset;
  std::string model;
  std::size_t k = 0;
  std::string metric;
  double value = 0.0;
  double runtime_ms = 0.0;
};

struct Aggregate {
  std::string method;
  std::string metric;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;
};

struct RunReport {
  std::vector<RunRecord> records;
  nlohmann::json config = nlohmann::json::object();
  // Extra results such as correlations, keyed by name.
  nlohmann::json summary = nlohmann::json::object();
};

// Mean and sample std per (method, metric), in first-appearance order.
std::vector<Aggregate> aggregate(const RunReport& report);

// ---------------------------------------------------------------------------
// Spread-approximation study

struct SpreadMethod {
  std::string name;
  FitnessMethod method = FitnessMethod::mc;
  std::size_t simulations = 10000;
  std::size_t max_hop = kUnboundedHops;
};

struct CorrelationConfig {
  std::string dataset = "graph";
  DiffusionModel model = DiffusionModel::wc();
  std::size_t k = 5;
  std::size_t seed_sets = 100;
  // The first method is the reference (full Monte Carlo).
  std::vector<SpreadMethod> methods;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

struct CorrelationResult {
  RunReport report;
  std::vector<std::vector<NodeId>> seed_sets;
  std::map<std::string, std::vector<double>> spreads;
  // Pearson r of each method against the reference; nullopt when undefined.
  std::map<std::string, std::optional<double>> correlation;
  std::map<std::string, double> total_runtime_ms;
};

std::vector<std::vector<NodeId>> random_seed_sets(const Graph& graph, std::size_t count, std::size_t k,
                                                  std::uint64_t seed);

CorrelationResult run_correlation_study(const Graph& graph, const CorrelationConfig& config);

// ---------------------------------------------------------------------------
// EA variant comparison

enum class FilterKind { none, min_degree, best_spread };

struct EAVariant {
  std::string name;
  EAConfig config;
  FilterKind filter = FilterKind::none;
  std::size_t min_degree = 1;
  BestSpreadParams best_spread;
};

struct ComparisonConfig {
  std::string dataset = "graph";
  std::vector<EAVariant> variants;
  std::size_t repetitions = 10;
  // Common re-scoring of every variant's best seed set.
  std::size_t final_simulations = 10000;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

struct VariantRun {
  std::string variant;
  std::size_t run_id = 0;
  EAResult result;
  double final_fitness = 0.0;
  std::size_t candidates = 0;
};

struct ComparisonResult {
  RunReport report;
  std::vector<VariantRun> runs;
};

// Every variant's run r uses the same derived seed, so runs are paired
// across variants.
ComparisonResult run_ea_comparison(const Graph& graph, const ComparisonConfig& config);

// ---------------------------------------------------------------------------
// Report output

inline constexpr const char* kReportCsvHeader = "run_id,method,dataset,model,k,metric,value,runtime_ms";

std::string version_string();

void write_report_csv(const RunReport& report, std::ostream& out);
nlohmann::json report_json(const RunReport& report);
// Writes CSV and JSON; throws std::runtime_error naming the failing path.
void emit_reports(const RunReport& report, const std::string& csv_path, const std::string& json_path);
std::vector<Aggregate> aggregates_from_json(const nlohmann::json& j);

nlohmann::json filter_report_json(const FilterReport& report, const Graph& graph);
// Candidate node indices from a filter JSON document (its retained labels).
std::vector<NodeId> candidates_from_json(const nlohmann::json& j, const Graph& graph);

}  // namespace imea
