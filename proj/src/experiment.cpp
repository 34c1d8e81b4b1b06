#include "imea/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "imea/rng.hpp"

#ifndef IMEA_VERSION
#define IMEA_VERSION "0.0.0-unknown"
#endif

namespace imea {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string version_string() { return IMEA_VERSION; }

std::vector<Aggregate> aggregate(const RunReport& report) {
  std::vector<Aggregate> out;
  std::vector<std::vector<double>> values;
  for (const auto& r : report.records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Aggregate& a) { return a.method == r.method && a.metric == r.metric; });
    std::size_t idx = static_cast<std::size_t>(it - out.begin());
    if (it == out.end()) {
      out.push_back({r.method, r.metric, 0, 0.0, 0.0});
      values.emplace_back();
    }
    values[idx].push_back(r.value);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto s = mean_std(values[i]);
    out[i].count = values[i].size();
    out[i].mean = s.mean;
    out[i].std = s.std;
  }
  return out;
}

std::vector<std::vector<NodeId>> random_seed_sets(const Graph& graph, std::size_t count, std::size_t k,
                                                  std::uint64_t seed) {
  const CandidatePool pool(graph, {});
  Rng rng(derive_seed(seed, 0xc0443));
  std::vector<std::vector<NodeId>> sets;
  sets.reserve(count);
  for (std::size_t i = 0; i < count; ++i) sets.push_back(pool.random_subset(k, rng));
  return sets;
}

CorrelationResult run_correlation_study(const Graph& graph, const CorrelationConfig& config) {
  if (config.methods.empty()) throw std::invalid_argument("correlation study needs at least one method");
  CorrelationResult result;
  result.seed_sets = random_seed_sets(graph, config.seed_sets, config.k, config.master_seed);
  const CascadeSimulator simulator(graph, config.model);

  auto& report = result.report;
  report.config = {{"study", "correlation"},       {"dataset", config.dataset}, {"model", config.model.name()},
                   {"p", config.model.p},          {"k", config.k},             {"seed_sets", config.seed_sets},
                   {"master_seed", config.master_seed}};
  for (const auto& m : config.methods) {
    report.config["methods"].push_back({{"name", m.name},
                                        {"method", to_string(m.method)},
                                        {"simulations", m.simulations},
                                        {"max_hop", m.max_hop == kUnboundedHops ? nlohmann::json("inf") : nlohmann::json(m.max_hop)}});
  }

  for (const auto& m : config.methods) {
    auto& values = result.spreads[m.name];
    double total = 0.0;
    for (std::size_t i = 0; i < result.seed_sets.size(); ++i) {
      const auto& seeds = result.seed_sets[i];
      const auto t0 = Clock::now();
      double value = 0.0;
      switch (m.method) {
        case FitnessMethod::two_hop:
          value = two_hop_spread(graph, config.model, seeds);
          break;
        case FitnessMethod::exact:
          value = exact_spread(graph, config.model, seeds);
          break;
        case FitnessMethod::mc:
        case FitnessMethod::mc_max_hop: {
          SimulationOptions opt;
          opt.simulations = m.simulations;
          opt.max_hop = m.method == FitnessMethod::mc ? kUnboundedHops : m.max_hop;
          opt.master_seed = config.master_seed;
          opt.evaluation_id = i;
          opt.threads = config.threads;
          value = simulator.estimate(seeds, opt).mean;
          break;
        }
      }
      const double elapsed = ms_since(t0);
      total += elapsed;
      values.push_back(value);
      report.records.push_back({i, m.name, config.dataset, config.model.name(), config.k, "spread", value, elapsed});
    }
    result.total_runtime_ms[m.name] = total;
  }

  const auto& reference = result.spreads[config.methods.front().name];
  for (const auto& m : config.methods) {
    try {
      result.correlation[m.name] = pearson_correlation(result.spreads[m.name], reference);
    } catch (const UndefinedCorrelation&) {
      result.correlation[m.name] = std::nullopt;
    }
    const auto& r = result.correlation[m.name];
    report.summary["pearson_vs_reference"][m.name] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
    report.summary["total_runtime_ms"][m.name] = result.total_runtime_ms[m.name];
  }
  report.summary["reference"] = config.methods.front().name;
  return result;
}

ComparisonResult run_ea_comparison(const Graph& graph, const ComparisonConfig& config) {
  if (config.variants.empty()) throw std::invalid_argument("comparison needs at least one EA variant");
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  ComparisonResult result;
  auto& report = result.report;
  report.config = {{"study", "ea-comparison"},
                   {"dataset", config.dataset},
                   {"repetitions", config.repetitions},
                   {"final_simulations", config.final_simulations},
                   {"master_seed", config.master_seed}};

  for (const auto& variant : config.variants) {
    const auto& c = variant.config;
    report.config["variants"].push_back({{"name", variant.name},
                                         {"model", c.model.name()},
                                         {"p", c.model.p},
                                         {"k", c.k},
                                         {"population_size", c.population_size},
                                         {"max_generations", c.max_generations},
                                         {"fitness", to_string(c.fitness.method)},
                                         {"simulations", c.fitness.simulations},
                                         {"max_hop", c.fitness.max_hop},
                                         {"init", to_string(c.init.strategy)},
                                         {"smart_fraction", c.init.smart_fraction},
                                         {"mutation", c.mutation.use_bandit ? "bandit" : to_string(c.mutation.single)},
                                         {"filter", variant.filter == FilterKind::none         ? "none"
                                                    : variant.filter == FilterKind::min_degree ? "min-degree"
                                                                                               : "best-spread"}});

    for (std::size_t run = 0; run < config.repetitions; ++run) {
      const std::uint64_t run_seed = derive_seed(config.master_seed, 0xc0de, run);
      const auto t0 = Clock::now();
      EAConfig ea = c;
      ea.master_seed = run_seed;
      ea.threads = config.threads;
      if (variant.filter == FilterKind::min_degree) {
        auto f = filter_min_degree(graph, variant.min_degree);
        require_candidates(f, ea.k);
        ea.candidates = f.retained;
      } else if (variant.filter == FilterKind::best_spread) {
        BestSpreadParams params = variant.best_spread;
        params.master_seed = derive_seed(run_seed, 0xf1);
        params.threads = config.threads;
        auto f = filter_best_spread(graph, ea.model, ea.k, params);
        require_candidates(f, ea.k);
        ea.candidates = f.retained;
      }
      EAResult ea_result = evolve(graph, ea);
      const double elapsed = ms_since(t0);

      // Common protocol: full Monte Carlo with a stream fixed by the set.
      SimulationOptions opt;
      opt.simulations = config.final_simulations;
      opt.master_seed = config.master_seed;
      auto sorted = ea_result.best.nodes;
      std::sort(sorted.begin(), sorted.end());
      opt.evaluation_id = seed_set_hash(sorted);
      opt.threads = config.threads;
      const double final_fitness = estimate_spread(graph, c.model, sorted, opt).mean;

      const std::string model = c.model.name();
      report.records.push_back({run, variant.name, config.dataset, model, c.k, "best_fitness", final_fitness, elapsed});
      report.records.push_back(
          {run, variant.name, config.dataset, model, c.k, "search_fitness", *ea_result.best.fitness, elapsed});
      report.records.push_back({run, variant.name, config.dataset, model, c.k, "generations",
                                static_cast<double>(ea_result.generations), elapsed});
      result.runs.push_back({variant.name, run, std::move(ea_result), final_fitness, ea.candidates.empty() ? graph.node_count() : ea.candidates.size()});
    }
  }
  return result;
}

void write_report_csv(const RunReport& report, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : report.records) {
    out << r.run_id << ',' << csv_field(r.method) << ',' << csv_field(r.dataset) << ',' << r.model << ',' << r.k
        << ',' << r.metric << ',' << format_double(r.value) << ',' << format_double(r.runtime_ms) << '\n';
  }
}

nlohmann::json report_json(const RunReport& report) {
  nlohmann::json j;
  j["version"] = version_string();
  j["config"] = report.config;
  j["summary"] = report.summary;
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : aggregate(report)) {
    j["aggregates"].push_back(
        {{"method", a.method}, {"metric", a.metric}, {"count", a.count}, {"mean", a.mean}, {"std", a.std}});
  }
  return j;
}

std::vector<Aggregate> aggregates_from_json(const nlohmann::json& j) {
  std::vector<Aggregate> out;
  for (const auto& a : j.at("aggregates")) {
    out.push_back({a.at("method").get<std::string>(), a.at("metric").get<std::string>(),
                   a.at("count").get<std::size_t>(), a.at("mean").get<double>(), a.at("std").get<double>()});
  }
  return out;
}

void emit_reports(const RunReport& report, const std::string& csv_path, const std::string& json_path) {
  {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write report CSV '" + csv_path + "'");
    write_report_csv(report, csv);
    if (!csv) throw std::runtime_error("failed writing report CSV '" + csv_path + "'");
  }
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("cannot write report JSON '" + json_path + "'");
  js << report_json(report).dump(2) << '\n';
  if (!js) throw std::runtime_error("failed writing report JSON '" + json_path + "'");
}

nlohmann::json filter_report_json(const FilterReport& report, const Graph& graph) {
  nlohmann::json j;
  j["method"] = report.method;
  j["retained"] = nlohmann::json::array();
  for (NodeId v : report.retained) j["retained"].push_back(graph.label(v));
  j["iterations"] = report.iterations;
  j["final_error_rate"] = report.final_error_rate;
  j["examined_per_iteration"] = report.examined_per_iteration;
  j["target_count"] = report.target_count;
  j["upper_count"] = report.upper_count;
  j["total_simulations"] = report.total_simulations;
  j["complete"] = report.complete;
  j["stop_reason"] = report.stop_reason;
  j["nodes"] = nlohmann::json::array();
  for (const auto& r : report.records) {
    j["nodes"].push_back({{"label", graph.label(r.node)},
                          {"mean", r.mean},
                          {"std", r.std},
                          {"samples", r.samples},
                          {"half_width", r.half_width}});
  }
  return j;
}

std::vector<NodeId> candidates_from_json(const nlohmann::json& j, const Graph& graph) {
  std::vector<NodeId> out;
  for (const auto& label : j.at("retained")) out.push_back(graph.index_of(label.get<Label>()));
  return out;
}

}  // namespace imea
