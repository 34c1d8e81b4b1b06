#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "imea/centrality.hpp"
#include "imea/diffusion.hpp"
#include "imea/ea.hpp"
#include "imea/embeddings.hpp"
#include "imea/experiment.hpp"
#include "imea/graph.hpp"
#include "imea/node_filter.hpp"

using namespace imea;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

namespace {

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_dir = ".";
  std::string config;
};

struct GraphArgs {
  std::string source;
  bool undirected = false;
};

struct ModelArgs {
  std::string name = "wc";
  double p = 0.01;
  DiffusionModel get() const { return parse_model(name, p); }
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("-g,--graph", g.source, "Edge-list file, or ba:N:M for a generated Barabasi-Albert graph")
      ->required();
  cmd->add_flag("--undirected", g.undirected, "Read the edge list as undirected");
}

void add_model_options(CLI::App* cmd, ModelArgs& m) {
  cmd->add_option("--model", m.name, "Diffusion model: ic or wc")->check(CLI::IsMember({"ic", "wc", "IC", "WC"}));
  cmd->add_option("--p", m.p, "IC activation probability")->check(CLI::Range(0.0, 1.0));
}

Graph load_graph(const GraphArgs& args, std::uint64_t seed) {
  if (args.source.rfind("ba:", 0) == 0) {
    std::size_t n = 0, m = 0;
    char sep = 0;
    std::istringstream in(args.source.substr(3));
    if (!(in >> n >> sep >> m) || sep != ':') {
      throw std::invalid_argument("expected ba:N:M, got '" + args.source + "'");
    }
    return generate_barabasi_albert(n, m, seed);
  }
  return load_edgelist_file(args.source, !args.undirected);
}

std::string dataset_name(const GraphArgs& args) {
  if (args.source.rfind("ba:", 0) == 0) return args.source;
  return fs::path(args.source).filename().string();
}

std::string in_out_dir(const Global& g, const std::string& path, const std::string& fallback) {
  if (!path.empty()) return path;
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / fallback).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<NodeId> resolve_labels(const Graph& graph, const std::vector<Label>& labels) {
  std::vector<NodeId> out;
  for (Label l : labels) {
    if (!graph.has_label(l)) throw std::invalid_argument("node " + std::to_string(l) + " is not in the graph");
    out.push_back(graph.index_of(l));
  }
  return out;
}

nlohmann::json labels_json(const Graph& graph, const std::vector<NodeId>& nodes) {
  auto j = nlohmann::json::array();
  for (NodeId v : nodes) j.push_back(graph.label(v));
  return j;
}

// key=value lines become --key=value arguments placed right after the
// subcommand name, so anything given on the command line wins.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key=value", path);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(number, "empty key", path);
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

struct EAArgs {
  std::size_t k = 10;
  std::size_t population = 100;
  std::size_t generations = 100;
  double crossover = 1.0;
  double mutation_rate = 0.1;
  std::size_t tournament = 5;
  std::size_t elites = 1;
  std::size_t patience = 0;
  std::string fitness = "mc-max-hop";
  std::size_t simulations = 100;
  std::size_t max_hop = 3;
  std::string init = "random";
  double smart_fraction = 0.5;
  std::string init_metric = "degree";
  std::string mutation = "global-random";
  std::vector<std::string> bandit_pool;
  std::size_t bandit_window = 100;
  std::size_t embedding_neighbors = 10;
  std::size_t spread_cache_simulations = 100;

  EAConfig config(const DiffusionModel& model, std::uint64_t seed, unsigned threads) const {
    EAConfig c;
    c.k = k;
    c.population_size = population;
    c.max_generations = generations;
    c.crossover_rate = crossover;
    c.mutation_rate = mutation_rate;
    c.tournament_size = tournament;
    c.num_elites = elites;
    c.patience = patience;
    c.model = model;
    c.fitness = {parse_fitness_method(fitness), simulations, max_hop};
    c.init = {parse_init_strategy(init), smart_fraction, parse_centrality(init_metric)};
    if (mutation == "bandit") {
      c.mutation.use_bandit = true;
      if (!bandit_pool.empty()) {
        c.mutation.pool.clear();
        for (const auto& s : bandit_pool) c.mutation.pool.push_back(parse_mutation_strategy(s));
      }
    } else {
      c.mutation.single = parse_mutation_strategy(mutation);
    }
    c.mutation.bandit_window = bandit_window;
    c.mutation.embedding_neighbors = embedding_neighbors;
    c.spread_cache_simulations = spread_cache_simulations;
    c.master_seed = seed;
    c.threads = threads;
    validate(c);
    return c;
  }
};

void add_ea_options(CLI::App* cmd, EAArgs& a) {
  cmd->add_option("-k,--k", a.k, "Seed-set size");
  cmd->add_option("--population", a.population, "Population size");
  cmd->add_option("--generations", a.generations, "Maximum generations");
  cmd->add_option("--crossover-rate", a.crossover, "Crossover probability");
  cmd->add_option("--mutation-rate", a.mutation_rate, "Per-position mutation probability");
  cmd->add_option("--tournament", a.tournament, "Tournament size");
  cmd->add_option("--elites", a.elites, "Elites kept per generation");
  cmd->add_option("--patience", a.patience, "Generations without improvement before stopping (0: 10% of generations)");
  cmd->add_option("--fitness", a.fitness, "mc, mc-max-hop, two-hop or exact");
  cmd->add_option("--simulations", a.simulations, "Simulations per fitness evaluation");
  cmd->add_option("--max-hop", a.max_hop, "Hop limit for mc-max-hop");
  cmd->add_option("--init", a.init,
                  "random, single-smart, degree-random, degree-random-ranked or community-degree");
  cmd->add_option("--smart-fraction", a.smart_fraction, "Share of smart individuals");
  cmd->add_option("--init-metric", a.init_metric, "Centrality for single-smart init");
  cmd->add_option("--mutation", a.mutation, "A mutation strategy, or bandit");
  cmd->add_option("--bandit-pool", a.bandit_pool, "Strategies the bandit chooses from (default: all)");
  cmd->add_option("--bandit-window", a.bandit_window, "Bandit sliding-window size");
  cmd->add_option("--embedding-neighbors", a.embedding_neighbors, "Neighbours for embedding mutations");
  cmd->add_option("--spread-cache-simulations", a.spread_cache_simulations,
                  "Simulations behind the per-node spread cache");
}

// ---------------------------------------------------------------------------

void cmd_generate(const Global& g, std::size_t nodes, std::size_t edges, const std::string& output) {
  Graph graph = generate_barabasi_albert(nodes, edges, g.seed);
  const std::string path =
      in_out_dir(g, output, "ba_" + std::to_string(nodes) + "_" + std::to_string(edges) + ".txt");
  auto out = open_out(path);
  write_edgelist(graph, out);
  std::cerr << "wrote " << graph.node_count() << " nodes, " << graph.edge_count() << " edges to " << path << "\n";
}

void cmd_spread(const Global& g, const GraphArgs& ga, const ModelArgs& ma, const std::vector<Label>& seed_labels,
                const std::vector<std::string>& methods, std::size_t simulations, std::size_t max_hop,
                const std::string& output) {
  Graph graph = load_graph(ga, g.seed);
  const auto model = ma.get();
  const auto seeds = resolve_labels(graph, seed_labels);
  validate_seeds(graph, seeds);
  std::ostringstream csv;
  csv << "method,mean,std,runtime_ms\n";
  for (const auto& name : methods) {
    const auto method = parse_fitness_method(name);
    const auto t0 = Clock::now();
    SpreadEstimate est;
    switch (method) {
      case FitnessMethod::mc:
      case FitnessMethod::mc_max_hop: {
        SimulationOptions opt;
        opt.simulations = simulations;
        opt.max_hop = method == FitnessMethod::mc ? kUnboundedHops : max_hop;
        opt.master_seed = g.seed;
        opt.threads = g.threads;
        est = estimate_spread(graph, model, seeds, opt);
        break;
      }
      case FitnessMethod::two_hop:
        est.mean = two_hop_spread(graph, model, seeds);
        break;
      case FitnessMethod::exact:
        est.mean = exact_spread(graph, model, seeds);
        break;
    }
    char row[256];
    std::snprintf(row, sizeof row, "%s,%.17g,%.17g,%.3f\n", name.c_str(), est.mean, est.std, ms_since(t0));
    csv << row;
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    open_out(output) << csv.str();
  }
}

void cmd_centrality(const Global& g, const GraphArgs& ga, const std::string& metric, bool symmetrize,
                    long budget_ms, const std::string& output) {
  Graph graph = load_graph(ga, g.seed);
  CentralityOptions opt;
  opt.symmetrize = symmetrize;
  opt.threads = g.threads;
  if (budget_ms > 0) opt.budget = std::chrono::milliseconds(budget_ms);
  auto scores = centrality(graph, parse_centrality(metric), opt);
  std::ostringstream csv;
  csv << "node,score\n";
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    char row[96];
    std::snprintf(row, sizeof row, "%lld,%.17g\n", static_cast<long long>(graph.label(v)), scores.values[v]);
    csv << row;
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    open_out(output) << csv.str();
  }
}

void cmd_optimize(const Global& g, const GraphArgs& ga, const ModelArgs& ma, const EAArgs& ea,
                  const std::string& candidates_path, const std::string& embeddings_path,
                  const std::string& log_path, const std::string& bandit_log_path, const std::string& result_path) {
  Graph graph = load_graph(ga, g.seed);
  EAConfig config = ea.config(ma.get(), g.seed, g.threads);
  if (!candidates_path.empty()) {
    std::ifstream in(candidates_path);
    if (!in) throw std::runtime_error("cannot read candidates file '" + candidates_path + "'");
    config.candidates = candidates_from_json(nlohmann::json::parse(in), graph);
  }
  EmbeddingTable embeddings;
  EAHooks hooks;
  if (!embeddings_path.empty()) {
    embeddings = load_embeddings_file(embeddings_path, graph);
    hooks.embeddings = &embeddings;
    if (embeddings.missing_count() > 0) {
      std::cerr << "warning: " << embeddings.missing_count() << " nodes have no embedding\n";
    }
  }

  const auto t0 = Clock::now();
  EAResult result = evolve(graph, config, hooks);
  const double runtime = ms_since(t0);

  auto log = open_out(in_out_dir(g, log_path, "generations.csv"));
  log << "generation,best,mean,std,elapsed_ms\n";
  for (const auto& s : result.log) {
    char row[192];
    std::snprintf(row, sizeof row, "%zu,%.17g,%.17g,%.17g,%.3f\n", s.generation, s.best, s.mean, s.std, s.elapsed_ms);
    log << row;
  }

  if (!bandit_log_path.empty()) {
    auto out = open_out(bandit_log_path);
    out << "generation,arm,strategy,pulls,window_sum\n";
    for (const auto& snap : result.bandit_log) {
      for (std::size_t a = 0; a < snap.pulls.size(); ++a) {
        out << snap.generation << "," << a << "," << to_string(config.mutation.pool[a]) << "," << snap.pulls[a] << ","
            << snap.window_sums[a] << "\n";
      }
    }
  }

  nlohmann::json j;
  j["seed_set"] = labels_json(graph, result.best.nodes);
  j["fitness"] = result.best.fitness.value_or(0.0);
  j["stop_reason"] = result.stop_reason;
  j["generations"] = result.generations;
  j["history"] = result.history;
  j["fitness_evaluations"] = result.fitness_evaluations;
  j["phase_ms"] = result.phase_ms;
  j["runtime_ms"] = runtime;
  j["config"] = {{"graph", ga.source},
                 {"model", config.model.name()},
                 {"p", config.model.p},
                 {"k", config.k},
                 {"population_size", config.population_size},
                 {"max_generations", config.max_generations},
                 {"crossover_rate", config.crossover_rate},
                 {"mutation_rate", config.mutation_rate},
                 {"tournament_size", config.tournament_size},
                 {"num_elites", config.num_elites},
                 {"patience", config.effective_patience()},
                 {"fitness", to_string(config.fitness.method)},
                 {"simulations", config.fitness.simulations},
                 {"max_hop", config.fitness.max_hop},
                 {"init", to_string(config.init.strategy)},
                 {"smart_fraction", config.init.smart_fraction},
                 {"mutation", ea.mutation},
                 {"candidates", config.candidates.empty() ? graph.node_count() : config.candidates.size()},
                 {"seed", g.seed}};
  j["version"] = version_string();
  auto out = open_out(in_out_dir(g, result_path, "result.json"));
  out << j.dump(2) << "\n";
  std::cout << j["seed_set"].dump() << " fitness " << j["fitness"].get<double>() << " (" << result.stop_reason
            << ")\n";
}

struct FilterArgs {
  std::string method = "best-spread";
  std::size_t k = 10;
  std::size_t threshold = 1;
  BestSpreadParams params;
  std::string output;
};

void cmd_filter(const Global& g, const GraphArgs& ga, const ModelArgs& ma, FilterArgs fa) {
  Graph graph = load_graph(ga, g.seed);
  FilterReport report;
  if (fa.method == "min-degree") {
    report = filter_min_degree(graph, fa.threshold);
  } else {
    fa.params.master_seed = g.seed;
    fa.params.threads = g.threads;
    report = filter_best_spread(graph, ma.get(), fa.k, fa.params);
  }
  require_candidates(report, fa.k);
  auto out = open_out(in_out_dir(g, fa.output, "filter.json"));
  out << filter_report_json(report, graph).dump(2) << "\n";
  std::cerr << report.method << ": kept " << report.retained.size() << " of " << graph.node_count() << " nodes"
            << (report.complete ? "" : " (incomplete: simulation budget exhausted)") << "\n";
}

void cmd_correlate(const Global& g, const GraphArgs& ga, const ModelArgs& ma, std::size_t k, std::size_t sets,
                   std::size_t mc_simulations, std::size_t max_hop) {
  Graph graph = load_graph(ga, g.seed);
  CorrelationConfig c;
  c.dataset = dataset_name(ga);
  c.model = ma.get();
  c.k = k;
  c.seed_sets = sets;
  c.master_seed = g.seed;
  c.threads = g.threads;
  c.methods = {{"mc", FitnessMethod::mc, mc_simulations, kUnboundedHops},
               {"mc-max-hop", FitnessMethod::mc_max_hop, mc_simulations, max_hop},
               {"two-hop", FitnessMethod::two_hop, 0, 2}};
  auto r = run_correlation_study(graph, c);
  auto sets_json = nlohmann::json::array();
  for (const auto& s : r.seed_sets) sets_json.push_back(labels_json(graph, s));
  r.report.summary["seed_sets"] = sets_json;
  emit_reports(r.report, in_out_dir(g, "", "correlation.csv"), in_out_dir(g, "", "correlation.json"));
  for (const auto& [name, value] : r.correlation) {
    std::cout << name << ": r = " << (value ? std::to_string(*value) : std::string("undefined")) << ", "
              << r.total_runtime_ms[name] << " ms\n";
  }
}

void cmd_compare(const Global& g, const GraphArgs& ga, const ModelArgs& ma, const EAArgs& ea,
                 const std::vector<std::string>& variants, std::size_t repetitions, std::size_t final_simulations,
                 std::size_t threshold) {
  Graph graph = load_graph(ga, g.seed);
  ComparisonConfig c;
  c.dataset = dataset_name(ga);
  c.repetitions = repetitions;
  c.final_simulations = final_simulations;
  c.master_seed = g.seed;
  c.threads = g.threads;
  const EAConfig base = ea.config(ma.get(), g.seed, g.threads);
  for (const auto& name : variants) {
    EAVariant v;
    v.name = name;
    v.config = base;
    if (name == "min-degree") {
      v.filter = FilterKind::min_degree;
      v.min_degree = threshold;
    } else if (name == "best-spread") {
      v.filter = FilterKind::best_spread;
    } else if (name == "bandit") {
      v.config.mutation.use_bandit = true;
    } else if (name != "basic") {
      v.config.init.strategy = parse_init_strategy(name);
    }
    c.variants.push_back(v);
  }
  auto r = run_ea_comparison(graph, c);
  emit_reports(r.report, in_out_dir(g, "", "comparison.csv"), in_out_dir(g, "", "comparison.json"));
  for (const auto& a : aggregate(r.report)) {
    if (a.metric == "best_fitness") std::cout << a.method << ": " << a.mean << " +- " << a.std << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence maximization with evolutionary search"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Global global;
  app.add_option("--seed", global.seed, "Master random seed");
  app.add_option("--threads", global.threads, "Worker threads (0: all cores)");
  app.add_option("--out-dir", global.out_dir, "Directory for default output files");
  app.add_option("--config", global.config, "key=value file with option defaults");

  GraphArgs graph;
  ModelArgs model;

  auto* generate = app.add_subcommand("generate", "Write a Barabasi-Albert graph as an edge list");
  std::size_t ba_nodes = 1000, ba_edges = 3;
  std::string generate_out;
  generate->add_option("-n,--nodes", ba_nodes, "Node count");
  generate->add_option("-m,--edges", ba_edges, "Edges attached per new node");
  generate->add_option("-o,--output", generate_out, "Output path");

  auto* spread = app.add_subcommand("spread", "Estimate the spread of a seed set");
  add_graph_options(spread, graph);
  add_model_options(spread, model);
  std::vector<Label> seed_labels;
  std::vector<std::string> methods{"mc", "mc-max-hop", "two-hop"};
  std::size_t simulations = 10000, max_hop = 2;
  std::string spread_out;
  spread->add_option("-s,--seeds", seed_labels, "Seed node labels")->required();
  spread->add_option("--method", methods, "mc, mc-max-hop, two-hop, exact")->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  spread->add_option("--simulations", simulations, "Monte Carlo simulations");
  spread->add_option("--max-hop", max_hop, "Hop limit for mc-max-hop");
  spread->add_option("-o,--output", spread_out, "CSV path (default: stdout)");

  auto* central = app.add_subcommand("centrality", "Score nodes by a centrality metric");
  add_graph_options(central, graph);
  std::string metric = "degree";
  bool symmetrize = false;
  long budget_ms = 0;
  std::string central_out;
  central->add_option("--metric", metric, "betweenness, closeness, degree, eigenvector or katz");
  central->add_flag("--symmetrize", symmetrize, "Treat arcs as undirected edges");
  central->add_option("--budget-ms", budget_ms, "Abort after this many milliseconds (0: no limit)");
  central->add_option("-o,--output", central_out, "CSV path (default: stdout)");

  auto* optimize = app.add_subcommand("optimize", "Search for a seed set with the evolutionary algorithm");
  add_graph_options(optimize, graph);
  add_model_options(optimize, model);
  EAArgs ea;
  add_ea_options(optimize, ea);
  std::string candidates, embeddings, log_path, bandit_log, result_path;
  optimize->add_option("--candidates", candidates, "Filter JSON restricting the candidate nodes");
  optimize->add_option("--embeddings", embeddings, "Node embeddings (word2vec text format)");
  optimize->add_option("--log", log_path, "Per-generation CSV (default: <out-dir>/generations.csv)");
  optimize->add_option("--bandit-log", bandit_log, "Per-generation bandit CSV");
  optimize->add_option("--result", result_path, "Result JSON (default: <out-dir>/result.json)");

  auto* filter = app.add_subcommand("filter", "Reduce the candidate node set");
  add_graph_options(filter, graph);
  add_model_options(filter, model);
  FilterArgs fa;
  filter->add_option("--method", fa.method, "min-degree or best-spread")
      ->check(CLI::IsMember({"min-degree", "best-spread"}));
  filter->add_option("-k,--k", fa.k, "Seed-set size");
  filter->add_option("--threshold", fa.threshold, "Minimum out-degree");
  filter->add_option("--initial-error-rate", fa.params.initial_error_rate, "Starting relative CI half-width");
  filter->add_option("--error-decrement", fa.params.error_decrement, "Error-rate decrement per iteration");
  filter->add_option("--space-lower", fa.params.space_lower, "Lower bound on C(n, k)");
  filter->add_option("--space-upper", fa.params.space_upper, "Upper bound on C(n, k)");
  filter->add_option("--batch", fa.params.batch_size, "Simulations per sampling batch");
  filter->add_option("--max-hop", fa.params.max_hop, "Hop limit for node sampling");
  filter->add_option("--max-simulations", fa.params.max_total_simulations, "Total simulation budget (0: none)");
  filter->add_option("-o,--output", fa.output, "Report JSON (default: <out-dir>/filter.json)");

  auto* correlate = app.add_subcommand("correlate", "Compare spread approximations against Monte Carlo");
  add_graph_options(correlate, graph);
  add_model_options(correlate, model);
  std::size_t corr_k = 5, corr_sets = 100, corr_sims = 10000, corr_hop = 2;
  correlate->add_option("-k,--k", corr_k, "Seed-set size");
  correlate->add_option("--sets", corr_sets, "Random seed sets");
  correlate->add_option("--simulations", corr_sims, "Simulations for the Monte Carlo methods");
  correlate->add_option("--max-hop", corr_hop, "Hop limit for mc-max-hop");

  auto* compare = app.add_subcommand("compare", "Run EA variants repeatedly and compare them");
  add_graph_options(compare, graph);
  add_model_options(compare, model);
  EAArgs cmp_ea;
  add_ea_options(compare, cmp_ea);
  std::vector<std::string> variants{"basic", "best-spread"};
  std::size_t repetitions = 10, final_sims = 10000, cmp_threshold = 1;
  compare->add_option("--variants", variants,
                      "basic, min-degree, best-spread, bandit, or an init strategy name")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  compare->add_option("--repetitions", repetitions, "Runs per variant");
  compare->add_option("--final-simulations", final_sims, "Simulations for the common final evaluation");
  compare->add_option("--threshold", cmp_threshold, "Minimum out-degree for the min-degree variant");

  std::vector<std::string> args(argv, argv + argc);
  try {
    auto flag = std::find_if(args.begin() + 1, args.end(),
                             [](const std::string& a) { return a == "--config" || a.rfind("--config=", 0) == 0; });
    if (flag != args.end()) {
      std::string path = *flag == "--config" ? (flag + 1 != args.end() ? *(flag + 1) : "") : flag->substr(9);
      if (path.empty()) throw CLI::ArgumentMismatch("--config needs a file");
      auto extra = config_arguments(path);
      auto sub = std::find_if(args.begin() + 1, args.end(), [&](const std::string& a) {
        for (const auto* s : app.get_subcommands({})) {
          if (s->get_name() == a) return true;
        }
        return false;
      });
      if (sub != args.end()) args.insert(sub + 1, extra.begin(), extra.end());
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*generate) {
      cmd_generate(global, ba_nodes, ba_edges, generate_out);
    } else if (*spread) {
      cmd_spread(global, graph, model, seed_labels, methods, simulations, max_hop, spread_out);
    } else if (*central) {
      cmd_centrality(global, graph, metric, symmetrize, budget_ms, central_out);
    } else if (*optimize) {
      cmd_optimize(global, graph, model, ea, candidates, embeddings, log_path, bandit_log, result_path);
    } else if (*filter) {
      cmd_filter(global, graph, model, fa);
    } else if (*correlate) {
      cmd_correlate(global, graph, model, corr_k, corr_sets, corr_sims, corr_hop);
    } else if (*compare) {
      cmd_compare(global, graph, model, cmp_ea, variants, repetitions, final_sims, cmp_threshold);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
