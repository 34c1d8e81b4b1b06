#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "imea/experiment.hpp"

using namespace imea;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n' ? 1 : 0;
  return n;
}

RunReport sample_report() {
  RunReport r;
  for (std::size_t run = 0; run < 3; ++run) {
    for (const char* m : {"alpha", "beta"}) {
      r.records.push_back({run, m, "toy", "WC", 5, "best_fitness", 1.0 / 3.0 + static_cast<double>(run) * 0.1,
                           static_cast<double>(run)});
    }
  }
  r.config = {{"k", 5}};
  return r;
}

}  // namespace

TEST_CASE("empty report writes only the header") {
  std::ostringstream out;
  write_report_csv(RunReport{}, out);
  CHECK(out.str() == std::string(kReportCsvHeader) + "\n");
}

TEST_CASE("one CSV row per record") {
  std::ostringstream out;
  write_report_csv(sample_report(), out);
  CHECK(count_lines(out.str()) == 7);
  CHECK(out.str().rfind(kReportCsvHeader, 0) == 0);
}

TEST_CASE("aggregates match recomputation from rows") {
  auto r = sample_report();
  auto aggs = aggregate(r);
  REQUIRE(aggs.size() == 2);
  CHECK(aggs[0].method == "alpha");
  CHECK(aggs[1].method == "beta");
  for (const auto& a : aggs) {
    std::vector<double> vals;
    for (const auto& rec : r.records) {
      if (rec.method == a.method && rec.metric == a.metric) vals.push_back(rec.value);
    }
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double ss = 0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    CHECK(a.count == 3);
    CHECK(a.mean == doctest::Approx(mean));
    CHECK(a.std == doctest::Approx(std::sqrt(ss / 2.0)));
  }
}

TEST_CASE("JSON reload reproduces aggregates exactly") {
  auto r = sample_report();
  auto j = nlohmann::json::parse(report_json(r).dump());
  auto back = aggregates_from_json(j);
  auto orig = aggregate(r);
  REQUIRE(back.size() == orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i) {
    CHECK(back[i].method == orig[i].method);
    CHECK(back[i].count == orig[i].count);
    CHECK(back[i].mean == orig[i].mean);
    CHECK(back[i].std == orig[i].std);
  }
  CHECK(j.contains("version"));
  CHECK(j["config"]["k"] == 5);
}

TEST_CASE("emit_reports writes files and names failing paths") {
  const auto dir = std::filesystem::temp_directory_path() / "imea_emit_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "r.csv").string();
  const auto json = (dir / "r.json").string();
  emit_reports(sample_report(), csv, json);
  std::ifstream in(csv);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(count_lines(buf.str()) == 7);
  CHECK(std::filesystem::exists(json));
  const std::string bad = (dir / "missing" / "x.csv").string();
  try {
    emit_reports(sample_report(), bad, json);
    FAIL("expected an IO error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("random seed sets are reproducible and valid") {
  Graph g = generate_barabasi_albert(100, 2, 1);
  auto a = random_seed_sets(g, 20, 5, 3);
  CHECK(a == random_seed_sets(g, 20, 5, 3));
  CHECK(a != random_seed_sets(g, 20, 5, 4));
  for (const auto& s : a) {
    CHECK(std::set<NodeId>(s.begin(), s.end()).size() == 5);
  }
}

TEST_CASE("correlation of a method with itself is one") {
  Graph g = generate_barabasi_albert(200, 2, 2);
  CorrelationConfig c;
  c.seed_sets = 20;
  c.methods = {{"MC", FitnessMethod::mc, 200, kUnboundedHops}, {"MC-copy", FitnessMethod::mc, 200, kUnboundedHops}};
  auto r = run_correlation_study(g, c);
  REQUIRE(r.correlation.at("MC-copy").has_value());
  CHECK(*r.correlation.at("MC-copy") == doctest::Approx(1.0));
  CHECK(r.spreads.at("MC") == r.spreads.at("MC-copy"));
  CHECK(r.seed_sets.size() == 20);
  CHECK(r.report.records.size() == 40);
}

TEST_CASE("degenerate spreads omit the correlation") {
  // No arcs: every seed set spreads to exactly k.
  Graph g = Graph::from_arcs(30, {{0, 1}}, true);
  CorrelationConfig c;
  c.seed_sets = 10;
  c.k = 3;
  c.model = DiffusionModel::ic(0.0);
  c.methods = {{"MC", FitnessMethod::mc, 50, kUnboundedHops}, {"2-hop", FitnessMethod::two_hop, 0, 2}};
  auto r = run_correlation_study(g, c);
  CHECK_FALSE(r.correlation.at("2-hop").has_value());
}

TEST_CASE("comparison: deterministic fitness gives zero spread across runs") {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId i = 1; i < 12; ++i) arcs.emplace_back(0, i);
  Graph g = Graph::from_arcs(12, arcs, true);
  EAVariant v;
  v.name = "basic";
  v.config.k = 1;
  v.config.population_size = 10;
  v.config.max_generations = 30;
  v.config.patience = 30;
  v.config.model = DiffusionModel::ic(1.0);
  v.config.fitness = {FitnessMethod::exact, 0, 0};
  ComparisonConfig c;
  c.variants = {v};
  c.repetitions = 10;
  c.final_simulations = 100;
  auto r = run_ea_comparison(g, c);
  CHECK(r.runs.size() == 10);
  for (const auto& a : aggregate(r.report)) {
    if (a.metric == "best_fitness") {
      CHECK(a.count == 10);
      CHECK(a.std == 0.0);
      CHECK(a.mean == 12.0);
    }
  }
}

TEST_CASE("comparison CSV bodies are reproducible") {
  Graph g = generate_barabasi_albert(150, 2, 3);
  EAVariant v;
  v.name = "basic";
  v.config.k = 3;
  v.config.population_size = 10;
  v.config.max_generations = 4;
  v.config.fitness = {FitnessMethod::two_hop, 0, 2};
  EAVariant f = v;
  f.name = "min-degree";
  f.filter = FilterKind::min_degree;
  f.min_degree = 3;
  ComparisonConfig c;
  c.variants = {v, f};
  c.repetitions = 3;
  c.final_simulations = 200;
  c.master_seed = 8;
  auto strip_runtime = [](const RunReport& rep) {
    std::ostringstream out;
    for (const auto& rec : rep.records) out << rec.run_id << rec.method << rec.metric << rec.value << "\n";
    return out.str();
  };
  auto a = run_ea_comparison(g, c);
  auto b = run_ea_comparison(g, c);
  CHECK(strip_runtime(a.report) == strip_runtime(b.report));
  for (const auto& run : a.runs) {
    if (run.variant == "min-degree") {
      for (NodeId n : run.result.best.nodes) CHECK(g.out_degree(n) >= 3);
    }
  }
}

TEST_CASE("filter JSON feeds candidates back in") {
  std::stringstream in("10 20\n20 30\n30 10\n40 10\n");
  Graph g = load_edgelist(in, true);
  auto report = filter_min_degree(g, 1);
  auto j = nlohmann::json::parse(filter_report_json(report, g).dump());
  CHECK(candidates_from_json(j, g) == report.retained);
  j["retained"].push_back(999);
  CHECK_THROWS(candidates_from_json(j, g));
}
