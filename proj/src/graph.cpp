#include "imea/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace imea {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs, bool by_source,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++offsets[(by_source ? u : v) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(arcs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // arcs are sorted by (u, v), so both directions come out sorted per node.
  for (const auto& [u, v] : arcs) {
    if (by_source) {
      targets[cursor[u]++] = v;
    } else {
      targets[cursor[v]++] = u;
    }
  }
}

bool parse_label(std::string_view token, Label& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Graph Graph::from_arcs(std::size_t node_count, std::vector<std::pair<NodeId, NodeId>> arcs,
                       bool directed, std::vector<Label> labels) {
  if (!labels.empty() && labels.size() != node_count) {
    throw std::invalid_argument("label count does not match node count");
  }
  std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
  for (const auto& [u, v] : arcs) {
    if (u >= node_count || v >= node_count) throw std::out_of_range("arc endpoint out of range");
  }
  if (!directed) {
    const std::size_t m = arcs.size();
    arcs.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) arcs.emplace_back(arcs[i].second, arcs[i].first);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.directed_ = directed;
  build_csr(node_count, arcs, true, g.out_offsets_, g.out_targets_);
  build_csr(node_count, arcs, false, g.in_offsets_, g.in_sources_);
  g.labels_ = std::move(labels);
  g.index_.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) g.index_.emplace(g.label(static_cast<NodeId>(i)), static_cast<NodeId>(i));
  return g;
}

bool Graph::has_arc(NodeId u, NodeId v) const {
  auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

NodeId Graph::index_of(Label label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw std::out_of_range("unknown node label " + std::to_string(label));
  return it->second;
}

bool Graph::has_label(Label label) const { return index_.contains(label); }

std::vector<std::pair<NodeId, NodeId>> Graph::arcs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(arc_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

Graph load_edgelist(std::istream& in, bool directed) {
  std::unordered_map<Label, NodeId> index;
  std::vector<Label> labels;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  auto intern = [&](Label l) {
    auto [it, inserted] = index.emplace(l, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(l);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (b.empty()) throw ParseError(line_no, "expected two node labels");
    if (fields >> extra) throw ParseError(line_no, "unexpected token '" + extra + "'");
    Label la = 0, lb = 0;
    if (!parse_label(a, la)) throw ParseError(line_no, "non-integer label '" + a + "'");
    if (!parse_label(b, lb)) throw ParseError(line_no, "non-integer label '" + b + "'");
    if (la == lb) {
      // Self-loops still register the node.
      intern(la);
      continue;
    }
    NodeId u = intern(la);
    NodeId v = intern(lb);
    arcs.emplace_back(u, v);
  }
  if (arcs.empty()) throw std::runtime_error("edge list contains no edges");
  const std::size_t n = labels.size();
  return Graph::from_arcs(n, std::move(arcs), directed, std::move(labels));
}

Graph load_edgelist_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  try {
    return load_edgelist(in, directed);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

void write_edgelist(const Graph& graph, std::ostream& out) {
  out << "# " << (graph.directed() ? "Directed" : "Undirected") << " graph\n";
  out << "# Nodes: " << graph.node_count() << " Edges: " << graph.edge_count() << "\n";
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    for (NodeId v : graph.out_neighbors(u)) {
      if (!graph.directed() && v < u) continue;
      out << graph.label(u) << '\t' << graph.label(v) << '\n';
    }
  }
}

Graph generate_barabasi_albert(std::size_t nodes, std::size_t attachments, std::uint64_t seed) {
  if (attachments < 1 || attachments >= nodes) {
    throw std::invalid_argument("Barabasi-Albert requires 1 <= attachments < nodes");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve((nodes - attachments) * attachments);
  // Each node appears once per incident edge, so uniform picks are
  // degree-proportional.
  std::vector<NodeId> repeated;
  repeated.reserve(2 * (nodes - attachments) * attachments);

  std::vector<NodeId> targets(attachments);
  for (std::size_t i = 0; i < attachments; ++i) targets[i] = static_cast<NodeId>(i);

  std::unordered_set<NodeId> picked;
  for (std::size_t source = attachments; source < nodes; ++source) {
    const auto s = static_cast<NodeId>(source);
    for (NodeId t : targets) arcs.emplace_back(s, t);
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), attachments, s);

    picked.clear();
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (targets.size() < attachments) {
      NodeId t = repeated[pick(rng)];
      if (picked.insert(t).second) targets.push_back(t);
    }
  }
  return Graph::from_arcs(nodes, std::move(arcs), /*directed=*/false);
}

}  // namespace imea
