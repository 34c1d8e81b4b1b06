#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace imea {

using NodeId = std::uint32_t;
using Label = std::int64_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& source = {})
      : std::runtime_error((source.empty() ? "" : source + ":") + "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// Immutable directed graph in compressed (CSR) form. Undirected inputs are
// stored as two arcs, so every algorithm walks a single directed structure.
class Graph {
 public:
  Graph() = default;

  // Builds from arcs over dense indices [0, node_count). Self-loops are
  // dropped and parallel arcs merged. For undirected graphs each pair is
  // mirrored. `labels` may be empty, in which case label(i) == i.
  static Graph from_arcs(std::size_t node_count,
                         std::vector<std::pair<NodeId, NodeId>> arcs,
                         bool directed, std::vector<Label> labels = {});

  std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  // Number of stored arcs; an undirected edge counts twice.
  std::size_t arc_count() const noexcept { return out_targets_.size(); }
  // Number of input edges: arcs for directed graphs, arcs/2 otherwise.
  std::size_t edge_count() const noexcept { return directed_ ? arc_count() : arc_count() / 2; }
  bool directed() const noexcept { return directed_; }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
  bool has_arc(NodeId u, NodeId v) const;

  Label label(NodeId u) const { return labels_.empty() ? static_cast<Label>(u) : labels_[u]; }
  // Throws std::out_of_range for unknown labels.
  NodeId index_of(Label label) const;
  bool has_label(Label label) const;

  // Every stored arc (u, v) in CSR order.
  std::vector<std::pair<NodeId, NodeId>> arcs() const;

 private:
  bool directed_ = true;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<Label> labels_;
  std::unordered_map<Label, NodeId> index_;
};

// SNAP edge list: '#' comment lines, two whitespace-separated integer labels
// per data line. Labels are remapped to dense indices in first-seen order.
Graph load_edgelist(std::istream& in, bool directed);
Graph load_edgelist_file(const std::string& path, bool directed);

// Writes one "u v" line per edge (undirected edges once, with u's label first
// for the lower index) preceded by a comment header.
void write_edgelist(const Graph& graph, std::ostream& out);

// Undirected Barabasi-Albert preferential attachment graph. Starts from
// `attachments` isolated nodes; each new node links to `attachments` distinct
// existing nodes drawn proportionally to degree.
Graph generate_barabasi_albert(std::size_t nodes, std::size_t attachments, std::uint64_t seed);

}  // namespace imea
