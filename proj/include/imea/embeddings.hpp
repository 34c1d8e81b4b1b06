#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "imea/graph.hpp"

namespace imea {

class MissingEmbedding : public std::runtime_error {
 public:
  explicit MissingEmbedding(NodeId node)
      : std::runtime_error("node " + std::to_string(node) + " has no embedding"), node_(node) {}
  NodeId node() const noexcept { return node_; }

 private:
  NodeId node_;
};

// Per-node feature vectors (e.g. node2vec output) indexed by dense node id.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t node_count, std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t node_count() const noexcept { return present_.size(); }
  bool has(NodeId node) const { return node < present_.size() && present_[node]; }
  std::span<const double> vector(NodeId node) const;
  void set(NodeId node, std::span<const double> values);

  std::size_t embedded_count() const noexcept { return embedded_; }
  std::size_t missing_count() const noexcept { return present_.size() - embedded_; }
  // Rows whose label is not a node of the graph; they are skipped on load.
  std::size_t skipped_rows() const noexcept { return skipped_; }
  void note_skipped() noexcept { ++skipped_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<double> values_;
  std::vector<bool> present_;
  std::size_t embedded_ = 0;
  std::size_t skipped_ = 0;
};

// word2vec text format: header "N d", then N rows "label v1 ... vd".
EmbeddingTable load_embeddings(std::istream& in, const Graph& graph);
EmbeddingTable load_embeddings_file(const std::string& path, const Graph& graph);

// The m embedded nodes nearest to `node` by Euclidean distance, excluding
// `node` itself; ties go to the lower index. Throws MissingEmbedding.
std::vector<NodeId> nearest_embedding_neighbors(const EmbeddingTable& table, NodeId node, std::size_t m);

}  // namespace imea
