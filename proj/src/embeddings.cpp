#include "imea/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace imea {

EmbeddingTable::EmbeddingTable(std::size_t node_count, std::size_t dimension)
    : dimension_(dimension), values_(node_count * dimension, 0.0), present_(node_count, false) {}

std::span<const double> EmbeddingTable::vector(NodeId node) const {
  if (!has(node)) throw MissingEmbedding(node);
  return {values_.data() + static_cast<std::size_t>(node) * dimension_, dimension_};
}

void EmbeddingTable::set(NodeId node, std::span<const double> values) {
  if (node >= present_.size()) throw std::out_of_range("embedding node out of range");
  if (values.size() != dimension_) throw std::invalid_argument("embedding dimension mismatch");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("embedding entry is not finite");
  }
  std::copy(values.begin(), values.end(), values_.begin() + static_cast<std::ptrdiff_t>(node * dimension_));
  if (!present_[node]) {
    present_[node] = true;
    ++embedded_;
  }
}

EmbeddingTable load_embeddings(std::istream& in, const Graph& graph) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0, dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream header(line);
    if (!(header >> rows >> dim) || dim == 0) throw ParseError(line_no, "expected header 'N d'");
    break;
  }
  if (dim == 0) throw ParseError(line_no, "missing embedding header");

  EmbeddingTable table(graph.node_count(), dim);
  std::vector<double> values(dim);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++seen;
    std::istringstream fields(line);
    Label label = 0;
    if (!(fields >> label)) throw ParseError(line_no, "expected integer node label");
    std::size_t count = 0;
    double v = 0.0;
    while (fields >> v) {
      if (count < dim) values[count] = v;
      ++count;
    }
    if (!fields.eof()) throw ParseError(line_no, "non-numeric embedding entry");
    if (count != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " values, found " + std::to_string(count));
    }
    if (!graph.has_label(label)) {
      std::cerr << "warning: embedding for unknown node " << label << " skipped\n";
      table.note_skipped();
      continue;
    }
    try {
      table.set(graph.index_of(label), values);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (seen != rows) {
    throw ParseError(line_no, "header declares " + std::to_string(rows) + " rows, found " + std::to_string(seen));
  }
  return table;
}

EmbeddingTable load_embeddings_file(const std::string& path, const Graph& graph) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings '" + path + "'");
  try {
    return load_embeddings(in, graph);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

std::vector<NodeId> nearest_embedding_neighbors(const EmbeddingTable& table, NodeId node, std::size_t m) {
  const auto origin = table.vector(node);
  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(table.embedded_count());
  for (NodeId other = 0; other < table.node_count(); ++other) {
    if (other == node || !table.has(other)) continue;
    const auto v = table.vector(other);
    double d2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double diff = v[i] - origin[i];
      d2 += diff * diff;
    }
    ranked.emplace_back(d2, other);
  }
  const std::size_t take = std::min(m, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end());
  std::vector<NodeId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(ranked[i].second);
  return out;
}

}  // namespace imea
