#pragma once

#include <cstdint>
#include <vector>

#include "imea/graph.hpp"

namespace imea {

struct CommunityPartition {
  std::vector<std::uint32_t> assignment;  // community id per node
  std::vector<std::size_t> sizes;         // node count per community id

  std::size_t community_count() const noexcept { return sizes.size(); }
};

// Louvain modularity optimisation (resolution 1) on the symmetrized graph.
// Community ids are numbered by the lowest node index they contain.
CommunityPartition detect_communities(const Graph& graph, std::uint64_t seed = 0);

// Newman modularity of a partition on the symmetrized, unweighted graph.
double modularity(const Graph& graph, const std::vector<std::uint32_t>& assignment);

}  // namespace imea
