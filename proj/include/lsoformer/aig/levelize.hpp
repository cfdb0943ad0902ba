#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <cstdint>
#include <vector>

namespace lso
{

/// Longest-path depth of every node. Sources (inputs and the constant node)
/// sit at level 0; output nodes take one level above their driver.
struct level_index
{
  std::vector<uint32_t> level_of;
  uint32_t max_depth = 0u;

  /// Node indices grouped by level, each group in ascending index order.
  std::vector<std::vector<uint32_t>> buckets() const;
};

level_index levelize( aig_graph const& g );

} // namespace lso
