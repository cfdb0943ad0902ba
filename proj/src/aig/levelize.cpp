#include <lsoformer/aig/levelize.hpp>

#include <algorithm>

namespace lso
{

std::vector<std::vector<uint32_t>> level_index::buckets() const
{
  std::vector<std::vector<uint32_t>> result( level_of.empty() ? 0u : max_depth + 1u );
  for ( uint32_t v = 0; v < level_of.size(); ++v )
  {
    result[level_of[v]].push_back( v );
  }
  return result;
}

level_index levelize( aig_graph const& g )
{
  level_index index;
  index.level_of.assign( g.num_nodes(), 0u );
  for ( auto const v : g.topological_order() )
  {
    uint32_t level = 0u;
    for ( auto const& e : g.fanins( v ) )
    {
      level = std::max( level, index.level_of[e.source] + 1u );
    }
    index.level_of[v] = level;
    index.max_depth = std::max( index.max_depth, level );
  }
  return index;
}

} // namespace lso
