#include <lsoformer/aig/aig_graph.hpp>

#include <algorithm>
#include <queue>

namespace lso
{

namespace
{

char const* kind_name( node_kind k )
{
  switch ( k )
  {
  case node_kind::input:
    return "input";
  case node_kind::and_gate:
    return "and";
  case node_kind::output:
    return "output";
  case node_kind::constant:
    return "constant";
  }
  return "?";
}

uint32_t expected_fanin( node_kind k )
{
  switch ( k )
  {
  case node_kind::and_gate:
    return 2u;
  case node_kind::output:
    return 1u;
  default:
    return 0u;
  }
}

} // namespace

aig_graph::aig_graph( std::string name, std::vector<aig_node> nodes, std::vector<aig_edge> edges )
    : name_( std::move( name ) ), nodes_( std::move( nodes ) ), edges_( std::move( edges ) )
{
  auto const n = static_cast<uint32_t>( nodes_.size() );

  for ( auto const& e : edges_ )
  {
    if ( e.source >= n || e.target >= n )
    {
      throw aig_error( "edge endpoint out of range" );
    }
    if ( e.source == e.target )
    {
      throw aig_error( "self-loop on node " + std::to_string( e.source ) );
    }
    if ( nodes_[e.source].kind == node_kind::output )
    {
      throw aig_error( "output node " + std::to_string( e.source ) + " has fanout" );
    }
  }

  std::stable_sort( edges_.begin(), edges_.end(),
                    []( aig_edge const& a, aig_edge const& b ) { return a.target < b.target; } );

  fanin_begin_.assign( n + 1u, 0u );
  for ( auto const& e : edges_ )
  {
    ++fanin_begin_[e.target + 1u];
  }
  for ( uint32_t i = 0; i < n; ++i )
  {
    fanin_begin_[i + 1u] += fanin_begin_[i];
  }

  for ( uint32_t i = 0; i < n; ++i )
  {
    auto& node = nodes_[i];
    uint32_t const count = fanin_begin_[i + 1u] - fanin_begin_[i];
    if ( count != expected_fanin( node.kind ) )
    {
      throw aig_error( std::string( kind_name( node.kind ) ) + " node " + std::to_string( i ) + " has " +
                       std::to_string( count ) + " incoming edges, expected " +
                       std::to_string( expected_fanin( node.kind ) ) );
    }
    uint8_t inv = 0u;
    for ( uint32_t e = fanin_begin_[i]; e < fanin_begin_[i + 1u]; ++e )
    {
      inv += edges_[e].pol == polarity::inverter ? 1u : 0u;
    }
    node.inverted_preds = inv;
    if ( node.kind == node_kind::input )
    {
      pis_.push_back( i );
    }
    else if ( node.kind == node_kind::output )
    {
      pos_.push_back( i );
    }
    else if ( node.kind == node_kind::and_gate )
    {
      ++num_ands_;
    }
  }

  /* Kahn's algorithm with a min-heap keeps the order deterministic. */
  std::vector<uint32_t> indegree( n, 0u );
  std::vector<std::vector<uint32_t>> fanout( n );
  for ( auto const& e : edges_ )
  {
    ++indegree[e.target];
    fanout[e.source].push_back( e.target );
  }
  std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
  for ( uint32_t i = 0; i < n; ++i )
  {
    if ( indegree[i] == 0u )
    {
      ready.push( i );
    }
  }
  topo_.reserve( n );
  while ( !ready.empty() )
  {
    auto const v = ready.top();
    ready.pop();
    topo_.push_back( v );
    for ( auto const t : fanout[v] )
    {
      if ( --indegree[t] == 0u )
      {
        ready.push( t );
      }
    }
  }
  if ( topo_.size() != n )
  {
    throw aig_error( "graph contains a cycle" );
  }
}

std::span<aig_edge const> aig_graph::fanins( uint32_t index ) const
{
  if ( index >= num_nodes() )
  {
    throw aig_error( "node index out of range" );
  }
  return std::span<aig_edge const>( edges_ ).subspan( fanin_begin_[index], fanin_begin_[index + 1u] - fanin_begin_[index] );
}

bool structurally_equal( aig_graph const& a, aig_graph const& b )
{
  if ( a.num_nodes() != b.num_nodes() || a.edges() != b.edges() )
  {
    return false;
  }
  for ( uint32_t i = 0; i < a.num_nodes(); ++i )
  {
    if ( a.nodes()[i].kind != b.nodes()[i].kind || a.nodes()[i].inverted_preds != b.nodes()[i].inverted_preds )
    {
      return false;
    }
  }
  return true;
}

uint64_t structural_hash( aig_graph const& g )
{
  uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h]( uint64_t v ) {
    for ( int i = 0; i < 8; ++i )
    {
      h ^= ( v >> ( 8 * i ) ) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix( g.num_nodes() );
  for ( auto const& n : g.nodes() )
  {
    mix( static_cast<uint64_t>( n.kind ) );
  }
  for ( auto const& e : g.edges() )
  {
    mix( ( static_cast<uint64_t>( e.source ) << 33 ) | ( static_cast<uint64_t>( e.target ) << 1 ) |
         static_cast<uint64_t>( e.pol ) );
  }
  return h;
}

aig_graph permute_nodes( aig_graph const& g, std::span<uint32_t const> perm )
{
  if ( perm.size() != g.num_nodes() )
  {
    throw aig_error( "permutation size mismatch" );
  }
  std::vector<uint32_t> new_index( g.num_nodes(), UINT32_MAX );
  for ( uint32_t i = 0; i < perm.size(); ++i )
  {
    if ( perm[i] >= g.num_nodes() || new_index[perm[i]] != UINT32_MAX )
    {
      throw aig_error( "invalid permutation" );
    }
    new_index[perm[i]] = i;
  }
  std::vector<aig_node> nodes;
  nodes.reserve( g.num_nodes() );
  for ( auto const old : perm )
  {
    nodes.push_back( g.nodes()[old] );
  }
  std::vector<aig_edge> edges;
  edges.reserve( g.num_edges() );
  for ( auto const& e : g.edges() )
  {
    edges.push_back( { new_index[e.source], new_index[e.target], e.pol } );
  }
  return aig_graph( g.name(), std::move( nodes ), std::move( edges ) );
}

} // namespace lso
