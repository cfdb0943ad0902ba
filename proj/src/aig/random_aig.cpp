#include <lsoformer/aig/random_aig.hpp>

#include <lsoformer/util/rng.hpp>

#include <algorithm>

namespace lso
{

aig_graph random_aig( random_aig_params const& params, uint64_t seed, std::string name )
{
  if ( params.num_inputs == 0u )
  {
    throw aig_error( "random AIG needs at least one input" );
  }
  rng gen( seed );

  struct fanin
  {
    uint32_t node;
    bool inv;
  };
  std::vector<aig_node> nodes;
  std::vector<std::pair<fanin, fanin>> and_fanins;
  for ( uint32_t i = 0; i < params.num_inputs; ++i )
  {
    nodes.push_back( { node_kind::input, 0u, "pi" + std::to_string( i ) } );
  }

  auto pick = [&]( uint32_t count ) -> uint32_t {
    if ( count > params.window && gen.bernoulli( params.locality ) )
    {
      return count - 1u - static_cast<uint32_t>( gen.uniform_int( params.window ) );
    }
    return static_cast<uint32_t>( gen.uniform_int( count ) );
  };
  auto random_fanin = [&]( uint32_t count ) { return fanin{ pick( count ), gen.bernoulli( params.inverter_rate ) }; };
  auto and_of = [&]( uint32_t node ) -> std::pair<fanin, fanin> const* {
    if ( node < params.num_inputs )
    {
      return nullptr;
    }
    return &and_fanins[node - params.num_inputs];
  };

  for ( uint32_t k = 0; k < params.num_ands; ++k )
  {
    auto const count = static_cast<uint32_t>( nodes.size() );
    std::pair<fanin, fanin> f{ random_fanin( count ), random_fanin( count ) };

    if ( gen.bernoulli( params.redundancy ) )
    {
      auto const pattern = gen.uniform_int( 3u );
      auto const base = pick( count );
      if ( auto const* inner = and_of( base ) )
      {
        if ( pattern == 0u )
        {
          /* x & (x & y) style: reuse one fanin of the fanin */
          f = { fanin{ base, false }, gen.bernoulli( 0.5 ) ? inner->first : inner->second };
        }
        else if ( pattern == 1u )
        {
          /* structural duplicate with swapped fanins */
          f = { inner->second, inner->first };
        }
        else
        {
          /* ((a & b) & c) next to (a & (b & c)) */
          f = { fanin{ base, false }, random_fanin( count ) };
        }
      }
    }
    while ( f.first.node == f.second.node && f.first.inv != f.second.inv && count > 1u )
    {
      f.second = random_fanin( count );
    }
    and_fanins.push_back( f );
    nodes.push_back( { node_kind::and_gate, 0u, {} } );
  }

  std::vector<aig_edge> edges;
  std::vector<uint32_t> fanout( nodes.size(), 0u );
  for ( uint32_t k = 0; k < and_fanins.size(); ++k )
  {
    auto const target = params.num_inputs + k;
    for ( auto const& f : { and_fanins[k].first, and_fanins[k].second } )
    {
      edges.push_back( { f.node, target, f.inv ? polarity::inverter : polarity::buffer } );
      ++fanout[f.node];
    }
  }

  uint32_t const and_end = static_cast<uint32_t>( nodes.size() );
  uint32_t po = 0u;
  for ( uint32_t v = params.num_inputs; v < and_end; ++v )
  {
    if ( fanout[v] == 0u )
    {
      auto const out = static_cast<uint32_t>( nodes.size() );
      nodes.push_back( { node_kind::output, 0u, "po" + std::to_string( po++ ) } );
      edges.push_back( { v, out, gen.bernoulli( params.inverter_rate ) ? polarity::inverter : polarity::buffer } );
    }
  }
  if ( po == 0u )
  {
    /* AND-free graph: expose the last input */
    auto const out = static_cast<uint32_t>( nodes.size() );
    nodes.push_back( { node_kind::output, 0u, "po0" } );
    edges.push_back( { and_end - 1u, out, polarity::buffer } );
  }
  return aig_graph( std::move( name ), std::move( nodes ), std::move( edges ) );
}

aig_graph random_benchmark_circuit( uint32_t target_nodes, uint64_t seed, std::string name )
{
  random_aig_params params;
  target_nodes = std::max( target_nodes, 20u );
  params.num_inputs = std::clamp( target_nodes / 24u, 6u, 64u );
  /* a share of the AND nodes ends up without fanout and gains an output node */
  params.num_ands = std::max( 8u, static_cast<uint32_t>( ( target_nodes - params.num_inputs ) / 1.15 ) );
  params.window = 48u;
  params.locality = 0.6;
  return random_aig( params, seed, std::move( name ) );
}

} // namespace lso
