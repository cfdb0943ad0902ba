#include <lsoformer/aig/simulate.hpp>

namespace lso
{

std::vector<uint64_t> simulate_words( aig_graph const& g, std::span<uint64_t const> pi_words )
{
  if ( pi_words.size() != g.primary_inputs().size() )
  {
    throw aig_error( "assignment size does not match the number of primary inputs" );
  }
  std::vector<uint64_t> value( g.num_nodes(), 0u );
  for ( size_t i = 0; i < pi_words.size(); ++i )
  {
    value[g.primary_inputs()[i]] = pi_words[i];
  }
  for ( auto const v : g.topological_order() )
  {
    auto const kind = g.nodes()[v].kind;
    if ( kind == node_kind::input || kind == node_kind::constant )
    {
      continue;
    }
    uint64_t acc = ~uint64_t{ 0 };
    for ( auto const& e : g.fanins( v ) )
    {
      acc &= e.pol == polarity::inverter ? ~value[e.source] : value[e.source];
    }
    value[v] = acc;
  }
  std::vector<uint64_t> out;
  out.reserve( g.primary_outputs().size() );
  for ( auto const po : g.primary_outputs() )
  {
    out.push_back( value[po] );
  }
  return out;
}

std::vector<bool> simulate( aig_graph const& g, std::vector<bool> const& assignment )
{
  std::vector<uint64_t> words( assignment.size() );
  for ( size_t i = 0; i < assignment.size(); ++i )
  {
    words[i] = assignment[i] ? 1u : 0u;
  }
  auto const out = simulate_words( g, words );
  std::vector<bool> result( out.size() );
  for ( size_t i = 0; i < out.size(); ++i )
  {
    result[i] = ( out[i] & 1u ) != 0u;
  }
  return result;
}

std::vector<std::vector<uint64_t>> truth_tables( aig_graph const& g )
{
  auto const k = g.primary_inputs().size();
  if ( k > 20u )
  {
    throw aig_error( "too many primary inputs for exhaustive simulation" );
  }
  uint64_t const rows = uint64_t{ 1 } << k;
  uint64_t const words = ( rows + 63u ) / 64u;
  std::vector<std::vector<uint64_t>> tables( g.primary_outputs().size(), std::vector<uint64_t>( words, 0u ) );
  std::vector<uint64_t> pi( k );
  for ( uint64_t w = 0; w < words; ++w )
  {
    for ( size_t i = 0; i < k; ++i )
    {
      uint64_t word = 0u;
      for ( uint64_t b = 0; b < 64u; ++b )
      {
        uint64_t const row = w * 64u + b;
        if ( ( row >> i ) & 1u )
        {
          word |= uint64_t{ 1 } << b;
        }
      }
      pi[i] = word;
    }
    auto const out = simulate_words( g, pi );
    uint64_t const mask = rows >= 64u ? ~uint64_t{ 0 } : ( ( uint64_t{ 1 } << rows ) - 1u );
    for ( size_t o = 0; o < out.size(); ++o )
    {
      tables[o][w] = out[o] & mask;
    }
  }
  return tables;
}

bool functionally_equivalent( aig_graph const& a, aig_graph const& b )
{
  if ( a.primary_inputs().size() != b.primary_inputs().size() ||
       a.primary_outputs().size() != b.primary_outputs().size() )
  {
    return false;
  }
  return truth_tables( a ) == truth_tables( b );
}

} // namespace lso
