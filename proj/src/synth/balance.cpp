#include <lsoformer/synth/passes.hpp>

#include <algorithm>
#include <queue>
#include <tuple>

namespace lso::synth
{

network balance_sweep( network const& ntk )
{
  auto const refs = ntk.reference_counts();

  /* A node is absorbed into its fanout's supergate when its only reference
   * is a non-complemented AND fanin. */
  std::vector<bool> absorbed( ntk.size(), false );
  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( !ntk.is_and( n ) )
    {
      continue;
    }
    for ( auto const f : ntk.at( n ).fanin )
    {
      if ( !lit_compl( f ) && ntk.is_and( lit_node( f ) ) && refs[lit_node( f )] == 1u )
      {
        absorbed[lit_node( f )] = true;
      }
    }
  }

  network out;
  std::vector<lit_t> map( ntk.size(), const0_lit );
  for ( auto const pi : ntk.pis() )
  {
    map[pi] = out.create_pi();
  }

  std::vector<lit_t> leaves;
  std::vector<lit_t> stack;
  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( !ntk.is_and( n ) || absorbed[n] )
    {
      continue;
    }
    leaves.clear();
    stack.assign( { ntk.at( n ).fanin[0], ntk.at( n ).fanin[1] } );
    while ( !stack.empty() )
    {
      auto const l = stack.back();
      stack.pop_back();
      if ( !lit_compl( l ) && ntk.is_and( lit_node( l ) ) && absorbed[lit_node( l )] )
      {
        stack.push_back( ntk.at( lit_node( l ) ).fanin[1] );
        stack.push_back( ntk.at( lit_node( l ) ).fanin[0] );
      }
      else
      {
        leaves.push_back( lit_not_if( map[lit_node( l )], lit_compl( l ) ) );
      }
    }

    std::sort( leaves.begin(), leaves.end() );
    leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );
    bool zero = !leaves.empty() && leaves.front() == const0_lit;
    for ( size_t i = 1; i < leaves.size() && !zero; ++i )
    {
      zero = leaves[i] == lit_not( leaves[i - 1u] );
    }
    if ( zero )
    {
      map[n] = const0_lit;
      continue;
    }
    std::erase( leaves, const1_lit );
    if ( leaves.empty() )
    {
      map[n] = const1_lit;
      continue;
    }

    /* combine the two shallowest operands first */
    using item = std::tuple<uint32_t, lit_t>;
    std::priority_queue<item, std::vector<item>, std::greater<>> heap;
    for ( auto const l : leaves )
    {
      heap.emplace( out.level( l ), l );
    }
    while ( heap.size() > 1u )
    {
      auto const [la, a] = heap.top();
      heap.pop();
      auto const [lb, b] = heap.top();
      heap.pop();
      auto const r = out.and_hashed( a, b );
      heap.emplace( out.level( r ), r );
    }
    map[n] = std::get<1>( heap.top() );
  }

  for ( auto const po : ntk.pos() )
  {
    out.create_po( lit_not_if( map[lit_node( po )], lit_compl( po ) ) );
  }
  return out;
}

} // namespace lso::synth
