#include <lsoformer/synth/passes.hpp>

#include <array>

namespace lso::synth
{

namespace
{

/* Two-level simplifications that never create a node:
 *   (a & b) & a  = a & b        (a & b) & !a  = 0
 *   !(a & b) & !a = !a          (a & b) & (!a & c) = 0 */
std::optional<lit_t> two_level( network const& ntk, lit_t x, lit_t y )
{
  for ( int side = 0; side < 2; ++side )
  {
    auto const a = side == 0 ? x : y;
    auto const b = side == 0 ? y : x;
    if ( !ntk.is_and( lit_node( a ) ) )
    {
      continue;
    }
    auto const& fa = ntk.at( lit_node( a ) ).fanin;
    if ( !lit_compl( a ) )
    {
      if ( fa[0] == b || fa[1] == b )
      {
        return a;
      }
      if ( fa[0] == lit_not( b ) || fa[1] == lit_not( b ) )
      {
        return const0_lit;
      }
    }
    else if ( fa[0] == lit_not( b ) || fa[1] == lit_not( b ) )
    {
      return b;
    }
  }
  if ( !lit_compl( x ) && !lit_compl( y ) && ntk.is_and( lit_node( x ) ) && ntk.is_and( lit_node( y ) ) )
  {
    auto const& fx = ntk.at( lit_node( x ) ).fanin;
    auto const& fy = ntk.at( lit_node( y ) ).fanin;
    for ( auto const p : fx )
    {
      for ( auto const q : fy )
      {
        if ( p == lit_not( q ) )
        {
          return const0_lit;
        }
      }
    }
  }
  return std::nullopt;
}

} // namespace

network rewrite_sweep( network const& ntk, bool zero_gain )
{
  auto const refs = ntk.reference_counts();

  network out;
  std::vector<lit_t> map( ntk.size(), const0_lit );
  for ( auto const pi : ntk.pis() )
  {
    map[pi] = out.create_pi();
  }
  auto tr = [&]( lit_t l ) { return lit_not_if( map[lit_node( l )], lit_compl( l ) ); };

  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( !ntk.is_and( n ) )
    {
      continue;
    }
    auto const& old_fanin = ntk.at( n ).fanin;
    std::array<lit_t, 2> const f = { tr( old_fanin[0] ), tr( old_fanin[1] ) };

    if ( auto const t = network::trivial_and( f[0], f[1] ) )
    {
      map[n] = *t;
      continue;
    }
    if ( auto const t = two_level( out, f[0], f[1] ) )
    {
      map[n] = *t;
      continue;
    }
    if ( auto const hit = out.lookup( f[0], f[1] ) )
    {
      map[n] = *hit;
      continue;
    }

    /* Re-association through a single-fanout, non-complemented AND fanin:
     *   (p & q) & r  ->  (p & r) & q  or  (q & r) & p
     * accepted when the inner AND already exists (saves a node) or, with
     * zero_gain, when the result is not deeper than the default. */
    uint32_t const default_level = 1u + std::max( out.level( f[0] ), out.level( f[1] ) );
    struct candidate
    {
      lit_t paired, other, rest;
      uint32_t level;
    };
    std::optional<candidate> best;
    bool hit_found = false;
    for ( int side = 0; side < 2 && !hit_found; ++side )
    {
      auto const inner_old = old_fanin[side];
      auto const inner = f[side];
      if ( lit_compl( inner_old ) || !ntk.is_and( lit_node( inner_old ) ) || refs[lit_node( inner_old )] != 1u ||
           lit_compl( inner ) || !out.is_and( lit_node( inner ) ) )
      {
        continue;
      }
      auto const other = f[1 - side];
      auto const& fi = out.at( lit_node( inner ) ).fanin;
      for ( int k = 0; k < 2; ++k )
      {
        candidate c{ fi[k], other, fi[1 - k], 0u };
        auto const hit = out.lookup( c.paired, c.other );
        uint32_t const inner_level = hit ? out.level( *hit ) : 1u + std::max( out.level( c.paired ), out.level( c.other ) );
        c.level = 1u + std::max( inner_level, out.level( c.rest ) );
        if ( hit )
        {
          best = c;
          hit_found = true;
          break;
        }
        if ( zero_gain && c.level <= default_level && ( !best || c.level < best->level ) )
        {
          best = c;
        }
      }
    }

    if ( best )
    {
      map[n] = out.and_hashed( out.and_hashed( best->paired, best->other ), best->rest );
    }
    else
    {
      map[n] = out.and_hashed( f[0], f[1] );
    }
  }

  for ( auto const po : ntk.pos() )
  {
    out.create_po( tr( po ) );
  }
  return out;
}

} // namespace lso::synth
