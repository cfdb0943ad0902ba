#include <lsoformer/synth/network.hpp>
#include <lsoformer/synth/passes.hpp>

#include <algorithm>

namespace lso::synth
{

network::network()
{
  nodes_.push_back( node{} );
}

lit_t network::create_pi()
{
  node n;
  n.is_pi = true;
  nodes_.push_back( n );
  pis_.push_back( size() - 1u );
  return make_lit( size() - 1u );
}

lit_t network::and_raw( lit_t a, lit_t b )
{
  node n;
  n.fanin[0] = a;
  n.fanin[1] = b;
  n.level = 1u + std::max( level( a ), level( b ) );
  nodes_.push_back( n );
  return make_lit( size() - 1u );
}

std::optional<lit_t> network::trivial_and( lit_t a, lit_t b )
{
  if ( a == const0_lit || b == const0_lit || a == lit_not( b ) )
  {
    return const0_lit;
  }
  if ( a == const1_lit || a == b )
  {
    return b;
  }
  if ( b == const1_lit )
  {
    return a;
  }
  return std::nullopt;
}

uint64_t network::key( lit_t a, lit_t b )
{
  if ( a > b )
  {
    std::swap( a, b );
  }
  return ( static_cast<uint64_t>( a ) << 32 ) | b;
}

std::optional<lit_t> network::lookup( lit_t a, lit_t b ) const
{
  if ( auto const t = trivial_and( a, b ) )
  {
    return t;
  }
  if ( auto const it = strash_.find( key( a, b ) ); it != strash_.end() )
  {
    return make_lit( it->second );
  }
  return std::nullopt;
}

lit_t network::and_hashed( lit_t a, lit_t b )
{
  if ( auto const t = trivial_and( a, b ) )
  {
    return *t;
  }
  if ( a > b )
  {
    std::swap( a, b );
  }
  auto const k = key( a, b );
  if ( auto const it = strash_.find( k ); it != strash_.end() )
  {
    return make_lit( it->second );
  }
  auto const l = and_raw( a, b );
  strash_.emplace( k, lit_node( l ) );
  return l;
}

std::vector<uint32_t> network::reference_counts() const
{
  std::vector<uint32_t> refs( size(), 0u );
  for ( uint32_t n = 1; n < size(); ++n )
  {
    if ( is_and( n ) )
    {
      ++refs[lit_node( nodes_[n].fanin[0] )];
      ++refs[lit_node( nodes_[n].fanin[1] )];
    }
  }
  for ( auto const po : pos_ )
  {
    ++refs[lit_node( po )];
  }
  return refs;
}

namespace
{

std::vector<bool> reachable( network const& ntk )
{
  std::vector<bool> mark( ntk.size(), false );
  for ( auto const po : ntk.pos() )
  {
    mark[lit_node( po )] = true;
  }
  for ( uint32_t n = ntk.size(); n-- > 1u; )
  {
    if ( mark[n] && ntk.is_and( n ) )
    {
      mark[lit_node( ntk.at( n ).fanin[0] )] = true;
      mark[lit_node( ntk.at( n ).fanin[1] )] = true;
    }
  }
  return mark;
}

} // namespace

uint32_t network::num_reachable_ands() const
{
  auto const mark = reachable( *this );
  uint32_t count = 0u;
  for ( uint32_t n = 1; n < size(); ++n )
  {
    count += ( mark[n] && is_and( n ) ) ? 1u : 0u;
  }
  return count;
}

uint32_t network::depth() const
{
  uint32_t d = 0u;
  for ( auto const po : pos_ )
  {
    d = std::max( d, level( po ) );
  }
  return d;
}

network from_aig( aig_graph const& g )
{
  network ntk;
  std::vector<lit_t> map( g.num_nodes(), const0_lit );
  for ( auto const pi : g.primary_inputs() )
  {
    map[pi] = ntk.create_pi();
  }

  /* only logic in the transitive fanin of outputs is imported */
  std::vector<bool> live( g.num_nodes(), false );
  auto const& topo = g.topological_order();
  for ( auto const po : g.primary_outputs() )
  {
    live[po] = true;
  }
  for ( auto it = topo.rbegin(); it != topo.rend(); ++it )
  {
    if ( live[*it] )
    {
      for ( auto const& e : g.fanins( *it ) )
      {
        live[e.source] = true;
      }
    }
  }

  auto edge_lit = [&]( aig_edge const& e ) { return lit_not_if( map[e.source], e.pol == polarity::inverter ); };
  for ( auto const v : topo )
  {
    auto const& node = g.nodes()[v];
    if ( node.kind == node_kind::and_gate && live[v] )
    {
      auto const f = g.fanins( v );
      map[v] = ntk.and_raw( edge_lit( f[0] ), edge_lit( f[1] ) );
    }
  }
  for ( auto const po : g.primary_outputs() )
  {
    ntk.create_po( edge_lit( g.fanins( po )[0] ) );
  }
  return ntk;
}

aig_graph to_aig( network const& ntk, aig_graph const& names_from )
{
  auto const mark = reachable( ntk );
  bool const uses_constant = mark[0];

  std::vector<aig_node> nodes;
  std::vector<aig_edge> edges;
  std::vector<uint32_t> index( ntk.size(), UINT32_MAX );
  if ( uses_constant )
  {
    index[0] = 0u;
    nodes.push_back( { node_kind::constant, 0u, {} } );
  }
  auto const& pi_nodes = names_from.primary_inputs();
  for ( size_t i = 0; i < ntk.pis().size(); ++i )
  {
    index[ntk.pis()[i]] = static_cast<uint32_t>( nodes.size() );
    nodes.push_back( { node_kind::input, 0u, i < pi_nodes.size() ? names_from.nodes()[pi_nodes[i]].name : std::string{} } );
  }
  auto edge_to = [&]( lit_t l, uint32_t target ) {
    return aig_edge{ index[lit_node( l )], target, lit_compl( l ) ? polarity::inverter : polarity::buffer };
  };
  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( mark[n] && ntk.is_and( n ) )
    {
      auto const target = static_cast<uint32_t>( nodes.size() );
      index[n] = target;
      nodes.push_back( { node_kind::and_gate, 0u, {} } );
      edges.push_back( edge_to( ntk.at( n ).fanin[0], target ) );
      edges.push_back( edge_to( ntk.at( n ).fanin[1], target ) );
    }
  }
  auto const& po_nodes = names_from.primary_outputs();
  for ( size_t o = 0; o < ntk.pos().size(); ++o )
  {
    auto const target = static_cast<uint32_t>( nodes.size() );
    nodes.push_back( { node_kind::output, 0u, o < po_nodes.size() ? names_from.nodes()[po_nodes[o]].name : std::string{} } );
    edges.push_back( edge_to( ntk.pos()[o], target ) );
  }
  return aig_graph( names_from.name(), std::move( nodes ), std::move( edges ) );
}

network cleanup( network const& ntk )
{
  auto const mark = reachable( ntk );
  network out;
  std::vector<lit_t> map( ntk.size(), const0_lit );
  for ( auto const pi : ntk.pis() )
  {
    map[pi] = out.create_pi();
  }
  auto tr = [&]( lit_t l ) { return lit_not_if( map[lit_node( l )], lit_compl( l ) ); };
  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( mark[n] && ntk.is_and( n ) )
    {
      map[n] = out.and_hashed( tr( ntk.at( n ).fanin[0] ), tr( ntk.at( n ).fanin[1] ) );
    }
  }
  for ( auto const po : ntk.pos() )
  {
    out.create_po( tr( po ) );
  }
  return out;
}

std::vector<uint32_t> mffc_nodes( network const& ntk, uint32_t root, std::vector<uint32_t>& refs,
                                  std::vector<uint32_t> const& leaves )
{
  std::vector<uint32_t> result{ root };
  std::vector<uint32_t> touched;
  std::vector<uint32_t> stack{ root };
  while ( !stack.empty() )
  {
    auto const n = stack.back();
    stack.pop_back();
    for ( auto const f : ntk.at( n ).fanin )
    {
      auto const v = lit_node( f );
      if ( !ntk.is_and( v ) || std::find( leaves.begin(), leaves.end(), v ) != leaves.end() )
      {
        continue;
      }
      touched.push_back( v );
      if ( --refs[v] == 0u )
      {
        result.push_back( v );
        stack.push_back( v );
      }
    }
  }
  for ( auto const v : touched )
  {
    ++refs[v];
  }
  return result;
}

} // namespace lso::synth
