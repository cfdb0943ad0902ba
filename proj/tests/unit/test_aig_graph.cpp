#include <catch_amalgamated.hpp>

#include <lsoformer/aig/aig_graph.hpp>
#include <lsoformer/aig/random_aig.hpp>

#include "reference_eval.hpp"

#include <numeric>

using namespace lso;

namespace
{

aig_graph one_and( polarity out_pol = polarity::buffer )
{
  return aig_graph( "one", { { node_kind::input, 0, "a" }, { node_kind::input, 0, "b" }, { node_kind::and_gate, 0, {} }, { node_kind::output, 0, "y" } },
                    { { 0, 2, polarity::buffer }, { 1, 2, polarity::buffer }, { 2, 3, out_pol } } );
}

} // namespace

TEST_CASE( "graph counts and classifications", "[aig]" )
{
  auto const g = one_and();
  CHECK( g.num_nodes() == 4 );
  CHECK( g.num_edges() == 3 );
  CHECK( g.num_ands() == 1 );
  CHECK( g.primary_inputs() == std::vector<uint32_t>{ 0, 1 } );
  CHECK( g.primary_outputs() == std::vector<uint32_t>{ 3 } );
  CHECK( g.fanins( 2 ).size() == 2 );
  CHECK( g.fanins( 0 ).empty() );
}

TEST_CASE( "inverted predecessor counts are derived from polarities", "[aig]" )
{
  auto const g = aig_graph( "x", { { node_kind::input, 2, "a" }, { node_kind::input, 0, "b" }, { node_kind::and_gate, 0, {} }, { node_kind::output, 0, "y" } },
                            { { 0, 2, polarity::inverter }, { 1, 2, polarity::inverter }, { 2, 3, polarity::inverter } } );
  CHECK( g.node( 0 ).inverted_preds == 0 );
  CHECK( g.node( 2 ).inverted_preds == 2 );
  CHECK( g.node( 3 ).inverted_preds == 1 );
}

TEST_CASE( "invalid structures are rejected", "[aig]" )
{
  using nk = node_kind;
  auto const buf = polarity::buffer;
  SECTION( "and with one fanin" )
  {
    CHECK_THROWS_AS( aig_graph( "x", { { nk::input }, { nk::and_gate }, { nk::output } }, { { 0, 1, buf }, { 1, 2, buf } } ), aig_error );
  }
  SECTION( "output with two fanins" )
  {
    CHECK_THROWS_AS( aig_graph( "x", { { nk::input }, { nk::output } }, { { 0, 1, buf }, { 0, 1, buf } } ), aig_error );
  }
  SECTION( "input with a fanin" )
  {
    CHECK_THROWS_AS( aig_graph( "x", { { nk::input }, { nk::input } }, { { 0, 1, buf } } ), aig_error );
  }
  SECTION( "self loop" )
  {
    CHECK_THROWS_AS( aig_graph( "x", { { nk::input }, { nk::and_gate } }, { { 0, 1, buf }, { 1, 1, buf } } ), aig_error );
  }
  SECTION( "dangling endpoint" )
  {
    CHECK_THROWS_AS( aig_graph( "x", { { nk::input }, { nk::output } }, { { 7, 1, buf } } ), aig_error );
  }
  SECTION( "cycle" )
  {
    CHECK_THROWS_WITH( aig_graph( "x", { { nk::input }, { nk::and_gate }, { nk::and_gate }, { nk::output } },
                                  { { 0, 1, buf }, { 2, 1, buf }, { 0, 2, buf }, { 1, 2, buf }, { 2, 3, buf } } ),
                       Catch::Matchers::ContainsSubstring( "cycle" ) );
  }
}

TEST_CASE( "topological order respects every edge", "[aig]" )
{
  auto const g = random_aig( { .num_inputs = 10, .num_ands = 150 }, 3u );
  std::vector<uint32_t> pos( g.num_nodes() );
  auto const& topo = g.topological_order();
  REQUIRE( topo.size() == g.num_nodes() );
  for ( uint32_t i = 0; i < topo.size(); ++i )
  {
    pos[topo[i]] = i;
  }
  for ( auto const& e : g.edges() )
  {
    CHECK( pos[e.source] < pos[e.target] );
  }
}

TEST_CASE( "random generator is seeded and emits no dangling logic", "[aig]" )
{
  random_aig_params p{ .num_inputs = 6, .num_ands = 80 };
  auto const a = random_aig( p, 11u );
  auto const b = random_aig( p, 11u );
  auto const c = random_aig( p, 12u );
  CHECK( structurally_equal( a, b ) );
  CHECK( structural_hash( a ) == structural_hash( b ) );
  CHECK_FALSE( structurally_equal( a, c ) );

  std::vector<uint32_t> fanout( a.num_nodes(), 0u );
  for ( auto const& e : a.edges() )
  {
    ++fanout[e.source];
  }
  for ( uint32_t v = 0; v < a.num_nodes(); ++v )
  {
    if ( a.node( v ).kind == node_kind::and_gate )
    {
      CHECK( fanout[v] > 0u );
    }
  }
}

TEST_CASE( "benchmark circuits land near the requested size", "[aig]" )
{
  for ( uint32_t target : { 50u, 400u, 2000u } )
  {
    auto const g = random_benchmark_circuit( target, target );
    CHECK( g.num_nodes() >= target * 7 / 10 );
    CHECK( g.num_nodes() <= target * 13 / 10 );
  }
}

TEST_CASE( "permuting storage carries node attributes along", "[aig]" )
{
  auto const g = random_aig( { .num_inputs = 5, .num_ands = 30 }, 5u );
  std::vector<uint32_t> perm( g.num_nodes() );
  std::iota( perm.begin(), perm.end(), 0u );
  std::reverse( perm.begin(), perm.end() );
  auto const h = permute_nodes( g, perm );
  CHECK( h.num_nodes() == g.num_nodes() );
  CHECK( h.num_edges() == g.num_edges() );
  for ( uint32_t i = 0; i < perm.size(); ++i )
  {
    CHECK( h.node( i ).kind == g.node( perm[i] ).kind );
    CHECK( h.node( i ).inverted_preds == g.node( perm[i] ).inverted_preds );
  }
}
