#include <catch_amalgamated.hpp>

#include <lsoformer/aig/netlist_io.hpp>
#include <lsoformer/aig/random_aig.hpp>
#include <lsoformer/aig/simulate.hpp>

#include "reference_eval.hpp"

using namespace lso;

namespace
{

constexpr char const* and_bench = "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n";

std::vector<bool> column( aig_graph const& g, size_t out = 0 )
{
  std::vector<bool> col;
  for ( auto const& row : reference_truth_table( g ) )
  {
    col.push_back( row[out] );
  }
  return col;
}

} // namespace

TEST_CASE( "smallest AND netlist", "[bench]" )
{
  auto const g = parse_netlist( and_bench, netlist_format::bench );
  CHECK( g.num_nodes() == 4 );
  CHECK( g.num_edges() == 3 );
  CHECK( g.num_ands() == 1 );
  for ( auto const& e : g.edges() )
  {
    CHECK( e.pol == polarity::buffer );
  }
  CHECK( g.node( g.primary_outputs()[0] ).name == "y" );
}

TEST_CASE( "NAND import carries an inverter on the output edge", "[bench]" )
{
  auto const g = parse_netlist( "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n", netlist_format::bench );
  CHECK( g.num_ands() == 1 );
  CHECK( g.node( g.primary_outputs()[0] ).inverted_preds == 1 );
  /* rows are assignments m with a = bit 0, b = bit 1 */
  CHECK( column( g ) == std::vector<bool>{ true, true, true, false } );
}

TEST_CASE( "OR, NOR, NOT and BUF decompose into ANDs and polarities", "[bench]" )
{
  auto const g = parse_netlist( R"(# mixed gates
INPUT(a)
INPUT(b)
INPUT(c)
OUTPUT(o1)
OUTPUT(o2)
OUTPUT(o3)
na = not(a)
o1 = OR(a, b, c)
o2 = Nor(na, b)
t = BUFF(c)
o3 = AND(t, na)
)",
                                netlist_format::bench );
  std::vector<bool> o1, o2, o3;
  for ( uint32_t m = 0; m < 8; ++m )
  {
    bool const a = m & 1, b = m & 2, c = m & 4;
    o1.push_back( a || b || c );
    o2.push_back( !( !a || b ) );
    o3.push_back( c && !a );
  }
  CHECK( column( g, 0 ) == o1 );
  CHECK( column( g, 1 ) == o2 );
  CHECK( column( g, 2 ) == o3 );
  CHECK( g.num_ands() == 4 );
}

TEST_CASE( "BENCH errors", "[bench]" )
{
  CHECK_THROWS_WITH( parse_netlist( "INPUT(a)\nOUTPUT(y)\ny = AND(a, z)\n", netlist_format::bench ),
                     Catch::Matchers::ContainsSubstring( "'z'" ) );
  CHECK_THROWS_WITH( parse_netlist( "INPUT(a)\nOUTPUT(y)\ny = AND(a a)\n", netlist_format::bench ),
                     Catch::Matchers::ContainsSubstring( "line 3" ) );
  CHECK_THROWS_WITH( parse_netlist( "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NOT(a, b)\n", netlist_format::bench ),
                     Catch::Matchers::ContainsSubstring( "fanin" ) );
  CHECK_THROWS_WITH( parse_netlist( "INPUT(a)\nOUTPUT(y)\ny = AND(a, x)\nx = AND(a, y)\n", netlist_format::bench ),
                     Catch::Matchers::ContainsSubstring( "cyclic" ) );
  CHECK_THROWS_AS( parse_netlist( "INPUT(a)\nOUTPUT(y)\ny = XOR(a, a)\n", netlist_format::bench ), aig_error );
}

TEST_CASE( "BENCH nodes follow declaration order", "[bench]" )
{
  auto const g = parse_netlist( and_bench, netlist_format::bench );
  CHECK( g.node( 2 ).kind == node_kind::output );
  CHECK( g.node( 3 ).kind == node_kind::and_gate );
  auto const h = parse_netlist( serialize_netlist( g, netlist_format::bench ), netlist_format::bench );
  CHECK( structurally_equal( g, h ) );
  CHECK( h.node( 2 ).name == "y" );
}

TEST_CASE( "import is deterministic", "[bench]" )
{
  auto const text = serialize_netlist( random_aig( {}, 99u ), netlist_format::bench );
  auto const a = parse_netlist( text, netlist_format::bench );
  auto const b = parse_netlist( text, netlist_format::bench );
  CHECK( structurally_equal( a, b ) );
}

namespace
{

/* AIGER fixes the layout (variables, then outputs), so BENCH imports that
 * declare outputs early are brought into that layout once before comparing. */
aig_graph in_layout( aig_graph const& g, netlist_format fmt )
{
  if ( fmt == netlist_format::bench )
  {
    return g;
  }
  auto h = parse_netlist( serialize_netlist( g, fmt ), fmt );
  REQUIRE( reference_truth_table( h ) == reference_truth_table( g ) );
  return h;
}

} // namespace

TEST_CASE( "round trips are structurally exact", "[bench][aiger]" )
{
  auto const fmt = GENERATE( netlist_format::bench, netlist_format::aiger_ascii );
  SECTION( "one AND" )
  {
    auto const g = in_layout( parse_netlist( and_bench, netlist_format::bench ), fmt );
    CHECK( structurally_equal( parse_netlist( serialize_netlist( g, fmt ), fmt ), g ) );
  }
  SECTION( "NAND" )
  {
    auto const g = in_layout( parse_netlist( "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n", netlist_format::bench ), fmt );
    auto const h = parse_netlist( serialize_netlist( g, fmt ), fmt );
    CHECK( structurally_equal( h, g ) );
    CHECK( h.node( h.primary_outputs()[0] ).inverted_preds == 1 );
  }
  SECTION( "random graphs" )
  {
    for ( uint64_t seed = 0; seed < 10; ++seed )
    {
      auto const g = random_aig( { .num_inputs = 12, .num_ands = 170 }, seed );
      auto const h = parse_netlist( serialize_netlist( g, fmt ), fmt );
      REQUIRE( structurally_equal( h, g ) );
      for ( uint32_t v = 0; v < g.num_nodes(); ++v )
      {
        CHECK( h.node( v ).inverted_preds == g.node( v ).inverted_preds );
      }
    }
  }
}

TEST_CASE( "AIGER ascii reader", "[aiger]" )
{
  /* y = !(a & !b) */
  auto const g = parse_netlist( "aag 3 2 0 1 1\n2\n4\n7\n6 2 5\ni0 a\ni1 b\no0 y\nc\ncomment\n", netlist_format::aiger_ascii );
  CHECK( g.num_ands() == 1 );
  CHECK( g.node( g.primary_inputs()[1] ).name == "b" );
  CHECK( column( g ) == std::vector<bool>{ true, false, true, true } );
  CHECK_THROWS_AS( parse_netlist( "aag 1 0 1 0 0\n2 3\n", netlist_format::aiger_ascii ), aig_error );
  CHECK_THROWS_AS( parse_netlist( "aag 3 2 0 1 1\n2\n4\n9\n6 2 5\n", netlist_format::aiger_ascii ), aig_error );
}

TEST_CASE( "format is inferred from the extension", "[io]" )
{
  CHECK( format_from_path( "x/c17.bench" ) == netlist_format::bench );
  CHECK( format_from_path( "c17.aag" ) == netlist_format::aiger_ascii );
  CHECK_THROWS( format_from_path( "c17.v" ) );
}
