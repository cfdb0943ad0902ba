#include <catch_amalgamated.hpp>

#include <lsoformer/aig/random_aig.hpp>
#include <lsoformer/data/dataset.hpp>
#include <lsoformer/data/normalizer.hpp>
#include <lsoformer/data/split.hpp>
#include <lsoformer/data/store.hpp>
#include <lsoformer/util/rng.hpp>

#include "reference_eval.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace lso;

namespace
{

std::filesystem::path scratch_dir( std::string const& name )
{
  auto const dir = std::filesystem::temp_directory_path() / ( "lsoformer_test_" + name );
  std::filesystem::remove_all( dir );
  std::filesystem::create_directories( dir );
  return dir;
}

std::string slurp( std::filesystem::path const& p )
{
  std::ifstream in( p, std::ios::binary );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<dataset_sample> grid( uint32_t circuits, uint32_t recipes )
{
  std::vector<dataset_sample> out;
  for ( uint32_t c = 0; c < circuits; ++c )
  {
    for ( uint32_t r = 0; r < recipes; ++r )
    {
      out.push_back( { c, r, { 0u }, { double( c + r + 1 ) }, 1.0 } );
    }
  }
  return out;
}

} // namespace

TEST_CASE( "recipe sampling", "[data]" )
{
  auto const a = sample_recipes( 1, 3, 42 );
  auto const b = sample_recipes( 1, 3, 42 );
  REQUIRE( a.size() == 1 );
  CHECK( a[0].steps.size() == 3 );
  CHECK( a[0].steps == b[0].steps );

  auto const many = sample_recipes( 200, 10, 7 );
  std::set<std::vector<uint32_t>> distinct;
  for ( uint32_t i = 0; i < many.size(); ++i )
  {
    CHECK( many[i].id == i );
    for ( auto const t : many[i].steps )
    {
      CHECK( t < num_heuristics );
    }
    distinct.insert( many[i].steps );
  }
  CHECK( distinct.size() == 200 );

  CHECK( sample_recipes( 49, 2, 1 ).size() == 49 );
  CHECK_THROWS_AS( sample_recipes( 50, 2, 1 ), dataset_error );
  CHECK_THROWS_AS( sample_recipes( 8, 1, 1 ), dataset_error );
}

TEST_CASE( "recipe text", "[data]" )
{
  auto const r = parse_recipe( "b, rw -z,rf_z, 5" );
  CHECK( r.steps == std::vector<uint32_t>{ 0, 2, 4, 5 } );
  CHECK( r.to_string() == "balance,rw_z,rf_z,rs" );
  CHECK_THROWS_AS( parse_recipe( "rw,dch" ), dataset_error );
}

TEST_CASE( "dataset cardinality and trajectories", "[data]" )
{
  std::vector<aig_graph> circuits = { random_aig( { .num_inputs = 6, .num_ands = 40 }, 1u, "c0" ),
                                      random_aig( { .num_inputs = 7, .num_ands = 50 }, 2u, "c1" ) };
  auto const recipes = sample_recipes( 3, 4, 9 );
  auto const d = build_dataset( circuits, recipes, qor_metric::area );
  REQUIRE( d.samples.size() == 6 );
  for ( auto const& s : d.samples )
  {
    CHECK( s.raw.size() == 4 );
    /* trajectory must match a direct, uncached application of the recipe */
    auto const t = run_recipe( circuits[s.circuit_id], recipes[s.recipe_id].heuristics(), qor_metric::area );
    CHECK( t.values == s.raw );
    CHECK( s.initial == circuits[s.circuit_id].num_ands() );
  }
  CHECK( d.circuits[1].name == "c1" );
}

TEST_CASE( "split setups", "[data]" )
{
  SECTION( "three circuits" )
  {
    auto const samples = grid( 3, 5 );
    auto const r = split( samples, { split_setup::ip_inductive, 0.66, 0.33, 1u } );
    CHECK( r.train_keys.size() == 2 );
    CHECK( r.val_keys.size() == 1 );
    CHECK( r.train.size() + r.val.size() == samples.size() );
  }
  SECTION( "too few keys" )
  {
    CHECK_THROWS_AS( split( grid( 1, 5 ), { split_setup::ip_inductive, 0.66, 0.33, 1u } ), dataset_error );
    CHECK_THROWS_AS( split( grid( 5, 1 ), { split_setup::recipe_inductive, 0.66, 0.33, 1u } ), dataset_error );
  }
  SECTION( "disjointness and coverage over seeds" )
  {
    auto const samples = grid( 7, 11 );
    for ( uint64_t seed = 0; seed < 20; ++seed )
    {
      for ( auto const setup : { split_setup::ip_inductive, split_setup::recipe_inductive } )
      {
        auto const r = split( samples, { setup, 0.66, 0.33, seed } );
        std::set<uint32_t> tc, vc, tr, vr;
        for ( auto const i : r.train )
        {
          tc.insert( samples[i].circuit_id );
          tr.insert( samples[i].recipe_id );
        }
        for ( auto const i : r.val )
        {
          vc.insert( samples[i].circuit_id );
          vr.insert( samples[i].recipe_id );
        }
        CHECK( r.train.size() + r.val.size() == samples.size() );
        if ( setup == split_setup::ip_inductive )
        {
          for ( auto const c : vc )
          {
            CHECK_FALSE( tc.count( c ) );
          }
          CHECK( tr == vr );
          CHECK( vc.size() == 2 ); /* floor(0.33 * 7) */
        }
        else
        {
          for ( auto const x : vr )
          {
            CHECK_FALSE( tr.count( x ) );
          }
          CHECK( tc == vc );
          CHECK( vr.size() == 3 ); /* floor(0.33 * 11) */
        }
      }
    }
  }
}

TEST_CASE( "normalizer", "[data]" )
{
  std::vector<double> const finals = { 2.0, 4.0 };
  auto const n = normalizer::fit( finals );
  CHECK( n.mean == 3.0 );
  CHECK( n.stddev == 1.0 );
  CHECK( n.normalize( 4.0 ) == 1.0 );
  CHECK( n.normalize( n.mean ) == 0.0 );

  std::vector<double> const flat = { 5.0, 5.0, 5.0 };
  CHECK_THROWS_AS( normalizer::fit( flat ), dataset_error );

  rng gen( 3u );
  std::vector<double> vals;
  for ( int i = 0; i < 50; ++i )
  {
    vals.push_back( gen.uniform_real( 1.0, 500.0 ) );
  }
  auto const m = normalizer::fit( vals );
  for ( int i = 0; i < 1000; ++i )
  {
    double const x = gen.uniform_real( -1e4, 1e4 );
    CHECK( std::abs( m.denormalize( m.normalize( x ) ) - x ) <= 1e-9 * std::max( 1.0, std::abs( x ) ) );
  }
}

TEST_CASE( "dataset directories are reproducible", "[data]" )
{
  auto build = [&]( std::filesystem::path const& dir ) {
    stored_dataset s;
    s.circuits = synthetic_corpus( 3, 5u, 50u, 200u );
    s.data = build_dataset( s.circuits, sample_recipes( 4, 3, 5u ), qor_metric::delay );
    s.data.seed = 5u;
    auto const r = split( s.data.samples, { split_setup::recipe_inductive, 0.66, 0.33, 5u } );
    s.split = split_record{ { split_setup::recipe_inductive, 0.66, 0.33, 5u }, r.val_keys };
    std::vector<double> finals;
    for ( auto const i : r.train )
    {
      finals.push_back( s.data.samples[i].final_qor() );
    }
    s.norm = normalizer::fit( finals );
    save_dataset( s, dir );
    return s;
  };
  auto const a_dir = scratch_dir( "ds_a" );
  auto const b_dir = scratch_dir( "ds_b" );
  auto const original = build( a_dir );
  build( b_dir );
  CHECK( slurp( a_dir / "samples.jsonl" ) == slurp( b_dir / "samples.jsonl" ) );
  CHECK( slurp( a_dir / "manifest.json" ) == slurp( b_dir / "manifest.json" ) );

  auto const loaded = load_dataset( a_dir );
  REQUIRE( loaded.circuits.size() == 3 );
  for ( size_t i = 0; i < 3; ++i )
  {
    CHECK( structurally_equal( loaded.circuits[i], original.circuits[i] ) );
  }
  REQUIRE( loaded.data.samples.size() == original.data.samples.size() );
  for ( size_t i = 0; i < loaded.data.samples.size(); ++i )
  {
    CHECK( loaded.data.samples[i].raw == original.data.samples[i].raw );
    CHECK( loaded.data.samples[i].steps == original.data.samples[i].steps );
  }
  REQUIRE( loaded.split.has_value() );
  CHECK( loaded.split->val_keys == original.split->val_keys );
  REQUIRE( loaded.norm.has_value() );
  CHECK( loaded.norm->mean == original.norm->mean );
  CHECK( loaded.norm->stddev == original.norm->stddev );

  std::ofstream( a_dir / "samples.jsonl", std::ios::app ) << "\n";
  CHECK_THROWS_AS( load_dataset( a_dir ), dataset_error );
}

TEST_CASE( "synthetic corpus sizes", "[data]" )
{
  auto const corpus = synthetic_corpus( 20, 7u );
  REQUIRE( corpus.size() == 20 );
  for ( auto const& g : corpus )
  {
    CHECK( g.num_nodes() >= 35 );
    CHECK( g.num_nodes() <= 2600 );
  }
  CHECK( corpus[3].name() == "synth_003" );
}
