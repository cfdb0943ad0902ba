#include <catch_amalgamated.hpp>

#include <lsoformer/aig/random_aig.hpp>
#include <lsoformer/model/attention.hpp>
#include <lsoformer/model/checkpoint.hpp>
#include <lsoformer/model/decoder.hpp>
#include <lsoformer/model/model.hpp>

#include "model_probes.hpp"
#include "reference_eval.hpp"

#include <cmath>
#include <numeric>

using namespace lso;
using namespace lso::nn;
using Catch::Matchers::WithinAbs;

namespace
{

model_config small_config( decoder_kind d, uint32_t m = 4u, uint32_t max_depth = 12u )
{
  model_config cfg;
  cfg.decoder = d;
  cfg.hidden = 4u;
  cfg.heads = 2u;
  cfg.recipe_length = m;
  cfg.max_depth = max_depth;
  cfg.regressor_width = 8u;
  cfg.ffn_width = 16u;
  return cfg;
}

constexpr decoder_kind all_decoders[] = { decoder_kind::transformer, decoder_kind::mlp, decoder_kind::mlp_multitask,
                                          decoder_kind::recurrent };

} // namespace

TEST_CASE( "positional encoding values", "[model]" )
{
  auto const pe = positional_encoding( 10u, 64u, 64u );
  for ( Eigen::Index j = 0; j < 64; ++j )
  {
    CHECK( pe( 0, j ) == ( j % 2 == 0 ? 0.0 : 1.0 ) );
  }
  CHECK_THAT( pe( 1, 0 ), WithinAbs( 0.8414709848078965, 1e-15 ) );
  /* pair k uses frequency 1 / 10000^(k / 32), i.e. exponent 2k over the width */
  for ( int k : { 1, 5, 31 } )
  {
    double const angle = 3.0 / std::pow( 10000.0, static_cast<double>( k ) / 32.0 );
    CHECK_THAT( pe( 3, 2 * k ), WithinAbs( std::sin( angle ), 1e-14 ) );
    CHECK_THAT( pe( 3, 2 * k + 1 ), WithinAbs( std::cos( angle ), 1e-14 ) );
  }
}

TEST_CASE( "token embedding is a row lookup", "[model]" )
{
  matrix table( 7, 3 );
  for ( Eigen::Index i = 0; i < 7; ++i )
  {
    table.row( i ) << static_cast<double>( i ), 10.0 * i, -1.0 * i;
  }
  const_matrix_map const view( table.data(), table.rows(), table.cols() );
  std::vector<uint32_t> tokens{ 3, 0, 6, 3 };
  auto const e = embed_tokens( view, tokens );
  REQUIRE( e.rows() == 4 );
  for ( size_t j = 0; j < tokens.size(); ++j )
  {
    CHECK( e.row( static_cast<Eigen::Index>( j ) ) == table.row( tokens[j] ) );
  }
  std::vector<uint32_t> zeros( 5, 0u );
  auto const z = embed_tokens( view, zeros );
  for ( Eigen::Index j = 1; j < 5; ++j )
  {
    CHECK( z.row( j ) == z.row( 0 ) );
  }
  auto changed = tokens;
  changed[2] = 1u;
  auto const e2 = embed_tokens( view, changed );
  for ( Eigen::Index j = 0; j < 4; ++j )
  {
    CHECK( ( e2.row( j ) == e.row( j ) ) == ( j != 2 ) );
  }
  std::vector<uint32_t> bad{ 7u };
  CHECK_THROWS_AS( embed_tokens( view, bad ), model_error );
}

TEST_CASE( "level pooling arithmetic", "[model]" )
{
  matrix h( 3, 2 );
  h << 1, 3, 3, 1, 5, -2;
  std::vector<std::vector<uint32_t>> levels{ { 0, 1 }, { 2 } };
  pool_cache c;
  auto const p = level_pool( h, levels, 4u, c );
  REQUIRE( p.rows() == 4 );
  REQUIRE( p.cols() == 4 );
  CHECK( p.row( 0 ) == ( Eigen::RowVector4d() << 2, 2, 3, 3 ).finished() );
  CHECK( p.row( 1 ) == ( Eigen::RowVector4d() << 5, -2, 5, -2 ).finished() );
  CHECK( p.row( 2 ).isZero( 0.0 ) );
  CHECK( p.row( 3 ).isZero( 0.0 ) );

  std::vector<std::vector<uint32_t>> swapped{ { 1, 0 }, { 2 } };
  CHECK( level_pool( h, swapped, 4u, c ) == p );
  CHECK_THROWS_AS( level_pool( h, levels, 1u, c ), model_error );
}

TEST_CASE( "causal mask pattern", "[model]" )
{
  auto const m = causal_mask( 4u );
  for ( Eigen::Index i = 0; i < 4; ++i )
  {
    for ( Eigen::Index j = 0; j < 4; ++j )
    {
      if ( j <= i )
      {
        CHECK( m( i, j ) == 0.0 );
      }
      else
      {
        CHECK( std::isinf( m( i, j ) ) );
        CHECK( m( i, j ) < 0.0 );
      }
    }
  }
}

TEST_CASE( "attention weights are causal and normalized", "[model]" )
{
  auto const circuits = shallow_circuits( 3u, 3u, 12u, 11u );
  SECTION( "single step" )
  {
    qor_model model( small_config( decoder_kind::transformer, 1u ), 3u );
    jitter( model, 4u, 1.0 );
    auto const f = featurize( circuits[0] );
    std::vector<uint32_t> t{ 5u };
    auto const tr = model.trace( { &f, t } );
    for ( auto const& w : tr.self_weights )
    {
      REQUIRE( w.rows() == 1 );
      CHECK( w( 0, 0 ) == 1.0 );
    }
  }
  SECTION( "longer recipes" )
  {
    qor_model model( small_config( decoder_kind::transformer, 8u ), 5u );
    jitter( model, 6u, 1.0 );
    rng gen( 9u );
    for ( auto const& g : circuits )
    {
      auto const f = featurize( g );
      auto const t = random_tokens( gen, 8u );
      auto const tr = model.trace( { &f, t } );
      REQUIRE( tr.self_weights.size() == 2u );
      for ( auto const& w : tr.self_weights )
      {
        for ( Eigen::Index i = 0; i < w.rows(); ++i )
        {
          CHECK_THAT( w.row( i ).sum(), WithinAbs( 1.0, 1e-6 ) );
          for ( Eigen::Index j = i + 1; j < w.cols(); ++j )
          {
            CHECK( w( i, j ) <= 1e-7 );
          }
        }
      }
      for ( auto const& w : tr.cross_weights )
      {
        CHECK( w.cols() == 13 );
        for ( Eigen::Index i = 0; i < w.rows(); ++i )
        {
          CHECK_THAT( w.row( i ).sum(), WithinAbs( 1.0, 1e-6 ) );
        }
      }
    }
  }
}

TEST_CASE( "cross-attention over identical levels gives identical rows", "[model]" )
{
  param_store ps;
  auto const att = multi_head_attention::make( ps, "x", param_group::decoder, 8u, 2u );
  rng gen( 1u );
  ps.initialize( gen );
  for ( auto& v : ps.values() )
  {
    v += 0.1 * gen.normal();
  }
  matrix levels( 5, 8 );
  Eigen::RowVectorXd row = Eigen::RowVectorXd::LinSpaced( 8, -1.0, 2.0 );
  levels.rowwise() = row;
  matrix q = matrix::Random( 4, 8 );
  multi_head_attention::cache c;
  auto const kv = att.project( ps, levels );
  auto const out = att.attend( ps, q, kv, false, 5, c );
  REQUIRE( out.rows() == 4 );
  for ( Eigen::Index i = 1; i < 4; ++i )
  {
    CHECK( ( out.row( i ) - out.row( 0 ) ).cwiseAbs().maxCoeff() < 1e-12 );
  }
}

TEST_CASE( "regressor with zero weights returns its bias", "[model]" )
{
  param_store ps;
  auto const r = regressor::make( ps, "r", 8u, 4u );
  rng gen( 2u );
  ps.initialize( gen );
  ps.value( r.hidden.w ).setZero();
  ps.value( r.output.w ).setZero();
  ps.value( r.output.b )( 0, 0 ) = 0.75;
  regressor::cache c;
  auto const y = r.forward( ps, matrix::Random( 6, 8 ), c );
  REQUIRE( y.size() == 6 );
  for ( Eigen::Index k = 0; k < 6; ++k )
  {
    CHECK( y( k ) == 0.75 );
  }
}

TEST_CASE( "graph encoder", "[model]" )
{
  auto const cfg = small_config( decoder_kind::transformer );
  param_store ps;
  auto const enc = gcn_encoder::make( ps, cfg );
  rng gen( 5u );
  ps.initialize( gen );

  SECTION( "zero weights give zero embeddings" )
  {
    param_store zero = ps;
    std::fill( zero.values().begin(), zero.values().end(), 0.0 );
    std::vector<aig_node> nodes{ { node_kind::input, 0u, "a" }, { node_kind::output, 0u, "y" } };
    std::vector<aig_edge> edges{ { 0u, 1u, polarity::inverter } };
    aig_graph const g( "one", nodes, edges );
    gcn_encoder::cache c;
    auto const h = enc.forward( zero, featurize( g ), c );
    CHECK( h.rows() == 2 );
    CHECK( h.isZero( 0.0 ) );
  }
  SECTION( "node permutation permutes rows" )
  {
    for ( uint64_t seed = 0; seed < 5u; ++seed )
    {
      random_aig_params p;
      p.num_inputs = 6u;
      p.num_ands = 40u;
      auto const g = random_aig( p, seed );
      std::vector<uint32_t> perm( g.num_nodes() );
      std::iota( perm.begin(), perm.end(), 0u );
      rng shuffler( seed + 100u );
      shuffler.shuffle( perm );
      auto const pg = permute_nodes( g, perm );
      gcn_encoder::cache c1, c2;
      auto const h = enc.forward( ps, featurize( g ), c1 );
      auto const ph = enc.forward( ps, featurize( pg ), c2 );
      for ( uint32_t i = 0; i < perm.size(); ++i )
      {
        CHECK( ( ph.row( i ) - h.row( perm[i] ) ).cwiseAbs().maxCoeff() < 1e-12 );
      }
    }
  }
  SECTION( "large circuit stays finite" )
  {
    auto const g = random_benchmark_circuit( 2000u, 3u );
    gcn_encoder::cache c;
    auto const h = enc.forward( ps, featurize( g ), c );
    CHECK( h.rows() == static_cast<Eigen::Index>( g.num_nodes() ) );
    CHECK( h.allFinite() );
  }
}

TEST_CASE( "full forward is invariant to node storage order", "[model]" )
{
  for ( auto const d : all_decoders )
  {
    qor_model model( small_config( d, 6u, 40u ), 21u );
    jitter( model, 22u );
    random_aig_params p;
    p.num_inputs = 8u;
    p.num_ands = 60u;
    auto const g = random_aig( p, 17u );
    std::vector<uint32_t> perm( g.num_nodes() );
    std::iota( perm.begin(), perm.end(), 0u );
    rng shuffler( 18u );
    shuffler.shuffle( perm );
    auto const f1 = featurize( g );
    auto const f2 = featurize( permute_nodes( g, perm ) );
    std::vector<uint32_t> t{ 0, 3, 1, 6, 2, 2 };
    auto const y1 = model.predict( { &f1, t } );
    auto const y2 = model.predict( { &f2, t } );
    CHECK( ( y1 - y2 ).norm() <= 1e-9 * std::max( 1.0, y1.norm() ) );
    CHECK( y1.allFinite() );
  }
}

TEST_CASE( "trajectory decoders are causal", "[model]" )
{
  auto const circuits = shallow_circuits( 4u, 3u, 12u, 31u );
  std::vector<circuit_features> feats;
  for ( auto const& g : circuits )
  {
    feats.push_back( featurize( g ) );
  }
  for ( auto const d : { decoder_kind::transformer, decoder_kind::recurrent } )
  {
    qor_model model( small_config( d, 6u ), 7u );
    jitter( model, 8u );
    auto const st = causality_probe( model, feats, 20u, 9u );
    CHECK( st.probes == 120u );
    CHECK( st.prefix_changes == 0u );
    CHECK( st.step_changes >= st.probes * 9u / 10u );
  }
}

TEST_CASE( "padding levels only matter through their attention mass", "[model]" )
{
  auto const g = shallow_circuits( 1u, 5u, 8u, 41u ).front();
  auto const f = featurize( g );
  std::vector<uint32_t> t{ 4, 1, 1, 0 };

  auto tight_cfg = small_config( decoder_kind::transformer, 4u, f.depth );
  qor_model tight( tight_cfg, 2u );
  jitter( tight, 3u );

  auto padded_cfg = tight_cfg;
  padded_cfg.max_depth = f.depth + 6u;
  qor_model padded( padded_cfg, 2u );
  padded.params().values() = tight.params().values();
  padded_cfg.padding_mask = true;
  qor_model masked( padded_cfg, 2u );
  masked.params().values() = tight.params().values();

  auto const y = tight.predict( { &f, t } );
  auto const ym = masked.predict( { &f, t } );
  auto const yp = padded.predict( { &f, t } );
  CHECK( ( y - ym ).cwiseAbs().maxCoeff() < 1e-12 );
  CHECK( ( y - yp ).cwiseAbs().maxCoeff() > 1e-9 );
  CHECK( yp.allFinite() );
}

TEST_CASE( "baseline decoder shapes", "[model]" )
{
  auto const f = featurize( shallow_circuits( 1u, 3u, 12u, 51u ).front() );
  std::vector<uint32_t> t{ 1, 2, 3, 4, 5 };
  qor_model mlp( small_config( decoder_kind::mlp, 5u ), 1u );
  qor_model multi( small_config( decoder_kind::mlp_multitask, 5u ), 1u );
  CHECK( mlp.predict( { &f, t } ).size() == 1 );
  CHECK( multi.predict( { &f, t } ).size() == 5 );
  /* identical recipe features, identical prediction */
  auto const t2 = t;
  CHECK( mlp.predict( { &f, t2 } ) == mlp.predict( { &f, t } ) );

  std::vector<uint32_t> short_recipe{ 1, 2 };
  CHECK_THROWS_AS( mlp.predict( { &f, short_recipe } ), model_error );
}

TEST_CASE( "analytic gradients match finite differences", "[model][gradient]" )
{
  auto cfg = small_config( decoder_kind::transformer, 4u, 6u );
  for ( auto const d : all_decoders )
  {
    cfg.decoder = d;
    for ( auto const mode : { loss_mode::trajectory, loss_mode::final_only } )
    {
      auto const errors = gradient_check( cfg, 61u, mode );
      for ( auto const& e : errors )
      {
        INFO( decoder_name( d ) << " " << loss_mode_name( mode ) << " " << e.name );
        CHECK( e.relative <= 1e-4 );
      }
    }
  }
  SECTION( "padding mask and deeper stacks" )
  {
    cfg.decoder = decoder_kind::transformer;
    cfg.padding_mask = true;
    cfg.decoder_layers = 2u;
    cfg.gcn_layers = 3u;
    for ( auto const& e : gradient_check( cfg, 62u, loss_mode::trajectory ) )
    {
      INFO( e.name );
      CHECK( e.relative <= 1e-4 );
    }
  }
}

TEST_CASE( "checkpoint round trip", "[model]" )
{
  auto const circuits = shallow_circuits( 2u, 3u, 12u, 71u );
  for ( auto const d : all_decoders )
  {
    qor_model model( small_config( d, 5u ), 13u );
    jitter( model, 14u );
    auto const bytes = serialize_checkpoint( model, R"({"note":"x"})" );
    auto const back = deserialize_checkpoint( bytes );
    CHECK( back.metadata == R"({"note":"x"})" );
    CHECK( back.model->config() == model.config() );
    CHECK( back.model->params().values() == model.params().values() );
    std::vector<uint32_t> t{ 6, 0, 2, 2, 5 };
    for ( auto const& g : circuits )
    {
      auto const f = featurize( g );
      auto const a = model.predict( { &f, t } );
      auto const b = back.model->predict( { &f, t } );
      CHECK( std::memcmp( a.data(), b.data(), sizeof( double ) * static_cast<size_t>( a.size() ) ) == 0 );
    }
    CHECK( serialize_checkpoint( *back.model, back.metadata ) == bytes );
  }
  qor_model model( small_config( decoder_kind::transformer ), 1u );
  auto bytes = serialize_checkpoint( model );
  CHECK_THROWS_AS( deserialize_checkpoint( bytes.substr( 0, bytes.size() - 3u ) ), model_error );
  bytes[0] = 'X';
  CHECK_THROWS_AS( deserialize_checkpoint( bytes ), model_error );
}

TEST_CASE( "initialization is seeded", "[model]" )
{
  auto const cfg = small_config( decoder_kind::transformer );
  CHECK( qor_model( cfg, 5u ).params().values() == qor_model( cfg, 5u ).params().values() );
  CHECK( qor_model( cfg, 5u ).params().values() != qor_model( cfg, 6u ).params().values() );
}
