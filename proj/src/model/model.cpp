#include <lsoformer/model/model.hpp>

#include <lsoformer/util/rng.hpp>

#include <map>

namespace lso::nn
{

struct qor_model::graph_state
{
  gcn_encoder::cache gcn;
  matrix h;
  pool_cache pool;
  matrix pooled;
  std::vector<multi_head_attention::kv> kv;

  matrix dpooled;
  std::vector<multi_head_attention::kv> dkv;
};

struct qor_model::sample_state
{
  std::vector<uint32_t> tokens;
  matrix x0;
  std::vector<decoder_block::cache> blocks;
  matrix trunk_in, trunk_pre, trunk_act;
  std::vector<regressor::cache> heads;
  lstm::cache rnn;
};

qor_model::qor_model( model_config const& cfg, uint64_t seed ) : cfg_( cfg )
{
  cfg_.validate();
  auto const w = cfg_.width();
  auto const m = cfg_.recipe_length;

  gcn_ = gcn_encoder::make( params_, cfg_ );
  token_table_ = params_.add( "token_table", param_group::recipe_encoder, cfg_.vocab, w );
  switch ( cfg_.decoder )
  {
  case decoder_kind::transformer:
    for ( uint32_t b = 0; b < cfg_.decoder_layers; ++b )
    {
      blocks_.push_back( decoder_block::make( params_, "block" + std::to_string( b ), cfg_ ) );
    }
    head_ = regressor::make( params_, "regressor", w, cfg_.regressor_width );
    pe_ = positional_encoding( m, w, cfg_.pe_denominator() );
    break;
  case decoder_kind::mlp:
  case decoder_kind::mlp_multitask:
    trunk_ = linear::make( params_, "trunk", param_group::decoder, w + m * w, cfg_.regressor_width );
    if ( cfg_.decoder == decoder_kind::mlp )
    {
      head_ = regressor::make( params_, "regressor", cfg_.regressor_width, cfg_.regressor_width );
    }
    else
    {
      for ( uint32_t k = 0; k < m; ++k )
      {
        task_heads_.push_back( regressor::make( params_, "task" + std::to_string( k ), cfg_.regressor_width, cfg_.regressor_width ) );
      }
    }
    break;
  case decoder_kind::recurrent:
    lstm_ = lstm::make( params_, "lstm", w );
    head_ = regressor::make( params_, "regressor", w, cfg_.regressor_width );
    break;
  }

  rng gen( derive_seed( seed, 0x1a17 ) );
  params_.initialize( gen );
}

void qor_model::encode( circuit_features const& f, graph_state& g ) const
{
  g.h = gcn_.forward( params_, f, g.gcn );
  if ( cfg_.decoder == decoder_kind::transformer )
  {
    g.pooled = level_pool( g.h, f.levels, cfg_.num_levels(), g.pool );
    g.kv.clear();
    for ( auto const& b : blocks_ )
    {
      g.kv.push_back( b.cross_attn.project( params_, g.pooled ) );
    }
  }
  else
  {
    g.pooled = global_pool( g.h, g.pool );
  }
}

Eigen::VectorXd qor_model::decode( graph_state const& g, std::span<uint32_t const> tokens, sample_state& s ) const
{
  if ( tokens.size() != cfg_.recipe_length )
  {
    throw model_error( "recipe length " + std::to_string( tokens.size() ) + " differs from the model's " +
                       std::to_string( cfg_.recipe_length ) );
  }
  s.tokens.assign( tokens.begin(), tokens.end() );
  matrix const emb = embed_tokens( params_.value( token_table_ ), tokens );
  auto const w = static_cast<Eigen::Index>( cfg_.width() );

  switch ( cfg_.decoder )
  {
  case decoder_kind::transformer:
  {
    s.x0 = emb + pe_;
    s.blocks.resize( blocks_.size() );
    matrix x = s.x0;
    auto const valid = cfg_.padding_mask ? static_cast<Eigen::Index>( g.pool.counts.size() ) : g.pooled.rows();
    for ( size_t b = 0; b < blocks_.size(); ++b )
    {
      x = blocks_[b].forward( params_, x, g.kv[b], valid, s.blocks[b] );
    }
    s.heads.resize( 1 );
    return head_.forward( params_, x, s.heads[0] );
  }
  case decoder_kind::mlp:
  case decoder_kind::mlp_multitask:
  {
    s.trunk_in.resize( 1, w + emb.size() );
    s.trunk_in.leftCols( w ) = g.pooled;
    for ( Eigen::Index j = 0; j < emb.rows(); ++j )
    {
      s.trunk_in.block( 0, w + j * w, 1, w ) = emb.row( j );
    }
    s.trunk_pre = trunk_.forward( params_, s.trunk_in );
    s.trunk_act = relu( s.trunk_pre );
    if ( cfg_.decoder == decoder_kind::mlp )
    {
      s.heads.resize( 1 );
      return head_.forward( params_, s.trunk_act, s.heads[0] );
    }
    s.heads.resize( task_heads_.size() );
    Eigen::VectorXd y( task_heads_.size() );
    for ( size_t k = 0; k < task_heads_.size(); ++k )
    {
      y( static_cast<Eigen::Index>( k ) ) = task_heads_[k].forward( params_, s.trunk_act, s.heads[k] )( 0 );
    }
    return y;
  }
  case decoder_kind::recurrent:
  {
    s.x0 = emb;
    matrix const h = lstm_.forward( params_, g.pooled, emb, s.rnn );
    s.heads.resize( 1 );
    return head_.forward( params_, h, s.heads[0] );
  }
  }
  return {};
}

void qor_model::decode_backward( graph_state& g, sample_state const& s, Eigen::VectorXd const& dy )
{
  auto const w = static_cast<Eigen::Index>( cfg_.width() );
  matrix demb;
  switch ( cfg_.decoder )
  {
  case decoder_kind::transformer:
  {
    matrix dx = head_.backward( params_, s.heads[0], dy );
    for ( size_t b = blocks_.size(); b-- > 0; )
    {
      dx = blocks_[b].backward( params_, g.kv[b], s.blocks[b], dx, g.dkv[b] );
    }
    demb = dx;
    break;
  }
  case decoder_kind::mlp:
  case decoder_kind::mlp_multitask:
  {
    matrix dact;
    if ( cfg_.decoder == decoder_kind::mlp )
    {
      dact = head_.backward( params_, s.heads[0], dy );
    }
    else
    {
      dact = matrix::Zero( 1, s.trunk_act.cols() );
      for ( size_t k = 0; k < task_heads_.size(); ++k )
      {
        Eigen::VectorXd const d = Eigen::VectorXd::Constant( 1, dy( static_cast<Eigen::Index>( k ) ) );
        dact += task_heads_[k].backward( params_, s.heads[k], d );
      }
    }
    matrix const din = trunk_.backward( params_, s.trunk_in, relu_backward( s.trunk_pre, dact ) );
    g.dpooled += din.leftCols( w );
    demb.resize( static_cast<Eigen::Index>( s.tokens.size() ), w );
    for ( Eigen::Index j = 0; j < demb.rows(); ++j )
    {
      demb.row( j ) = din.block( 0, w + j * w, 1, w );
    }
    break;
  }
  case decoder_kind::recurrent:
  {
    matrix const dh = head_.backward( params_, s.heads[0], dy );
    auto [dgraph, dx] = lstm_.backward( params_, g.pooled, s.rnn, dh );
    g.dpooled += dgraph;
    demb = dx;
    break;
  }
  }
  auto table = params_.grad( token_table_ );
  for ( size_t j = 0; j < s.tokens.size(); ++j )
  {
    table.row( s.tokens[j] ) += demb.row( static_cast<Eigen::Index>( j ) );
  }
}

void qor_model::encode_backward( circuit_features const& f, graph_state& g, bool train_graph_encoder )
{
  matrix dpooled = g.dpooled;
  for ( size_t b = 0; b < g.dkv.size(); ++b )
  {
    dpooled += blocks_[b].cross_attn.project_backward( params_, g.pooled, g.dkv[b] );
  }
  if ( !train_graph_encoder )
  {
    return;
  }
  matrix const dh = cfg_.decoder == decoder_kind::transformer ? level_pool_backward( f.levels, g.pool, dpooled, g.h.rows() )
                                                              : global_pool_backward( g.pool, dpooled, g.h.rows() );
  gcn_.backward( params_, f, g.gcn, dh );
}

std::vector<Eigen::VectorXd> qor_model::predict( std::span<model_input const> batch ) const
{
  std::vector<Eigen::VectorXd> out( batch.size() );
  std::map<circuit_features const*, graph_state> graphs;
  for ( size_t i = 0; i < batch.size(); ++i )
  {
    auto [it, fresh] = graphs.try_emplace( batch[i].circuit );
    if ( fresh )
    {
      encode( *batch[i].circuit, it->second );
    }
    sample_state s;
    out[i] = decode( it->second, batch[i].tokens, s );
  }
  return out;
}

Eigen::VectorXd qor_model::predict( model_input const& input ) const
{
  return predict( std::span<model_input const>( &input, 1u ) )[0];
}

double qor_model::backprop( std::span<model_input const> batch, loss_fn const& loss, bool train_graph_encoder )
{
  /* circuits in order of first appearance, so accumulation order is fixed */
  std::vector<circuit_features const*> order;
  std::map<circuit_features const*, graph_state> graphs;
  for ( auto const& in : batch )
  {
    auto [it, fresh] = graphs.try_emplace( in.circuit );
    if ( fresh )
    {
      order.push_back( in.circuit );
      auto& g = it->second;
      encode( *in.circuit, g );
      g.dpooled = matrix::Zero( g.pooled.rows(), g.pooled.cols() );
      for ( auto const& kv : g.kv )
      {
        g.dkv.push_back( { matrix::Zero( kv.k.rows(), kv.k.cols() ), matrix::Zero( kv.v.rows(), kv.v.cols() ) } );
      }
    }
  }

  double total = 0.0;
  sample_state s;
  for ( size_t i = 0; i < batch.size(); ++i )
  {
    auto& g = graphs.at( batch[i].circuit );
    Eigen::VectorXd const y = decode( g, batch[i].tokens, s );
    Eigen::VectorXd dy = Eigen::VectorXd::Zero( y.size() );
    total += loss( i, y, dy );
    decode_backward( g, s, dy );
  }
  for ( auto const* f : order )
  {
    encode_backward( *f, graphs.at( f ), train_graph_encoder );
  }
  return total;
}

forward_trace qor_model::trace( model_input const& input ) const
{
  graph_state g;
  encode( *input.circuit, g );
  sample_state s;
  forward_trace t;
  t.prediction = decode( g, input.tokens, s );
  t.levels = g.pooled;
  t.recipe = s.x0;
  for ( auto const& b : s.blocks )
  {
    t.self_weights.insert( t.self_weights.end(), b.sa.weights.begin(), b.sa.weights.end() );
    t.cross_weights.insert( t.cross_weights.end(), b.ca.weights.begin(), b.ca.weights.end() );
  }
  if ( !s.heads.empty() )
  {
    t.decoded = s.heads[0].x;
  }
  return t;
}

} // namespace lso::nn
