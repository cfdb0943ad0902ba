#include <lsoformer/model/decoder.hpp>

#include <cmath>

namespace lso::nn
{

matrix positional_encoding( uint32_t rows, uint32_t width, uint32_t dim )
{
  matrix pe( rows, width );
  for ( uint32_t m = 0; m < rows; ++m )
  {
    for ( uint32_t i = 0; i < width; ++i )
    {
      double const k = static_cast<double>( i / 2u );
      double const angle = static_cast<double>( m ) / std::pow( 10000.0, 2.0 * k / static_cast<double>( dim ) );
      pe( m, i ) = ( i % 2u == 0u ) ? std::sin( angle ) : std::cos( angle );
    }
  }
  return pe;
}

matrix embed_tokens( const_matrix_map const& table, std::span<uint32_t const> tokens )
{
  matrix out( static_cast<Eigen::Index>( tokens.size() ), table.cols() );
  for ( size_t j = 0; j < tokens.size(); ++j )
  {
    if ( tokens[j] >= table.rows() )
    {
      throw model_error( "token " + std::to_string( tokens[j] ) + " out of range" );
    }
    out.row( static_cast<Eigen::Index>( j ) ) = table.row( tokens[j] );
  }
  return out;
}

decoder_block decoder_block::make( param_store& ps, std::string const& prefix, model_config const& cfg )
{
  auto const w = cfg.width();
  decoder_block b;
  /* the masked self-attention contextualizes the recipe and belongs to the recipe encoder */
  b.self_attn = multi_head_attention::make( ps, prefix + ".self", param_group::recipe_encoder, w, cfg.heads );
  b.ln1 = layer_norm::make( ps, prefix + ".ln1", param_group::recipe_encoder, w );
  b.cross_attn = multi_head_attention::make( ps, prefix + ".cross", param_group::decoder, w, cfg.heads );
  b.ln2 = layer_norm::make( ps, prefix + ".ln2", param_group::decoder, w );
  b.ffn1 = linear::make( ps, prefix + ".ffn1", param_group::decoder, w, cfg.ffn() );
  b.ffn2 = linear::make( ps, prefix + ".ffn2", param_group::decoder, cfg.ffn(), w );
  b.ln3 = layer_norm::make( ps, prefix + ".ln3", param_group::decoder, w );
  return b;
}

matrix decoder_block::forward( param_store const& ps, matrix const& x, multi_head_attention::kv const& levels,
                               Eigen::Index valid_levels, cache& c ) const
{
  c.x = x;
  c.self_kv = self_attn.project( ps, x );
  matrix const a1 = self_attn.attend( ps, x, c.self_kv, true, x.rows(), c.sa );
  c.x1 = ln1.forward( ps, x + a1, c.n1 );
  matrix const a2 = cross_attn.attend( ps, c.x1, levels, false, valid_levels, c.ca );
  c.x2 = ln2.forward( ps, c.x1 + a2, c.n2 );
  c.f_pre = ffn1.forward( ps, c.x2 );
  c.f_act = relu( c.f_pre );
  matrix const f = ffn2.forward( ps, c.f_act );
  return ln3.forward( ps, c.x2 + f, c.n3 );
}

matrix decoder_block::backward( param_store& ps, multi_head_attention::kv const& levels, cache const& c, matrix const& dout,
                                multi_head_attention::kv& dlevels ) const
{
  matrix const ds3 = ln3.backward( ps, c.n3, dout );
  matrix const dact = ffn2.backward( ps, c.f_act, ds3 );
  matrix dx2 = ds3 + ffn1.backward( ps, c.x2, relu_backward( c.f_pre, dact ) );

  matrix const ds2 = ln2.backward( ps, c.n2, dx2 );
  matrix dx1 = ds2 + cross_attn.attend_backward( ps, c.x1, levels, c.ca, ds2, dlevels );

  matrix const ds1 = ln1.backward( ps, c.n1, dx1 );
  multi_head_attention::kv dself{ matrix::Zero( c.x.rows(), c.x.cols() ), matrix::Zero( c.x.rows(), c.x.cols() ) };
  matrix dx = ds1 + self_attn.attend_backward( ps, c.x, c.self_kv, c.sa, ds1, dself );
  dx += self_attn.project_backward( ps, c.x, dself );
  return dx;
}

regressor regressor::make( param_store& ps, std::string const& prefix, uint32_t in, uint32_t width )
{
  return { linear::make( ps, prefix + ".hidden", param_group::regressor, in, width ),
           linear::make( ps, prefix + ".out", param_group::regressor, width, 1u ) };
}

Eigen::VectorXd regressor::forward( param_store const& ps, matrix const& x, cache& c ) const
{
  c.x = x;
  c.pre = hidden.forward( ps, x );
  c.act = relu( c.pre );
  return output.forward( ps, c.act ).col( 0 );
}

matrix regressor::backward( param_store& ps, cache const& c, Eigen::VectorXd const& dy ) const
{
  matrix const dact = output.backward( ps, c.act, dy );
  return hidden.backward( ps, c.x, relu_backward( c.pre, dact ) );
}

} // namespace lso::nn
