#include <lsoformer/model/attention.hpp>

#include <cmath>
#include <limits>

namespace lso::nn
{

matrix causal_mask( uint32_t size )
{
  matrix m = matrix::Zero( size, size );
  for ( uint32_t i = 0; i < size; ++i )
  {
    for ( uint32_t j = i + 1u; j < size; ++j )
    {
      m( i, j ) = -std::numeric_limits<double>::infinity();
    }
  }
  return m;
}

multi_head_attention multi_head_attention::make( param_store& ps, std::string const& prefix, param_group g, uint32_t width, uint32_t heads )
{
  if ( heads == 0u || width % heads != 0u )
  {
    throw model_error( "heads must divide the attention width" );
  }
  multi_head_attention a;
  a.wq = ps.add( prefix + ".wq", g, width, width );
  a.wk = ps.add( prefix + ".wk", g, width, width );
  a.wv = ps.add( prefix + ".wv", g, width, width );
  a.out = linear::make( ps, prefix + ".wo", g, width, width );
  a.heads = heads;
  return a;
}

multi_head_attention::kv multi_head_attention::project( param_store const& ps, matrix const& x_kv ) const
{
  return { x_kv * ps.value( wk ), x_kv * ps.value( wv ) };
}

matrix multi_head_attention::attend( param_store const& ps, matrix const& x_q, kv const& keys, bool causal, Eigen::Index valid_keys,
                                     cache& c ) const
{
  auto const width = x_q.cols();
  if ( keys.k.cols() != width )
  {
    throw model_error( "query and key widths differ" );
  }
  auto const dk = width / heads;
  double const scale = 1.0 / std::sqrt( static_cast<double>( dk ) );
  auto const rows = x_q.rows();
  auto const cols = std::min<Eigen::Index>( valid_keys, keys.k.rows() );

  c.q = x_q * ps.value( wq );
  c.concat.resize( rows, width );
  c.weights.assign( heads, matrix::Zero( rows, keys.k.rows() ) );
  for ( uint32_t h = 0; h < heads; ++h )
  {
    auto const q = c.q.middleCols( h * dk, dk );
    auto const k = keys.k.middleCols( h * dk, dk );
    auto& p = c.weights[h];
    for ( Eigen::Index i = 0; i < rows; ++i )
    {
      auto const visible = causal ? std::min( cols, i + 1 ) : cols;
      Eigen::RowVectorXd s = ( q.row( i ) * k.topRows( visible ).transpose() ) * scale;
      s.array() -= s.maxCoeff();
      s = s.array().exp();
      p.row( i ).head( visible ) = s / s.sum();
    }
    c.concat.middleCols( h * dk, dk ) = p * keys.v.middleCols( h * dk, dk );
  }
  return out.forward( ps, c.concat );
}

matrix multi_head_attention::attend_backward( param_store& ps, matrix const& x_q, kv const& keys, cache const& c, matrix const& dout,
                                              kv& dkeys ) const
{
  auto const width = x_q.cols();
  auto const dk = width / heads;
  double const scale = 1.0 / std::sqrt( static_cast<double>( dk ) );

  matrix const dconcat = out.backward( ps, c.concat, dout );
  matrix dq( x_q.rows(), width );
  for ( uint32_t h = 0; h < heads; ++h )
  {
    auto const& p = c.weights[h];
    auto const dh = dconcat.middleCols( h * dk, dk );
    auto const v = keys.v.middleCols( h * dk, dk );
    dkeys.v.middleCols( h * dk, dk ).noalias() += p.transpose() * dh;
    matrix const dp = dh * v.transpose();
    /* softmax backward; masked entries have p = 0 and receive no gradient */
    Eigen::VectorXd const inner = ( dp.array() * p.array() ).rowwise().sum();
    matrix const ds = ( p.array() * ( dp.colwise() - inner ).array() ) * scale;
    dq.middleCols( h * dk, dk ) = ds * keys.k.middleCols( h * dk, dk );
    dkeys.k.middleCols( h * dk, dk ).noalias() += ds.transpose() * c.q.middleCols( h * dk, dk );
  }
  ps.grad( wq ).noalias() += x_q.transpose() * dq;
  return dq * ps.value( wq ).transpose();
}

matrix multi_head_attention::project_backward( param_store& ps, matrix const& x_kv, kv const& dkeys ) const
{
  ps.grad( wk ).noalias() += x_kv.transpose() * dkeys.k;
  ps.grad( wv ).noalias() += x_kv.transpose() * dkeys.v;
  return dkeys.k * ps.value( wk ).transpose() + dkeys.v * ps.value( wv ).transpose();
}

} // namespace lso::nn
