#pragma once

#include <lsoformer/model/params.hpp>

#include <cmath>

namespace lso::nn
{

/* Row-major convention: a batch of vectors is a matrix with one vector per
 * row. Linear layers compute X W + b with W (in x out) and b (1 x out). */

struct linear
{
  param_store::handle w;
  param_store::handle b;

  static linear make( param_store& ps, std::string const& prefix, param_group g, uint32_t in, uint32_t out )
  {
    return { ps.add( prefix + ".w", g, in, out ), ps.add( prefix + ".b", g, 1u, out, init_kind::zeros ) };
  }

  matrix forward( param_store const& ps, matrix const& x ) const
  {
    matrix y = x * ps.value( w );
    y.rowwise() += ps.value( b ).row( 0 );
    return y;
  }

  /// Accumulates parameter gradients; returns dL/dx.
  matrix backward( param_store& ps, matrix const& x, matrix const& dy ) const
  {
    ps.grad( w ).noalias() += x.transpose() * dy;
    ps.grad( b ) += dy.colwise().sum();
    return dy * ps.value( w ).transpose();
  }
};

inline matrix relu( matrix const& x )
{
  return x.cwiseMax( 0.0 );
}

/// dL/dx of relu given the pre-activation `x`.
inline matrix relu_backward( matrix const& x, matrix const& dy )
{
  return ( x.array() > 0.0 ).select( dy, 0.0 );
}

struct layer_norm
{
  static constexpr double eps = 1e-5;

  param_store::handle gamma;
  param_store::handle beta;

  struct cache
  {
    matrix xhat;
    Eigen::VectorXd inv_std;
  };

  static layer_norm make( param_store& ps, std::string const& prefix, param_group g, uint32_t width )
  {
    return { ps.add( prefix + ".gamma", g, 1u, width, init_kind::ones ), ps.add( prefix + ".beta", g, 1u, width, init_kind::zeros ) };
  }

  matrix forward( param_store const& ps, matrix const& x, cache& c ) const
  {
    auto const n = static_cast<double>( x.cols() );
    c.xhat.resize( x.rows(), x.cols() );
    c.inv_std.resize( x.rows() );
    for ( Eigen::Index r = 0; r < x.rows(); ++r )
    {
      double const mean = x.row( r ).sum() / n;
      double const var = ( x.row( r ).array() - mean ).square().sum() / n;
      c.inv_std( r ) = 1.0 / std::sqrt( var + eps );
      c.xhat.row( r ) = ( x.row( r ).array() - mean ) * c.inv_std( r );
    }
    matrix y = c.xhat.array().rowwise() * ps.value( gamma ).row( 0 ).array();
    y.rowwise() += ps.value( beta ).row( 0 );
    return y;
  }

  matrix backward( param_store& ps, cache const& c, matrix const& dy ) const
  {
    ps.grad( gamma ) += ( dy.array() * c.xhat.array() ).colwise().sum().matrix();
    ps.grad( beta ) += dy.colwise().sum();
    matrix const dxhat = dy.array().rowwise() * ps.value( gamma ).row( 0 ).array();
    auto const n = static_cast<double>( dy.cols() );
    matrix dx( dy.rows(), dy.cols() );
    for ( Eigen::Index r = 0; r < dy.rows(); ++r )
    {
      double const s1 = dxhat.row( r ).sum();
      double const s2 = dxhat.row( r ).dot( c.xhat.row( r ) );
      dx.row( r ) = ( c.inv_std( r ) / n ) * ( n * dxhat.row( r ).array() - s1 - c.xhat.row( r ).array() * s2 );
    }
    return dx;
  }
};

} // namespace lso::nn
