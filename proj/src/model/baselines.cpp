#include <lsoformer/model/baselines.hpp>

#include <cmath>

namespace lso::nn
{

namespace
{

double sigmoid( double x )
{
  return 1.0 / ( 1.0 + std::exp( -x ) );
}

} // namespace

lstm lstm::make( param_store& ps, std::string const& prefix, uint32_t width )
{
  lstm l;
  l.init = linear::make( ps, prefix + ".init", param_group::decoder, width, width );
  l.wx = ps.add( prefix + ".wx", param_group::decoder, width, 4u * width );
  l.wh = ps.add( prefix + ".wh", param_group::decoder, width, 4u * width );
  l.b = ps.add( prefix + ".b", param_group::decoder, 1u, 4u * width, init_kind::constant_one_bias );
  return l;
}

matrix lstm::forward( param_store const& ps, matrix const& graph, matrix const& x, cache& c ) const
{
  auto const steps = x.rows();
  auto const w = x.cols();
  c.x = x;
  c.h0_pre = init.forward( ps, graph ).row( 0 );
  c.h.resize( steps + 1, w );
  c.c = matrix::Zero( steps + 1, w );
  c.gates.resize( steps, 4 * w );
  c.h.row( 0 ) = c.h0_pre.array().tanh();

  matrix const xw = x * ps.value( wx );
  for ( Eigen::Index t = 0; t < steps; ++t )
  {
    Eigen::RowVectorXd z = xw.row( t ) + c.h.row( t ) * ps.value( wh ) + ps.value( b ).row( 0 );
    for ( Eigen::Index k = 0; k < w; ++k )
    {
      z( k ) = sigmoid( z( k ) );
      z( w + k ) = sigmoid( z( w + k ) );
      z( 2 * w + k ) = std::tanh( z( 2 * w + k ) );
      z( 3 * w + k ) = sigmoid( z( 3 * w + k ) );
    }
    c.gates.row( t ) = z;
    c.c.row( t + 1 ) = z.segment( w, w ).cwiseProduct( c.c.row( t ) ) + z.head( w ).cwiseProduct( z.segment( 2 * w, w ) );
    c.h.row( t + 1 ) = z.segment( 3 * w, w ).array() * c.c.row( t + 1 ).array().tanh();
  }
  return c.h.bottomRows( steps );
}

std::pair<matrix, matrix> lstm::backward( param_store& ps, matrix const& graph, cache const& c, matrix const& dh ) const
{
  auto const steps = c.x.rows();
  auto const w = c.x.cols();
  matrix dz( steps, 4 * w );
  Eigen::RowVectorXd dh_next = Eigen::RowVectorXd::Zero( w );
  Eigen::RowVectorXd dc_next = Eigen::RowVectorXd::Zero( w );
  for ( Eigen::Index t = steps; t-- > 0; )
  {
    auto const g = c.gates.row( t );
    Eigen::RowVectorXd const tc = c.c.row( t + 1 ).array().tanh();
    Eigen::RowVectorXd const dht = dh.row( t ) + dh_next;
    Eigen::RowVectorXd const dct = dc_next.array() + dht.array() * g.segment( 3 * w, w ).array() * ( 1.0 - tc.array().square() );
    Eigen::RowVectorXd d( 4 * w );
    d.head( w ) = dct.array() * g.segment( 2 * w, w ).array() * g.head( w ).array() * ( 1.0 - g.head( w ).array() );
    d.segment( w, w ) = dct.array() * c.c.row( t ).array() * g.segment( w, w ).array() * ( 1.0 - g.segment( w, w ).array() );
    d.segment( 2 * w, w ) = dct.array() * g.head( w ).array() * ( 1.0 - g.segment( 2 * w, w ).array().square() );
    d.segment( 3 * w, w ) = dht.array() * tc.array() * g.segment( 3 * w, w ).array() * ( 1.0 - g.segment( 3 * w, w ).array() );
    dz.row( t ) = d;
    dh_next = d * ps.value( wh ).transpose();
    dc_next = dct.cwiseProduct( g.segment( w, w ) );
  }
  ps.grad( wx ).noalias() += c.x.transpose() * dz;
  ps.grad( wh ).noalias() += c.h.topRows( steps ).transpose() * dz;
  ps.grad( b ) += dz.colwise().sum();
  matrix const dx = dz * ps.value( wx ).transpose();

  matrix const dh0_pre = ( dh_next.array() * ( 1.0 - c.h.row( 0 ).array().square() ) ).matrix();
  matrix const dgraph = init.backward( ps, graph, dh0_pre );
  return { dgraph, dx };
}

} // namespace lso::nn
