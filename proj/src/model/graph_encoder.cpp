#include <lsoformer/model/graph_encoder.hpp>

#include <lsoformer/aig/levelize.hpp>

#include <cmath>

namespace lso::nn
{

circuit_features featurize( aig_graph const& g )
{
  circuit_features f;
  auto const n = g.num_nodes();
  f.num_nodes = n;

  f.features = matrix::Zero( n, node_feature_width );
  for ( uint32_t v = 0; v < n; ++v )
  {
    auto const& node = g.node( v );
    if ( node.kind != node_kind::constant )
    {
      f.features( v, static_cast<int>( node.kind ) ) = 1.0;
    }
    f.features( v, 3 + node.inverted_preds ) = 1.0;
  }

  std::vector<double> degree( n, 1.0 );
  for ( auto const& e : g.edges() )
  {
    degree[e.source] += 1.0;
    degree[e.target] += 1.0;
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve( n + 2u * g.num_edges() );
  for ( uint32_t v = 0; v < n; ++v )
  {
    entries.emplace_back( v, v, 1.0 / degree[v] );
  }
  for ( auto const& e : g.edges() )
  {
    double const w = 1.0 / std::sqrt( degree[e.source] * degree[e.target] );
    entries.emplace_back( e.source, e.target, w );
    entries.emplace_back( e.target, e.source, w );
  }
  f.adjacency.resize( n, n );
  f.adjacency.setFromTriplets( entries.begin(), entries.end() );
  f.propagated = f.adjacency * f.features;

  auto const li = levelize( g );
  f.depth = li.max_depth;
  f.levels = li.buckets();
  return f;
}

gcn_encoder gcn_encoder::make( param_store& ps, model_config const& cfg )
{
  gcn_encoder e;
  uint32_t in = node_feature_width;
  for ( uint32_t l = 0; l < cfg.gcn_layers; ++l )
  {
    e.layers.push_back( linear::make( ps, "gcn" + std::to_string( l ), param_group::graph_encoder, in, cfg.hidden ) );
    in = cfg.hidden;
  }
  return e;
}

matrix gcn_encoder::forward( param_store const& ps, circuit_features const& f, cache& c ) const
{
  c.inputs.clear();
  c.pre.clear();
  matrix h;
  for ( size_t l = 0; l < layers.size(); ++l )
  {
    c.inputs.push_back( l == 0 ? f.propagated : matrix( f.adjacency * h ) );
    c.pre.push_back( layers[l].forward( ps, c.inputs.back() ) );
    h = l + 1 < layers.size() ? relu( c.pre.back() ) : c.pre.back();
  }
  return h;
}

void gcn_encoder::backward( param_store& ps, circuit_features const& f, cache const& c, matrix const& dh ) const
{
  matrix dz = dh;
  for ( size_t l = layers.size(); l-- > 0; )
  {
    matrix const din = layers[l].backward( ps, c.inputs[l], dz );
    if ( l == 0 )
    {
      break;
    }
    matrix const dprev = f.adjacency.transpose() * din;
    dz = relu_backward( c.pre[l - 1], dprev );
  }
}

matrix level_pool( matrix const& h, std::vector<std::vector<uint32_t>> const& levels, uint32_t num_levels, pool_cache& c )
{
  if ( levels.size() > num_levels )
  {
    throw model_error( "circuit depth " + std::to_string( levels.size() - 1u ) + " exceeds the configured maximum " +
                       std::to_string( num_levels - 1u ) );
  }
  auto const d = h.cols();
  matrix out = matrix::Zero( num_levels, 2 * d );
  c.argmax.assign( levels.size(), std::vector<uint32_t>( static_cast<size_t>( d ), 0u ) );
  c.counts.assign( levels.size(), 0u );
  for ( size_t l = 0; l < levels.size(); ++l )
  {
    auto const& bucket = levels[l];
    if ( bucket.empty() )
    {
      throw model_error( "level " + std::to_string( l ) + " has no nodes" );
    }
    c.counts[l] = static_cast<uint32_t>( bucket.size() );
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero( d );
    Eigen::RowVectorXd mx = h.row( bucket[0] );
    std::fill( c.argmax[l].begin(), c.argmax[l].end(), bucket[0] );
    for ( auto const v : bucket )
    {
      sum += h.row( v );
      for ( Eigen::Index k = 0; k < d; ++k )
      {
        if ( h( v, k ) > mx( k ) )
        {
          mx( k ) = h( v, k );
          c.argmax[l][k] = v;
        }
      }
    }
    out.row( l ).head( d ) = sum / static_cast<double>( bucket.size() );
    out.row( l ).tail( d ) = mx;
  }
  return out;
}

matrix level_pool_backward( std::vector<std::vector<uint32_t>> const& levels, pool_cache const& c, matrix const& dpooled, Eigen::Index num_nodes )
{
  auto const d = dpooled.cols() / 2;
  matrix dh = matrix::Zero( num_nodes, d );
  for ( size_t l = 0; l < levels.size(); ++l )
  {
    Eigen::RowVectorXd const dmean = dpooled.row( l ).head( d ) / static_cast<double>( c.counts[l] );
    for ( auto const v : levels[l] )
    {
      dh.row( v ) += dmean;
    }
    for ( Eigen::Index k = 0; k < d; ++k )
    {
      dh( c.argmax[l][k], k ) += dpooled( l, d + k );
    }
  }
  return dh;
}

matrix global_pool( matrix const& h, pool_cache& c )
{
  auto const d = h.cols();
  matrix out( 1, 2 * d );
  out.row( 0 ).head( d ) = h.colwise().mean();
  c.argmax.assign( 1u, std::vector<uint32_t>( static_cast<size_t>( d ), 0u ) );
  c.counts.assign( 1u, static_cast<uint32_t>( h.rows() ) );
  for ( Eigen::Index k = 0; k < d; ++k )
  {
    Eigen::Index arg = 0;
    out( 0, d + k ) = h.col( k ).maxCoeff( &arg );
    c.argmax[0][k] = static_cast<uint32_t>( arg );
  }
  return out;
}

matrix global_pool_backward( pool_cache const& c, matrix const& dpooled, Eigen::Index num_nodes )
{
  auto const d = dpooled.cols() / 2;
  matrix dh = dpooled.leftCols( d ).replicate( num_nodes, 1 ) / static_cast<double>( num_nodes );
  for ( Eigen::Index k = 0; k < d; ++k )
  {
    dh( c.argmax[0][k], k ) += dpooled( 0, d + k );
  }
  return dh;
}

} // namespace lso::nn
