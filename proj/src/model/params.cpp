#include <lsoformer/model/params.hpp>

#include <lsoformer/util/rng.hpp>

#include <algorithm>
#include <cmath>

namespace lso::nn
{

std::string_view group_name( param_group g )
{
  switch ( g )
  {
  case param_group::graph_encoder:
    return "graph_encoder";
  case param_group::recipe_encoder:
    return "recipe_encoder";
  case param_group::decoder:
    return "decoder";
  case param_group::regressor:
    return "regressor";
  }
  return "unknown";
}

param_store::handle param_store::add( std::string name, param_group group, uint32_t rows, uint32_t cols, init_kind init )
{
  for ( auto const& t : tensors_ )
  {
    if ( t.name == name )
    {
      throw model_error( "duplicate parameter " + name );
    }
  }
  tensors_.push_back( { std::move( name ), group, rows, cols, values_.size(), init } );
  values_.resize( values_.size() + size_t{ rows } * cols, 0.0 );
  grads_.resize( values_.size(), 0.0 );
  return static_cast<handle>( tensors_.size() - 1u );
}

void param_store::initialize( rng& gen )
{
  for ( handle h = 0; h < tensors_.size(); ++h )
  {
    auto const& t = tensors_[h];
    auto v = value( h );
    switch ( t.init )
    {
    case init_kind::xavier:
    {
      double const limit = std::sqrt( 6.0 / static_cast<double>( t.rows + t.cols ) );
      for ( Eigen::Index c = 0; c < v.cols(); ++c )
      {
        for ( Eigen::Index r = 0; r < v.rows(); ++r )
        {
          v( r, c ) = gen.uniform_real( -limit, limit );
        }
      }
      break;
    }
    case init_kind::zeros:
      v.setZero();
      break;
    case init_kind::ones:
      v.setOnes();
      break;
    case init_kind::constant_one_bias:
      v.setZero();
      /* LSTM bias layout [input | forget | cell | output]: forget gate starts at 1 */
      v.middleCols( v.cols() / 4, v.cols() / 4 ).setOnes();
      break;
    }
  }
}

param_store::handle param_store::find( std::string_view name ) const
{
  for ( handle h = 0; h < tensors_.size(); ++h )
  {
    if ( tensors_[h].name == name )
    {
      return h;
    }
  }
  throw model_error( "unknown parameter " + std::string( name ) );
}

void param_store::zero_grad()
{
  std::fill( grads_.begin(), grads_.end(), 0.0 );
}

} // namespace lso::nn
