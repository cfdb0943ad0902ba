#include <lsoformer/train/metrics.hpp>

#include <cmath>
#include <string>

namespace lso
{

std::string_view loss_mode_name( loss_mode m )
{
  switch ( m )
  {
  case loss_mode::trajectory:
    return "trajectory";
  case loss_mode::final_only:
    return "final_only";
  case loss_mode::intermediate:
    return "intermediate";
  }
  return "unknown";
}

std::optional<loss_mode> loss_mode_from_name( std::string_view name )
{
  for ( auto const m : { loss_mode::trajectory, loss_mode::final_only, loss_mode::intermediate } )
  {
    if ( loss_mode_name( m ) == name )
    {
      return m;
    }
  }
  return std::nullopt;
}

double joint_loss( std::span<double const> pred, std::span<double const> target, loss_mode mode, std::span<double> grad )
{
  if ( pred.size() != target.size() || pred.empty() )
  {
    throw std::invalid_argument( "prediction and target lengths differ (" + std::to_string( pred.size() ) + " vs " +
                                 std::to_string( target.size() ) + ")" );
  }
  if ( !grad.empty() && grad.size() != pred.size() )
  {
    throw std::invalid_argument( "gradient buffer has the wrong length" );
  }
  size_t const n = pred.size();
  size_t begin = 0u, end = n;
  if ( mode == loss_mode::final_only )
  {
    begin = n - 1u;
  }
  else if ( mode == loss_mode::intermediate )
  {
    end = n - 1u;
  }
  double loss = 0.0;
  for ( size_t k = 0; k < n; ++k )
  {
    double const diff = pred[k] - target[k];
    bool const active = k >= begin && k < end;
    if ( active )
    {
      loss += diff * diff;
    }
    if ( !grad.empty() )
    {
      grad[k] = active ? 2.0 * diff : 0.0;
    }
  }
  return loss;
}

double mape( std::span<double const> pred, std::span<double const> truth )
{
  if ( pred.size() != truth.size() || pred.empty() )
  {
    throw std::invalid_argument( "prediction and ground-truth lengths differ" );
  }
  double sum = 0.0;
  for ( size_t i = 0; i < pred.size(); ++i )
  {
    if ( truth[i] == 0.0 )
    {
      throw numeric_error( "MAPE is undefined for a zero ground-truth value" );
    }
    sum += std::abs( pred[i] - truth[i] ) / std::abs( truth[i] );
  }
  return 100.0 * sum / static_cast<double>( pred.size() );
}

} // namespace lso
