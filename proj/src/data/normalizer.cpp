#include <lsoformer/data/normalizer.hpp>

#include <lsoformer/data/recipe.hpp>

#include <cmath>

namespace lso
{

normalizer normalizer::fit( std::span<double const> finals )
{
  if ( finals.empty() )
  {
    throw dataset_error( "cannot fit a normalizer on an empty split" );
  }
  double sum = 0.0;
  for ( auto const v : finals )
  {
    sum += v;
  }
  double const mean = sum / static_cast<double>( finals.size() );
  double sq = 0.0;
  for ( auto const v : finals )
  {
    sq += ( v - mean ) * ( v - mean );
  }
  double const stddev = std::sqrt( sq / static_cast<double>( finals.size() ) );
  if ( !( stddev > 0.0 ) )
  {
    throw dataset_error( "final QoR values have zero variance" );
  }
  return { mean, stddev };
}

} // namespace lso
