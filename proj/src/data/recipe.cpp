#include <lsoformer/data/recipe.hpp>

#include <lsoformer/util/rng.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace lso
{

std::vector<heuristic> recipe::heuristics() const
{
  std::vector<heuristic> out;
  out.reserve( steps.size() );
  for ( auto const t : steps )
  {
    out.push_back( heuristic_from_token( t ) );
  }
  return out;
}

std::string recipe::to_string() const
{
  std::string s;
  for ( auto const t : steps )
  {
    if ( !s.empty() )
    {
      s += ',';
    }
    s += heuristic_name( heuristic_from_token( t ) );
  }
  return s;
}

std::vector<recipe> sample_recipes( uint32_t count, uint32_t length, uint64_t seed )
{
  if ( length == 0u )
  {
    throw dataset_error( "recipe length must be positive" );
  }
  double const space = std::pow( static_cast<double>( num_heuristics ), static_cast<double>( length ) );
  if ( static_cast<double>( count ) > space )
  {
    throw dataset_error( "cannot sample " + std::to_string( count ) + " distinct recipes of length " +
                         std::to_string( length ) + " from " + std::to_string( num_heuristics ) + " heuristics" );
  }

  rng gen( seed );
  std::set<std::vector<uint32_t>> seen;
  std::vector<recipe> out;
  out.reserve( count );
  while ( out.size() < count )
  {
    recipe r;
    r.id = static_cast<uint32_t>( out.size() );
    r.steps.resize( length );
    for ( auto& t : r.steps )
    {
      t = static_cast<uint32_t>( gen.uniform_int( num_heuristics ) );
    }
    if ( seen.insert( r.steps ).second )
    {
      out.push_back( std::move( r ) );
    }
  }
  return out;
}

recipe parse_recipe( std::string const& text, uint32_t id )
{
  recipe r;
  r.id = id;
  std::string item;
  std::istringstream in( text );
  while ( std::getline( in, item, ',' ) )
  {
    auto const b = item.find_first_not_of( " \t" );
    if ( b == std::string::npos )
    {
      continue;
    }
    auto const e = item.find_last_not_of( " \t" );
    auto const word = item.substr( b, e - b + 1u );
    if ( word.find_first_not_of( "0123456789" ) == std::string::npos )
    {
      r.steps.push_back( static_cast<uint32_t>( heuristic_from_token( static_cast<uint32_t>( std::stoul( word ) ) ) ) );
    }
    else if ( auto const h = heuristic_from_name( word ) )
    {
      r.steps.push_back( static_cast<uint32_t>( *h ) );
    }
    else
    {
      throw dataset_error( "unknown heuristic '" + word + "'" );
    }
  }
  if ( r.steps.empty() )
  {
    throw dataset_error( "empty recipe" );
  }
  return r;
}

} // namespace lso
