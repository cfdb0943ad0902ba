#include <lsoformer/data/split.hpp>

#include <lsoformer/util/rng.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace lso
{

std::string_view setup_name( split_setup s )
{
  return s == split_setup::ip_inductive ? "ip_inductive" : "recipe_inductive";
}

std::optional<split_setup> setup_from_name( std::string_view name )
{
  if ( name == "ip_inductive" || name == "ip" )
  {
    return split_setup::ip_inductive;
  }
  if ( name == "recipe_inductive" || name == "recipe" )
  {
    return split_setup::recipe_inductive;
  }
  return std::nullopt;
}

namespace
{

uint32_t key_of( dataset_sample const& s, split_setup setup )
{
  return setup == split_setup::ip_inductive ? s.circuit_id : s.recipe_id;
}

} // namespace

split_result split_from_keys( std::span<dataset_sample const> samples, split_setup setup, std::span<uint32_t const> val_keys )
{
  std::set<uint32_t> const val( val_keys.begin(), val_keys.end() );
  std::set<uint32_t> train_keys;
  split_result r;
  for ( uint32_t i = 0; i < samples.size(); ++i )
  {
    auto const k = key_of( samples[i], setup );
    if ( val.count( k ) )
    {
      r.val.push_back( i );
    }
    else
    {
      r.train.push_back( i );
      train_keys.insert( k );
    }
  }
  r.train_keys.assign( train_keys.begin(), train_keys.end() );
  r.val_keys.assign( val.begin(), val.end() );
  return r;
}

split_result split( std::span<dataset_sample const> samples, split_spec const& spec )
{
  if ( !( spec.val_fraction > 0.0 ) || !( spec.train_fraction > 0.0 ) || spec.train_fraction + spec.val_fraction > 1.0 + 1e-12 )
  {
    throw dataset_error( "split fractions must be positive and sum to at most 1" );
  }
  std::set<uint32_t> key_set;
  for ( auto const& s : samples )
  {
    key_set.insert( key_of( s, spec.setup ) );
  }
  std::vector<uint32_t> keys( key_set.begin(), key_set.end() );
  if ( keys.size() < 2u )
  {
    throw dataset_error( std::string( "need at least two " ) +
                         ( spec.setup == split_setup::ip_inductive ? "circuits" : "recipes" ) + " to split" );
  }

  rng gen( spec.seed );
  gen.shuffle( keys );
  auto const n = keys.size();
  auto val_count = static_cast<size_t>( std::floor( spec.val_fraction * static_cast<double>( n ) + 1e-9 ) );
  val_count = std::clamp<size_t>( val_count, 1u, n - 1u );
  std::vector<uint32_t> val( keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>( val_count ) );
  return split_from_keys( samples, spec.setup, val );
}

} // namespace lso
