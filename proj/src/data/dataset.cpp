#include <lsoformer/data/dataset.hpp>

#include <lsoformer/aig/levelize.hpp>
#include <lsoformer/aig/random_aig.hpp>
#include <lsoformer/util/rng.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_map>

namespace lso
{

namespace
{

/// Interns optimized states of one circuit so that identical
/// (state, heuristic) pairs are computed once.
class state_cache
{
public:
  explicit state_cache( aig_graph const& root ) { intern( root ); }

  uint32_t step( uint32_t state, uint32_t token )
  {
    auto const key = ( static_cast<uint64_t>( state ) << 8 ) | token;
    if ( auto const it = transitions_.find( key ); it != transitions_.end() )
    {
      return it->second;
    }
    auto next = apply_heuristic( states_[state], heuristic_from_token( token ) );
    auto const id = intern( std::move( next ) );
    transitions_.emplace( key, id );
    return id;
  }

  aig_graph const& graph( uint32_t state ) const { return states_[state]; }

  double qor( uint32_t state, qor_metric metric )
  {
    auto& slot = metric == qor_metric::delay ? delay_ : area_;
    if ( slot.size() <= state )
    {
      slot.resize( states_.size(), -1.0 );
    }
    if ( slot[state] < 0.0 )
    {
      slot[state] = measure_qor( states_[state], metric );
    }
    return slot[state];
  }

private:
  uint32_t intern( aig_graph g )
  {
    auto& bucket = by_hash_[structural_hash( g )];
    for ( auto const id : bucket )
    {
      if ( structurally_equal( states_[id], g ) )
      {
        return id;
      }
    }
    auto const id = static_cast<uint32_t>( states_.size() );
    states_.push_back( std::move( g ) );
    bucket.push_back( id );
    return id;
  }

  std::vector<aig_graph> states_;
  std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash_;
  std::unordered_map<uint64_t, uint32_t> transitions_;
  std::vector<double> delay_, area_;
};

} // namespace

dataset build_dataset( std::span<aig_graph const> circuits, std::span<recipe const> recipes, qor_metric metric )
{
  dataset d;
  d.metric = metric;
  d.recipes.assign( recipes.begin(), recipes.end() );
  if ( !recipes.empty() )
  {
    d.recipe_length = static_cast<uint32_t>( recipes.front().steps.size() );
  }
  for ( auto const& r : recipes )
  {
    if ( r.steps.size() != d.recipe_length || r.steps.empty() )
    {
      throw dataset_error( "recipes must share one positive length" );
    }
  }

  for ( uint32_t c = 0; c < circuits.size(); ++c )
  {
    auto const& g = circuits[c];
    d.circuits.push_back( { c, g.name(), structural_hash( g ), g.num_nodes(), levelize( g ).max_depth, {} } );

    state_cache cache( g );
    double const initial = cache.qor( 0u, metric );
    for ( auto const& r : recipes )
    {
      dataset_sample s;
      s.circuit_id = c;
      s.recipe_id = r.id;
      s.steps = r.steps;
      s.initial = initial;
      uint32_t state = 0u;
      for ( auto const t : r.steps )
      {
        state = cache.step( state, t );
        s.raw.push_back( cache.qor( state, metric ) );
      }
      d.samples.push_back( std::move( s ) );
    }
  }
  return d;
}

void write_samples( dataset const& d, std::filesystem::path const& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw dataset_error( "cannot write " + path.string() );
  }
  auto const metric = std::string( metric_name( d.metric ) );
  for ( auto const& s : d.samples )
  {
    nlohmann::ordered_json j;
    j["circuit_id"] = s.circuit_id;
    j["recipe_id"] = s.recipe_id;
    j["steps"] = s.steps;
    j["raw_trajectory"] = s.raw;
    j["metric"] = metric;
    j["initial"] = s.initial;
    out << j.dump() << '\n';
  }
}

std::vector<dataset_sample> read_samples( std::filesystem::path const& path, qor_metric* metric )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw dataset_error( "cannot read " + path.string() );
  }
  std::vector<dataset_sample> samples;
  std::string line;
  uint32_t line_no = 0u;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( line.empty() )
    {
      continue;
    }
    try
    {
      auto const j = nlohmann::json::parse( line );
      dataset_sample s;
      s.circuit_id = j.at( "circuit_id" ).get<uint32_t>();
      s.recipe_id = j.at( "recipe_id" ).get<uint32_t>();
      s.steps = j.at( "steps" ).get<std::vector<uint32_t>>();
      s.raw = j.at( "raw_trajectory" ).get<std::vector<double>>();
      s.initial = j.value( "initial", 0.0 );
      if ( s.raw.size() != s.steps.size() || s.raw.empty() )
      {
        throw dataset_error( "trajectory length differs from recipe length" );
      }
      auto const m = metric_from_name( j.at( "metric" ).get<std::string>() );
      if ( !m )
      {
        throw dataset_error( "unknown metric" );
      }
      if ( metric )
      {
        if ( !samples.empty() && *metric != *m )
        {
          throw dataset_error( "mixed metrics" );
        }
        *metric = *m;
      }
      samples.push_back( std::move( s ) );
    }
    catch ( std::exception const& e )
    {
      throw dataset_error( path.string() + ":" + std::to_string( line_no ) + ": " + e.what() );
    }
  }
  return samples;
}

std::vector<aig_graph> synthetic_corpus( uint32_t count, uint64_t seed, uint32_t min_nodes, uint32_t max_nodes )
{
  rng gen( seed );
  std::vector<aig_graph> out;
  out.reserve( count );
  for ( uint32_t i = 0; i < count; ++i )
  {
    double const u = gen.uniform_real();
    auto const nodes = static_cast<uint32_t>(
        std::lround( std::exp( std::log( double( min_nodes ) ) + u * ( std::log( double( max_nodes ) ) - std::log( double( min_nodes ) ) ) ) ) );
    char name[32];
    std::snprintf( name, sizeof( name ), "synth_%03u", i );
    out.push_back( random_benchmark_circuit( nodes, derive_seed( seed, i ), name ) );
  }
  return out;
}

} // namespace lso
