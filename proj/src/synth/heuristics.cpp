#include <lsoformer/synth/heuristics.hpp>

#include <lsoformer/aig/levelize.hpp>
#include <lsoformer/synth/passes.hpp>

#include <algorithm>
#include <cctype>
#include <string>

namespace lso
{

std::string_view heuristic_name( heuristic h )
{
  static constexpr std::array<std::string_view, num_heuristics> names = { "balance", "rw", "rw_z", "rf",
                                                                          "rf_z",    "rs", "rs_z" };
  return names[static_cast<uint32_t>( h )];
}

std::optional<heuristic> heuristic_from_name( std::string_view name )
{
  std::string key;
  for ( auto const c : name )
  {
    if ( c != ' ' && c != '-' && c != '_' )
    {
      key.push_back( static_cast<char>( std::tolower( static_cast<unsigned char>( c ) ) ) );
    }
  }
  if ( key == "balance" || key == "b" )
  {
    return heuristic::balance;
  }
  static constexpr std::array<std::pair<std::string_view, heuristic>, 6> table = {
      { { "rw", heuristic::rw },
        { "rwz", heuristic::rw_z },
        { "rf", heuristic::rf },
        { "rfz", heuristic::rf_z },
        { "rs", heuristic::rs },
        { "rsz", heuristic::rs_z } } };
  for ( auto const& [n, h] : table )
  {
    if ( key == n )
    {
      return h;
    }
  }
  return std::nullopt;
}

heuristic heuristic_from_token( uint32_t token )
{
  if ( token >= num_heuristics )
  {
    throw std::out_of_range( "heuristic token " + std::to_string( token ) + " out of range" );
  }
  return static_cast<heuristic>( token );
}

std::string_view metric_name( qor_metric m )
{
  return m == qor_metric::delay ? "delay" : "area";
}

std::optional<qor_metric> metric_from_name( std::string_view name )
{
  if ( name == "delay" )
  {
    return qor_metric::delay;
  }
  if ( name == "area" )
  {
    return qor_metric::area;
  }
  return std::nullopt;
}

double measure_qor( aig_graph const& g, qor_metric metric )
{
  if ( metric == qor_metric::area )
  {
    return static_cast<double>( g.num_ands() );
  }
  return static_cast<double>( levelize( g ).max_depth );
}

namespace
{

struct qor_pair
{
  uint32_t area;
  uint32_t delay;
};

qor_pair measure( aig_graph const& g )
{
  return { g.num_ands(), levelize( g ).max_depth };
}

/* balance optimizes delay first; the other passes optimize area first.
 * Neither may increase the AND count. */
bool improves( heuristic h, qor_pair const& next, qor_pair const& cur )
{
  if ( next.area > cur.area )
  {
    return false;
  }
  if ( h == heuristic::balance )
  {
    return next.delay < cur.delay || ( next.delay == cur.delay && next.area < cur.area );
  }
  return next.area < cur.area || ( next.area == cur.area && next.delay < cur.delay );
}

synth::network sweep( synth::network const& ntk, heuristic h )
{
  switch ( h )
  {
  case heuristic::balance:
    return synth::balance_sweep( ntk );
  case heuristic::rw:
  case heuristic::rw_z:
    return synth::rewrite_sweep( ntk, h == heuristic::rw_z );
  case heuristic::rf:
  case heuristic::rf_z:
    return synth::refactor_sweep( ntk, h == heuristic::rf_z );
  case heuristic::rs:
  case heuristic::rs_z:
    return synth::resub_sweep( ntk, h == heuristic::rs_z );
  }
  return ntk;
}

} // namespace

aig_graph apply_heuristic( aig_graph const& g, heuristic h )
{
  /* Iterate sweeps while they improve QoR. The returned graph is the last
   * state from which one more sweep gave no improvement, so applying the
   * pass again reproduces the same graph. Termination: (area, delay) moves
   * strictly down a well-order. */
  aig_graph current = g;
  auto current_qor = measure( current );
  while ( true )
  {
    auto next = synth::to_aig( synth::cleanup( sweep( synth::from_aig( current ), h ) ), g );
    auto const next_qor = measure( next );
    if ( !improves( h, next_qor, current_qor ) )
    {
      return current;
    }
    current = std::move( next );
    current_qor = next_qor;
  }
}

qor_trajectory run_recipe( aig_graph const& g, std::span<heuristic const> steps, qor_metric metric )
{
  qor_trajectory t;
  t.metric = metric;
  t.initial = measure_qor( g, metric );
  t.values.reserve( steps.size() );
  aig_graph state = g;
  for ( auto const h : steps )
  {
    state = apply_heuristic( state, h );
    t.values.push_back( measure_qor( state, metric ) );
  }
  return t;
}

} // namespace lso
