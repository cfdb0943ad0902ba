#include <lsoformer/data/store.hpp>

#include <lsoformer/aig/netlist_io.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lso
{

namespace
{

constexpr int manifest_version = 1;

std::string read_file( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw dataset_error( "cannot read " + path.string() );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

std::string content_hash( std::string_view bytes )
{
  uint64_t h = 0xcbf29ce484222325ull;
  for ( auto const c : bytes )
  {
    h ^= static_cast<unsigned char>( c );
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf( buf, sizeof( buf ), "%016llx", static_cast<unsigned long long>( h ) );
  return buf;
}

std::string file_hash( std::filesystem::path const& path )
{
  return content_hash( read_file( path ) );
}

void save_dataset( stored_dataset const& s, std::filesystem::path const& dir )
{
  auto const& d = s.data;
  std::filesystem::create_directories( dir / "circuits" );

  nlohmann::ordered_json m;
  m["format_version"] = manifest_version;
  m["seed"] = d.seed;
  m["recipe_length"] = d.recipe_length;
  m["num_recipes"] = d.recipes.size();
  m["metric"] = std::string( metric_name( d.metric ) );

  auto circuits = nlohmann::ordered_json::array();
  for ( size_t i = 0; i < d.circuits.size(); ++i )
  {
    auto const& c = d.circuits[i];
    auto const rel = std::filesystem::path( "circuits" ) / ( std::to_string( c.id ) + "_" + ( c.name.empty() ? "circuit" : c.name ) + ".bench" );
    if ( i < s.circuits.size() )
    {
      write_netlist( s.circuits[i], dir / rel );
    }
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["structural_hash"] = content_hash( std::to_string( c.hash ) );
    j["num_nodes"] = c.num_nodes;
    j["depth"] = c.depth;
    j["path"] = rel.generic_string();
    circuits.push_back( j );
  }
  m["circuits"] = circuits;

  auto recipes = nlohmann::ordered_json::array();
  for ( auto const& r : d.recipes )
  {
    recipes.push_back( { { "id", r.id }, { "steps", r.steps } } );
  }
  m["recipes"] = recipes;

  write_samples( d, dir / "samples.jsonl" );
  m["samples_file"] = "samples.jsonl";
  m["samples_hash"] = file_hash( dir / "samples.jsonl" );
  m["num_samples"] = d.samples.size();

  if ( s.split )
  {
    auto const& sp = *s.split;
    auto const r = split_from_keys( d.samples, sp.spec.setup, sp.val_keys );
    m["split"] = { { "setup", std::string( setup_name( sp.spec.setup ) ) },
                   { "seed", sp.spec.seed },
                   { "train_fraction", sp.spec.train_fraction },
                   { "val_fraction", sp.spec.val_fraction },
                   { "train_keys", r.train_keys },
                   { "val_keys", r.val_keys } };
  }
  if ( s.norm )
  {
    m["normalizer"] = { { "mean", s.norm->mean }, { "stddev", s.norm->stddev } };
  }

  std::ofstream out( dir / "manifest.json", std::ios::binary );
  out << m.dump( 2 ) << '\n';
  if ( !out )
  {
    throw dataset_error( "cannot write " + ( dir / "manifest.json" ).string() );
  }
}

stored_dataset load_dataset( std::filesystem::path const& dir )
{
  nlohmann::json m;
  try
  {
    m = nlohmann::json::parse( read_file( dir / "manifest.json" ) );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw dataset_error( "malformed manifest: " + std::string( e.what() ) );
  }

  stored_dataset s;
  auto& d = s.data;
  try
  {
    if ( m.at( "format_version" ).get<int>() != manifest_version )
    {
      throw dataset_error( "unsupported manifest version" );
    }
    d.seed = m.at( "seed" ).get<uint64_t>();
    d.recipe_length = m.at( "recipe_length" ).get<uint32_t>();
    auto const metric = metric_from_name( m.at( "metric" ).get<std::string>() );
    if ( !metric )
    {
      throw dataset_error( "unknown metric in manifest" );
    }
    d.metric = *metric;

    for ( auto const& j : m.at( "recipes" ) )
    {
      d.recipes.push_back( { j.at( "id" ).get<uint32_t>(), j.at( "steps" ).get<std::vector<uint32_t>>() } );
    }
    for ( auto const& j : m.at( "circuits" ) )
    {
      circuit_info c;
      c.id = j.at( "id" ).get<uint32_t>();
      c.name = j.at( "name" ).get<std::string>();
      c.num_nodes = j.at( "num_nodes" ).get<uint32_t>();
      c.depth = j.at( "depth" ).get<uint32_t>();
      c.path = j.at( "path" ).get<std::string>();
      auto g = read_netlist( dir / c.path );
      c.hash = structural_hash( g );
      if ( content_hash( std::to_string( c.hash ) ) != j.at( "structural_hash" ).get<std::string>() )
      {
        throw dataset_error( "circuit " + c.path + " does not match the manifest" );
      }
      s.circuits.push_back( std::move( g ) );
      d.circuits.push_back( std::move( c ) );
    }

    auto const samples_path = dir / m.at( "samples_file" ).get<std::string>();
    if ( file_hash( samples_path ) != m.at( "samples_hash" ).get<std::string>() )
    {
      throw dataset_error( "samples file does not match the manifest" );
    }
    qor_metric sample_metric = d.metric;
    d.samples = read_samples( samples_path, &sample_metric );
    if ( sample_metric != d.metric )
    {
      throw dataset_error( "samples metric does not match the manifest" );
    }
    for ( auto const& x : d.samples )
    {
      if ( x.circuit_id >= d.circuits.size() || x.steps.size() != d.recipe_length )
      {
        throw dataset_error( "sample refers to an unknown circuit or has the wrong length" );
      }
    }

    if ( m.contains( "split" ) )
    {
      auto const& j = m.at( "split" );
      split_record r;
      auto const setup = setup_from_name( j.at( "setup" ).get<std::string>() );
      if ( !setup )
      {
        throw dataset_error( "unknown split setup" );
      }
      r.spec.setup = *setup;
      r.spec.seed = j.at( "seed" ).get<uint64_t>();
      r.spec.train_fraction = j.at( "train_fraction" ).get<double>();
      r.spec.val_fraction = j.at( "val_fraction" ).get<double>();
      r.val_keys = j.at( "val_keys" ).get<std::vector<uint32_t>>();
      s.split = std::move( r );
    }
    if ( m.contains( "normalizer" ) )
    {
      s.norm = normalizer{ m["normalizer"].at( "mean" ).get<double>(), m["normalizer"].at( "stddev" ).get<double>() };
    }
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw dataset_error( "malformed manifest: " + std::string( e.what() ) );
  }
  catch ( aig_error const& e )
  {
    throw dataset_error( std::string( "circuit netlist: " ) + e.what() );
  }
  return s;
}

} // namespace lso
