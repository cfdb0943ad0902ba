#include <lsoformer/aig/netlist_io.hpp>
#include <lsoformer/data/store.hpp>
#include <lsoformer/model/checkpoint.hpp>
#include <lsoformer/train/ablation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#ifndef LSOFORMER_VERSION
#define LSOFORMER_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace lso;

namespace
{

enum exit_code : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_data = 2,
  exit_numeric = 3
};

struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

fs::path default_out( std::string const& leaf )
{
  char const* base = std::getenv( "LSOFORMER_OUT" );
  return fs::path( base && *base ? base : "lsoformer_out" ) / leaf;
}

std::string cmdline;

void write_text( fs::path const& path, std::string const& text )
{
  if ( path.has_parent_path() )
  {
    fs::create_directories( path.parent_path() );
  }
  std::ofstream out( path, std::ios::binary );
  out << text;
  if ( !out )
  {
    throw dataset_error( "cannot write " + path.string() );
  }
}

/* Every artifact-producing command records what it read, what it wrote and
 * the settings it ran with. */
void write_run_manifest( fs::path const& dir, std::string const& command, json config, std::vector<uint64_t> const& seeds,
                         std::vector<fs::path> const& inputs, std::vector<fs::path> const& outputs )
{
  json m;
  m["command"] = command;
  m["command_line"] = cmdline;
  m["version"] = LSOFORMER_VERSION;
  m["config"] = std::move( config );
  m["seeds"] = seeds;
  auto hashes = [&]( std::vector<fs::path> const& paths ) {
    json a = json::array();
    for ( auto const& p : paths )
    {
      a.push_back( { { "path", p.generic_string() }, { "hash", fs::is_regular_file( p ) ? file_hash( p ) : std::string{} } } );
    }
    return a;
  };
  m["inputs"] = hashes( inputs );
  m["outputs"] = hashes( outputs );
  write_text( dir / "run_manifest.json", m.dump( 2 ) + "\n" );
}

/* ---------------------------------------------------------------- data -- */

struct loaded
{
  stored_dataset store;
  split_result split;
  training_data data;
};

loaded load_for_training( fs::path const& dir )
{
  loaded l{ load_dataset( dir ), {}, {} };
  auto const& s = l.store;
  if ( s.split )
  {
    l.split = split_from_keys( s.data.samples, s.split->spec.setup, s.split->val_keys );
  }
  else
  {
    l.split = split( s.data.samples, split_spec{} );
  }
  l.data = prepare_training_data( s.circuits, s.data.samples, l.split );
  if ( s.norm && ( s.norm->mean != l.data.norm.mean || s.norm->stddev != l.data.norm.stddev ) )
  {
    throw dataset_error( "normalizer in the manifest does not match the training split" );
  }
  return l;
}

/* ------------------------------------------------------------- options -- */

struct model_options
{
  std::string decoder = "transformer";
  uint32_t hidden = 32u;
  uint32_t gcn_layers = 2u;
  uint32_t heads = 4u;
  uint32_t ffn_width = 0u;
  uint32_t decoder_layers = 1u;
  uint32_t regressor_width = 64u;
  uint32_t max_depth = 0u;
  uint32_t pe_dim = 0u;
  bool padding_mask = false;

  void add( CLI::App& app, bool with_decoder )
  {
    if ( with_decoder )
    {
      app.add_option( "--decoder", decoder, "transformer, mlp, mlp_multitask or recurrent" )->capture_default_str();
    }
    app.add_option( "--hidden", hidden, "node embedding width" )->capture_default_str();
    app.add_option( "--gcn-layers", gcn_layers )->capture_default_str();
    app.add_option( "--heads", heads )->capture_default_str();
    app.add_option( "--ffn-width", ffn_width, "0: four times the decoder width" )->capture_default_str();
    app.add_option( "--decoder-layers", decoder_layers )->capture_default_str();
    app.add_option( "--regressor-width", regressor_width )->capture_default_str();
    app.add_option( "--max-depth", max_depth, "0: deepest circuit in the dataset" )->capture_default_str();
    app.add_option( "--pe-dim", pe_dim, "positional encoding denominator, 0: decoder width" )->capture_default_str();
    app.add_flag( "--padding-mask", padding_mask, "exclude zero-padded levels from cross-attention" );
  }

  nn::model_config build( uint32_t recipe_length, uint32_t data_depth ) const
  {
    nn::model_config c;
    auto const d = nn::decoder_from_name( decoder );
    if ( !d )
    {
      throw usage_error( "unknown decoder '" + decoder + "'" );
    }
    c.decoder = *d;
    c.hidden = hidden;
    c.gcn_layers = gcn_layers;
    c.heads = heads;
    c.ffn_width = ffn_width;
    c.decoder_layers = decoder_layers;
    c.regressor_width = regressor_width;
    c.recipe_length = recipe_length;
    c.max_depth = max_depth ? max_depth : data_depth;
    if ( c.max_depth < data_depth )
    {
      throw usage_error( "--max-depth " + std::to_string( max_depth ) + " is below the deepest circuit (" + std::to_string( data_depth ) + ")" );
    }
    c.pe_dim = pe_dim;
    c.padding_mask = padding_mask;
    try
    {
      c.validate();
    }
    catch ( nn::model_error const& e )
    {
      throw usage_error( e.what() );
    }
    return c;
  }
};

struct train_options
{
  double lr = 1e-3;
  uint32_t batch = 32u;
  uint32_t epochs = 200u;
  uint32_t patience = 20u;
  uint32_t max_steps = 0u;
  uint64_t seed = 0u;
  std::string loss;
  std::string freeze = "none";

  void add( CLI::App& app, bool with_modes )
  {
    app.add_option( "--lr", lr )->capture_default_str();
    app.add_option( "--batch", batch )->capture_default_str();
    app.add_option( "--epochs", epochs, "maximum epochs" )->capture_default_str();
    app.add_option( "--patience", patience, "early-stopping patience in epochs" )->capture_default_str();
    app.add_option( "--max-steps", max_steps, "optimizer step limit, 0: none" )->capture_default_str();
    if ( with_modes )
    {
      app.add_option( "--seed", seed )->capture_default_str();
      app.add_option( "--loss", loss, "trajectory, final_only or intermediate (default: trajectory, final_only for mlp)" );
      app.add_option( "--freeze", freeze, "none, freeze_graph_encoder, freeze_recipe_encoder or freeze_both" )->capture_default_str();
    }
  }

  train_config build( nn::decoder_kind decoder ) const
  {
    train_config c;
    c.learning_rate = lr;
    c.batch_size = batch;
    c.max_epochs = epochs;
    c.patience = patience;
    c.max_steps = max_steps;
    c.seed = seed;
    if ( loss.empty() )
    {
      c.loss = decoder == nn::decoder_kind::mlp ? loss_mode::final_only : loss_mode::trajectory;
    }
    else if ( auto const m = loss_mode_from_name( loss ) )
    {
      c.loss = *m;
    }
    else
    {
      throw usage_error( "unknown loss mode '" + loss + "'" );
    }
    auto const f = freeze_mode_from_name( freeze );
    if ( !f )
    {
      throw usage_error( "unknown freeze mode '" + freeze + "'" );
    }
    c.freeze = *f;
    try
    {
      c.validate( decoder );
    }
    catch ( std::invalid_argument const& e )
    {
      throw usage_error( e.what() );
    }
    return c;
  }
};

json train_config_json( train_config const& c )
{
  return { { "learning_rate", c.learning_rate }, { "batch_size", c.batch_size }, { "max_epochs", c.max_epochs },
           { "patience", c.patience },          { "max_steps", c.max_steps },   { "seed", c.seed },
           { "loss", loss_mode_name( c.loss ) }, { "freeze", freeze_mode_name( c.freeze ) } };
}

json report_json( eval_report const& r )
{
  return { { "train_mape", r.train_mape }, { "val_mape", r.val_mape },       { "val_step_mape", r.val_step_mape },
           { "best_epoch", r.best_epoch }, { "epochs_run", r.epochs_run }, { "steps", r.steps } };
}

/* ---------------------------------------------------------- checkpoints -- */

struct loaded_model
{
  std::unique_ptr<nn::qor_model> model;
  normalizer norm;
  qor_metric metric = qor_metric::delay;
};

loaded_model open_checkpoint( fs::path const& path )
{
  auto ck = nn::load_checkpoint( path );
  loaded_model l;
  l.model = std::move( ck.model );
  try
  {
    auto const meta = json::parse( ck.metadata );
    l.norm = normalizer{ meta.at( "normalizer" ).at( "mean" ).get<double>(), meta.at( "normalizer" ).at( "stddev" ).get<double>() };
    auto const m = metric_from_name( meta.at( "metric" ).get<std::string>() );
    if ( !m )
    {
      throw dataset_error( "unknown metric in checkpoint metadata" );
    }
    l.metric = *m;
  }
  catch ( json::exception const& e )
  {
    throw dataset_error( "checkpoint metadata lacks normalizer or metric: " + std::string( e.what() ) );
  }
  return l;
}

/* Data and checkpoint must agree on metric, recipe length, supported depth
 * and normalization. */
void check_compatible( loaded_model const& m, loaded const& d )
{
  auto const& cfg = m.model->config();
  if ( m.metric != d.store.data.metric )
  {
    throw dataset_error( "checkpoint predicts " + std::string( metric_name( m.metric ) ) + " but the dataset holds " +
                         std::string( metric_name( d.store.data.metric ) ) );
  }
  if ( cfg.recipe_length != d.store.data.recipe_length )
  {
    throw dataset_error( "checkpoint expects recipes of length " + std::to_string( cfg.recipe_length ) + ", dataset has " +
                         std::to_string( d.store.data.recipe_length ) );
  }
  if ( cfg.max_depth < d.data.max_depth )
  {
    throw dataset_error( "dataset circuits reach depth " + std::to_string( d.data.max_depth ) + ", checkpoint supports " +
                         std::to_string( cfg.max_depth ) );
  }
  if ( m.norm.mean != d.data.norm.mean || m.norm.stddev != d.data.norm.stddev )
  {
    throw dataset_error( "checkpoint normalizer does not match the dataset's training split" );
  }
}

std::span<example const> select_split( training_data const& d, std::string const& which, std::vector<example>& storage )
{
  if ( which == "train" )
  {
    return d.train;
  }
  if ( which == "val" )
  {
    return d.val;
  }
  storage = d.train;
  storage.insert( storage.end(), d.val.begin(), d.val.end() );
  return storage;
}

/* ------------------------------------------------------------- commands -- */

struct gen_data_args
{
  uint32_t synth = 0u;
  std::string circuits;
  uint32_t recipes = 200u;
  uint32_t len = 10u;
  std::string metric;
  uint64_t seed = 0u;
  std::string setup = "recipe_inductive";
  double val_fraction = 0.33;
  std::string out;
};

int cmd_gen_data( gen_data_args const& a )
{
  auto const metric = metric_from_name( a.metric );
  if ( !metric )
  {
    throw usage_error( "unknown metric '" + a.metric + "' (delay or area)" );
  }
  auto const setup = setup_from_name( a.setup );
  if ( !setup )
  {
    throw usage_error( "unknown split setup '" + a.setup + "'" );
  }
  if ( ( a.synth == 0u ) == a.circuits.empty() )
  {
    throw usage_error( "give exactly one of --synth or --circuits" );
  }
  fs::path const out = a.out.empty() ? default_out( "dataset" ) : fs::path( a.out );

  std::vector<aig_graph> circuits;
  std::vector<fs::path> inputs;
  if ( a.synth )
  {
    circuits = synthetic_corpus( a.synth, a.seed );
  }
  else
  {
    std::vector<fs::path> files;
    for ( auto const& e : fs::directory_iterator( a.circuits ) )
    {
      auto const ext = e.path().extension().string();
      if ( e.is_regular_file() && ( ext == ".bench" || ext == ".aag" ) )
      {
        files.push_back( e.path() );
      }
    }
    std::sort( files.begin(), files.end() );
    size_t failures = 0u;
    for ( auto const& f : files )
    {
      try
      {
        circuits.push_back( read_netlist( f ) );
        inputs.push_back( f );
      }
      catch ( aig_error const& e )
      {
        std::cerr << f.string() << ": " << e.what() << '\n';
        ++failures;
      }
    }
    if ( failures )
    {
      throw dataset_error( std::to_string( failures ) + " netlist(s) failed to parse" );
    }
    if ( circuits.empty() )
    {
      throw dataset_error( "no .bench or .aag files in " + a.circuits );
    }
  }

  auto const recipes = sample_recipes( a.recipes, a.len, a.seed );
  std::cerr << "running " << recipes.size() << " recipes on " << circuits.size() << " circuits\n";
  stored_dataset s;
  s.data = build_dataset( circuits, recipes, *metric );
  s.data.seed = a.seed;
  s.circuits = circuits;
  split_spec spec{ *setup, 1.0 - a.val_fraction, a.val_fraction, a.seed };
  auto const sp = split( s.data.samples, spec );
  s.split = split_record{ spec, sp.val_keys };
  std::vector<double> finals;
  for ( auto const i : sp.train )
  {
    finals.push_back( s.data.samples[i].final_qor() );
  }
  s.norm = normalizer::fit( finals );
  save_dataset( s, out );

  json cfg{ { "synth", a.synth },   { "circuits", a.circuits }, { "recipes", a.recipes }, { "len", a.len },
            { "metric", a.metric }, { "setup", a.setup },       { "val_fraction", a.val_fraction } };
  write_run_manifest( out, "gen-data", cfg, { a.seed }, inputs, { out / "manifest.json", out / "samples.jsonl" } );
  std::cout << "wrote " << s.data.samples.size() << " samples to " << out.string() << '\n';
  return exit_ok;
}

struct train_args
{
  std::string data;
  std::string out;
  std::string init;
  bool quiet = false;
  model_options model;
  train_options train;
};

int cmd_train( train_args const& a )
{
  fs::path const out = a.out.empty() ? default_out( "run" ) : fs::path( a.out );
  auto const l = load_for_training( a.data );
  auto const mcfg = a.model.build( l.store.data.recipe_length, l.data.max_depth );
  auto const tcfg = a.train.build( mcfg.decoder );

  std::unique_ptr<nn::qor_model> model;
  if ( !a.init.empty() )
  {
    auto init = open_checkpoint( a.init );
    check_compatible( init, l );
    model = std::move( init.model );
  }
  else
  {
    model = std::make_unique<nn::qor_model>( mcfg, tcfg.seed );
  }

  auto const report = train( *model, l.data, tcfg, [&]( epoch_record const& e ) {
    if ( !a.quiet )
    {
      std::cerr << "epoch " << e.epoch << " loss " << e.train_loss << " val_loss " << e.val_loss << " val_mape " << e.val_mape << "%\n";
    }
  } );

  fs::create_directories( out );
  json meta{ { "normalizer", { { "mean", l.data.norm.mean }, { "stddev", l.data.norm.stddev } } },
             { "metric", metric_name( l.store.data.metric ) },
             { "dataset", fs::absolute( a.data ).generic_string() },
             { "samples_hash", file_hash( fs::path( a.data ) / "samples.jsonl" ) },
             { "train", train_config_json( tcfg ) } };
  nn::save_checkpoint( *model, out / "model.ckpt", meta.dump() );
  {
    std::ofstream jl( out / "metrics.jsonl", std::ios::binary );
    write_curve_jsonl( jl, report.curve );
    std::ofstream csv( out / "metrics.csv", std::ios::binary );
    write_curve_csv( csv, report.curve );
  }
  write_text( out / "report.json", report_json( report ).dump( 2 ) + "\n" );
  json cfg{ { "model", json::parse( model->config().to_json() ) }, { "train", train_config_json( tcfg ) }, { "init", a.init } };
  write_run_manifest( out, "train", cfg, { tcfg.seed }, { fs::path( a.data ) / "manifest.json", fs::path( a.data ) / "samples.jsonl" },
                      { out / "model.ckpt", out / "metrics.jsonl", out / "metrics.csv", out / "report.json" } );
  std::cout << std::setprecision( 6 ) << "best epoch " << report.best_epoch << ": train MAPE " << report.train_mape << "%, val MAPE "
            << report.val_mape << "% (mean predictor " << mean_predictor_mape( l.data, l.data.val ) << "%)\n";
  return exit_ok;
}

struct eval_args
{
  std::string data;
  std::string checkpoint;
  std::string split = "val";
};

int cmd_eval( eval_args const& a )
{
  auto const l = load_for_training( a.data );
  auto const m = open_checkpoint( a.checkpoint );
  check_compatible( m, l );
  std::vector<example> storage;
  auto const examples = select_split( l.data, a.split, storage );
  if ( examples.empty() )
  {
    throw dataset_error( "the " + a.split + " split is empty" );
  }
  auto const ev = evaluate( *m.model, l.data, examples );
  json r{ { "split", a.split },
          { "samples", examples.size() },
          { "final_mape", ev.final_mape },
          { "step_mape", ev.step_mape },
          { "loss", ev.loss },
          { "mean_predictor_mape", mean_predictor_mape( l.data, examples ) } };
  std::cout << r.dump( 2 ) << '\n';
  return exit_ok;
}

struct ablate_args
{
  std::string data;
  int table = 0;
  std::vector<uint64_t> seeds{ 1u, 2u, 3u };
  std::string out;
  model_options model;
  train_options train;
};

int cmd_ablate( ablate_args const& a )
{
  fs::path const out = a.out.empty() ? default_out( "ablation" ) : fs::path( a.out );
  auto const cells = [&] {
    try
    {
      return ablation_table( a.table );
    }
    catch ( std::invalid_argument const& e )
    {
      throw usage_error( e.what() );
    }
  }();
  auto const l = load_for_training( a.data );
  ablation_settings s;
  s.model = a.model.build( l.store.data.recipe_length, l.data.max_depth );
  s.train = a.train.build( nn::decoder_kind::transformer );
  s.seeds = a.seeds;

  auto const results = run_ablation( cells, l.data, s, [&]( ablation_cell const& c, uint64_t seed, eval_report const& r ) {
    std::cerr << c.label << " seed " << seed << ": val MAPE " << r.val_mape << "% (best epoch " << r.best_epoch << ")\n";
  } );

  auto const csv = out / ( "table" + std::to_string( a.table ) + ".csv" );
  fs::create_directories( out );
  {
    std::ofstream os( csv, std::ios::binary );
    write_ablation_csv( os, results, s.seeds );
  }
  json cfg{ { "table", a.table },
            { "model", json::parse( s.model.to_json() ) },
            { "train", train_config_json( s.train ) },
            { "mean_predictor_mape", mean_predictor_mape( l.data, l.data.val ) } };
  write_run_manifest( out, "ablate", cfg, s.seeds, { fs::path( a.data ) / "manifest.json", fs::path( a.data ) / "samples.jsonl" },
                      { csv } );
  write_ablation_csv( std::cout, results, s.seeds );
  return exit_ok;
}

struct predict_args
{
  std::string checkpoint;
  std::string netlist;
  std::string recipe;
};

int cmd_predict( predict_args const& a )
{
  auto const m = open_checkpoint( a.checkpoint );
  auto const g = read_netlist( a.netlist );
  recipe r;
  try
  {
    r = parse_recipe( a.recipe );
  }
  catch ( dataset_error const& e )
  {
    throw usage_error( e.what() );
  }
  auto const& cfg = m.model->config();
  if ( r.steps.size() != cfg.recipe_length )
  {
    throw usage_error( "recipe has " + std::to_string( r.steps.size() ) + " steps, the model expects " + std::to_string( cfg.recipe_length ) );
  }
  auto const f = nn::featurize( g );
  if ( f.depth > cfg.max_depth )
  {
    throw dataset_error( "circuit depth " + std::to_string( f.depth ) + " exceeds the model's supported depth " + std::to_string( cfg.max_depth ) );
  }
  auto const y = m.model->predict( nn::model_input{ &f, r.steps } );
  if ( !y.allFinite() )
  {
    throw numeric_error( "non-finite prediction" );
  }
  std::cout << std::setprecision( 10 );
  for ( Eigen::Index k = 0; k < y.size(); ++k )
  {
    auto const step = y.size() == 1 ? r.steps.size() - 1u : static_cast<size_t>( k );
    std::cout << "step " << step + 1u << " " << heuristic_name( heuristic_from_token( r.steps[step] ) ) << " "
              << m.norm.denormalize( y( k ) ) << '\n';
  }
  std::cout << "final " << metric_name( m.metric ) << " " << m.norm.denormalize( y( y.size() - 1 ) ) << '\n';
  return exit_ok;
}

struct export_args
{
  std::string data;
  std::vector<std::string> checkpoints;
  std::vector<std::string> labels;
  std::string split = "val";
  std::string out;
};

/* Per-circuit final-step MAPE for each model plus the mean predictor, and
 * a closing row over all samples. */
int cmd_export_plots( export_args const& a )
{
  fs::path const out = a.out.empty() ? default_out( "plots" ) : fs::path( a.out );
  if ( !a.labels.empty() && a.labels.size() != a.checkpoints.size() )
  {
    throw usage_error( "--label must be given once per --checkpoint" );
  }
  auto const l = load_for_training( a.data );
  std::vector<example> storage;
  auto const examples = select_split( l.data, a.split, storage );
  if ( examples.empty() )
  {
    throw dataset_error( "the " + a.split + " split is empty" );
  }

  std::map<uint32_t, std::vector<size_t>> by_circuit;
  for ( size_t i = 0; i < examples.size(); ++i )
  {
    by_circuit[examples[i].circuit].push_back( i );
  }
  std::vector<std::string> columns{ "mean_predictor" };
  std::vector<std::vector<double>> preds( 1 );
  for ( auto const& e : examples )
  {
    preds[0].push_back( l.data.norm.mean );
  }
  for ( size_t c = 0; c < a.checkpoints.size(); ++c )
  {
    auto const m = open_checkpoint( a.checkpoints[c] );
    check_compatible( m, l );
    auto const ev = evaluate( *m.model, l.data, examples );
    columns.push_back( a.labels.empty() ? fs::path( a.checkpoints[c] ).parent_path().filename().string() : a.labels[c] );
    preds.emplace_back();
    for ( auto const& p : ev.predictions_raw )
    {
      preds.back().push_back( p.back() );
    }
  }

  auto column_mape = [&]( size_t col, std::vector<size_t> const& rows ) {
    std::vector<double> p, t;
    for ( auto const i : rows )
    {
      p.push_back( preds[col][i] );
      t.push_back( examples[i].raw.back() );
    }
    return mape( p, t );
  };
  std::ostringstream os;
  os << std::setprecision( 10 ) << "circuit_id,circuit,samples";
  for ( auto const& c : columns )
  {
    os << ",mape_" << c;
  }
  os << '\n';
  for ( auto const& [id, rows] : by_circuit )
  {
    os << id << ',' << l.store.data.circuits[id].name << ',' << rows.size();
    for ( size_t c = 0; c < columns.size(); ++c )
    {
      os << ',' << column_mape( c, rows );
    }
    os << '\n';
  }
  std::vector<size_t> all( examples.size() );
  std::iota( all.begin(), all.end(), size_t{ 0 } );
  os << ",mean," << all.size();
  for ( size_t c = 0; c < columns.size(); ++c )
  {
    os << ',' << column_mape( c, all );
  }
  os << '\n';

  auto const csv = out / "per_circuit_mape.csv";
  write_text( csv, os.str() );
  std::vector<fs::path> inputs{ fs::path( a.data ) / "manifest.json" };
  for ( auto const& c : a.checkpoints )
  {
    inputs.emplace_back( c );
  }
  write_run_manifest( out, "export-plots", { { "split", a.split }, { "labels", columns } }, {}, inputs, { csv } );
  std::cout << os.str();
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  for ( int i = 0; i < argc; ++i )
  {
    cmdline += ( i ? " " : "" ) + std::string( argv[i] );
  }

  CLI::App app{ "QoR trajectory prediction toolkit" };
  app.set_version_flag( "--version", LSOFORMER_VERSION );
  app.require_subcommand( 1 );

  gen_data_args gd;
  auto* gen = app.add_subcommand( "gen-data", "optimize circuits with sampled recipes and write a dataset" );
  auto* synth_opt = gen->add_option( "--synth", gd.synth, "number of synthetic circuits" );
  auto* circ_opt = gen->add_option( "--circuits", gd.circuits, "directory of .bench/.aag netlists" )->check( CLI::ExistingDirectory );
  synth_opt->excludes( circ_opt );
  gen->add_option( "--recipes", gd.recipes, "recipes per circuit" )->capture_default_str();
  gen->add_option( "--len", gd.len, "recipe length" )->capture_default_str();
  gen->add_option( "--metric", gd.metric, "delay or area" )->required();
  gen->add_option( "--seed", gd.seed )->capture_default_str();
  gen->add_option( "--setup", gd.setup, "recipe_inductive or ip_inductive" )->capture_default_str();
  gen->add_option( "--val-fraction", gd.val_fraction )->capture_default_str()->check( CLI::Range( 0.0, 1.0 ) );
  gen->add_option( "--out", gd.out, "output directory (default $LSOFORMER_OUT/dataset)" );

  train_args tr;
  auto* trn = app.add_subcommand( "train", "train a model on a dataset" );
  trn->add_option( "--data", tr.data, "dataset directory" )->required()->check( CLI::ExistingDirectory );
  trn->add_option( "--out", tr.out, "run directory (default $LSOFORMER_OUT/run)" );
  trn->add_option( "--init", tr.init, "start from this checkpoint" )->check( CLI::ExistingFile );
  trn->add_flag( "--quiet", tr.quiet, "no per-epoch progress" );
  tr.model.add( *trn, true );
  tr.train.add( *trn, true );

  eval_args ev;
  auto* evl = app.add_subcommand( "eval", "report MAPE of a checkpoint on a dataset split" );
  evl->add_option( "--data", ev.data )->required()->check( CLI::ExistingDirectory );
  evl->add_option( "--checkpoint", ev.checkpoint )->required()->check( CLI::ExistingFile );
  evl->add_option( "--split", ev.split )->capture_default_str()->check( CLI::IsMember( { "train", "val", "all" } ) );

  ablate_args ab;
  auto* abl = app.add_subcommand( "ablate", "train every row of a comparison table over several seeds" );
  abl->add_option( "--data", ab.data )->required()->check( CLI::ExistingDirectory );
  abl->add_option( "--table", ab.table, "3 (freeze probing), 4 (SSL x decoder) or 5 (decoders)" )->required();
  abl->add_option( "--seeds", ab.seeds )->capture_default_str()->delimiter( ',' );
  abl->add_option( "--out", ab.out, "output directory (default $LSOFORMER_OUT/ablation)" );
  ab.model.add( *abl, false );
  ab.train.add( *abl, false );

  predict_args pr;
  auto* prd = app.add_subcommand( "predict", "predict the QoR trajectory of one circuit under one recipe" );
  prd->add_option( "--checkpoint", pr.checkpoint )->required()->check( CLI::ExistingFile );
  prd->add_option( "--netlist", pr.netlist )->required()->check( CLI::ExistingFile );
  prd->add_option( "--recipe", pr.recipe, "comma-separated heuristics, e.g. b,rw,rf_z" )->required();

  export_args ex;
  auto* exp = app.add_subcommand( "export-plots", "write the per-circuit MAPE table as CSV" );
  exp->add_option( "--data", ex.data )->required()->check( CLI::ExistingDirectory );
  exp->add_option( "--checkpoint", ex.checkpoints, "may be repeated" )->check( CLI::ExistingFile );
  exp->add_option( "--label", ex.labels, "column label per checkpoint" );
  exp->add_option( "--split", ex.split )->capture_default_str()->check( CLI::IsMember( { "train", "val", "all" } ) );
  exp->add_option( "--out", ex.out, "output directory (default $LSOFORMER_OUT/plots)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( *gen )
    {
      return cmd_gen_data( gd );
    }
    if ( *trn )
    {
      return cmd_train( tr );
    }
    if ( *evl )
    {
      return cmd_eval( ev );
    }
    if ( *abl )
    {
      return cmd_ablate( ab );
    }
    if ( *prd )
    {
      return cmd_predict( pr );
    }
    return cmd_export_plots( ex );
  }
  catch ( usage_error const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  catch ( numeric_error const& e )
  {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_data;
  }
}
