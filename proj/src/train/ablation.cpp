#include <lsoformer/train/ablation.hpp>

#include <lsoformer/util/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace lso
{

using nn::decoder_kind;

std::vector<ablation_cell> ablation_table( int table )
{
  switch ( table )
  {
  case 3:
    return { { "Random Freeze", decoder_kind::transformer, loss_mode::final_only, freeze_mode::freeze_both, false },
             { "Random AIG Enc.", decoder_kind::transformer, loss_mode::trajectory, freeze_mode::freeze_graph_encoder, false },
             { "Random recipe Enc.", decoder_kind::transformer, loss_mode::trajectory, freeze_mode::freeze_recipe_encoder, false },
             { "Freezed LSOformer", decoder_kind::transformer, loss_mode::final_only, freeze_mode::freeze_both, true },
             { "Supervised baseline", decoder_kind::mlp, loss_mode::final_only, freeze_mode::none, false },
             { "Supervised LSOformer", decoder_kind::transformer, loss_mode::trajectory, freeze_mode::none, false } };
  case 4:
    return { { "OpenABC (Baseline)", decoder_kind::mlp, loss_mode::final_only, freeze_mode::none, false },
             { "OpenABC + SSL", decoder_kind::mlp_multitask, loss_mode::trajectory, freeze_mode::none, false },
             { "Transformer Decoder", decoder_kind::transformer, loss_mode::final_only, freeze_mode::none, false },
             { "LSOformer", decoder_kind::transformer, loss_mode::trajectory, freeze_mode::none, false } };
  case 5:
    return { { "MLP", decoder_kind::mlp, loss_mode::final_only, freeze_mode::none, false },
             { "MLP + multi-task", decoder_kind::mlp_multitask, loss_mode::trajectory, freeze_mode::none, false },
             { "Auto-regressive LSTM", decoder_kind::recurrent, loss_mode::trajectory, freeze_mode::none, false },
             { "Transformer", decoder_kind::transformer, loss_mode::trajectory, freeze_mode::none, false } };
  default:
    throw std::invalid_argument( "unknown ablation table " + std::to_string( table ) + " (expected 3, 4 or 5)" );
  }
}

double median( std::vector<double> values )
{
  if ( values.empty() )
  {
    return 0.0;
  }
  std::sort( values.begin(), values.end() );
  auto const n = values.size();
  return n % 2u ? values[n / 2u] : 0.5 * ( values[n / 2u - 1u] + values[n / 2u] );
}

eval_report train_cell( ablation_cell const& cell, training_data const& data, ablation_settings const& settings, uint64_t seed,
                        std::unique_ptr<nn::qor_model>* trained )
{
  auto mcfg = settings.model;
  mcfg.decoder = cell.decoder;
  auto model = std::make_unique<nn::qor_model>( mcfg, seed );

  auto tcfg = settings.train;
  tcfg.seed = seed;
  if ( cell.pretext )
  {
    auto pre = tcfg;
    pre.loss = loss_mode::intermediate;
    pre.freeze = freeze_mode::none;
    train( *model, data, pre );
    tcfg.seed = derive_seed( seed, 0x9u );
  }
  tcfg.loss = cell.loss;
  tcfg.freeze = cell.freeze;
  auto report = train( *model, data, tcfg );
  if ( trained )
  {
    *trained = std::move( model );
  }
  return report;
}

std::vector<ablation_result> run_ablation( std::span<ablation_cell const> cells, training_data const& data,
                                           ablation_settings const& settings, ablation_progress const& progress )
{
  std::vector<ablation_result> results;
  for ( auto const& cell : cells )
  {
    ablation_result r{ cell, {}, {}, {}, 0.0 };
    for ( auto const seed : settings.seeds )
    {
      auto const report = train_cell( cell, data, settings, seed );
      r.val_mape.push_back( report.val_mape );
      r.train_mape.push_back( report.train_mape );
      r.best_epoch.push_back( report.best_epoch );
      if ( progress )
      {
        progress( cell, seed, report );
      }
    }
    r.median_val_mape = median( r.val_mape );
    results.push_back( std::move( r ) );
  }
  return results;
}

namespace
{

std::string csv_field( std::string const& s )
{
  if ( s.find_first_of( ",\"\n" ) == std::string::npos )
  {
    return s;
  }
  std::string out = "\"";
  for ( auto const c : s )
  {
    out += c == '"' ? std::string( "\"\"" ) : std::string( 1, c );
  }
  return out + "\"";
}

} // namespace

void write_ablation_csv( std::ostream& os, std::span<ablation_result const> results, std::span<uint64_t const> seeds )
{
  os << "label,decoder,loss,freeze,median_val_mape";
  for ( auto const s : seeds )
  {
    os << ",val_mape_seed" << s;
  }
  os << '\n' << std::setprecision( 17 );
  for ( auto const& r : results )
  {
    os << csv_field( r.cell.label ) << ',' << nn::decoder_name( r.cell.decoder ) << ','
       << ( r.cell.pretext ? std::string( "intermediate+" ) : std::string{} ) << loss_mode_name( r.cell.loss ) << ','
       << freeze_mode_name( r.cell.freeze ) << ',' << r.median_val_mape;
    for ( auto const v : r.val_mape )
    {
      os << ',' << v;
    }
    os << '\n';
  }
}

void write_curve_jsonl( std::ostream& os, std::span<epoch_record const> curve )
{
  for ( auto const& e : curve )
  {
    nlohmann::ordered_json j;
    j["epoch"] = e.epoch;
    j["steps"] = e.steps;
    j["train_loss"] = e.train_loss;
    j["val_loss"] = e.val_loss;
    j["val_mape"] = e.val_mape;
    os << j.dump() << '\n';
  }
}

void write_curve_csv( std::ostream& os, std::span<epoch_record const> curve )
{
  os << "epoch,steps,train_loss,val_loss,val_mape\n" << std::setprecision( 17 );
  for ( auto const& e : curve )
  {
    os << e.epoch << ',' << e.steps << ',' << e.train_loss << ',' << e.val_loss << ',' << e.val_mape << '\n';
  }
}

} // namespace lso
