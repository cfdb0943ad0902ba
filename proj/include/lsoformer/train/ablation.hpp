#pragma once

#include <lsoformer/train/trainer.hpp>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace lso
{

struct ablation_cell
{
  std::string label;
  nn::decoder_kind decoder = nn::decoder_kind::transformer;
  loss_mode loss = loss_mode::trajectory;
  freeze_mode freeze = freeze_mode::none;
  /// Train everything on the intermediate steps first, then probe with
  /// both encoders frozen.
  bool pretext = false;
};

/// Rows of comparison table 3 (freeze probing), 4 (SSL x decoder) or 5
/// (decoder family). Throws std::invalid_argument for other numbers.
std::vector<ablation_cell> ablation_table( int table );

struct ablation_settings
{
  nn::model_config model;
  train_config train;
  std::vector<uint64_t> seeds{ 1u, 2u, 3u };
};

struct ablation_result
{
  ablation_cell cell;
  std::vector<double> val_mape;
  std::vector<double> train_mape;
  std::vector<uint32_t> best_epoch;
  double median_val_mape = 0.0;
};

double median( std::vector<double> values );

using ablation_progress = std::function<void( ablation_cell const&, uint64_t seed, eval_report const& )>;

/// Every cell is trained once per seed on the same data; model init and
/// shuffling derive from the seed only, so cells differ by configuration.
eval_report train_cell( ablation_cell const& cell, training_data const& data, ablation_settings const& settings, uint64_t seed,
                        std::unique_ptr<nn::qor_model>* trained = nullptr );

std::vector<ablation_result> run_ablation( std::span<ablation_cell const> cells, training_data const& data,
                                           ablation_settings const& settings, ablation_progress const& progress = {} );

/// CSV: label, decoder, loss, freeze, median, then one column per seed.
void write_ablation_csv( std::ostream& os, std::span<ablation_result const> results, std::span<uint64_t const> seeds );

/// Loss curve as line-delimited JSON records and as CSV.
void write_curve_jsonl( std::ostream& os, std::span<epoch_record const> curve );
void write_curve_csv( std::ostream& os, std::span<epoch_record const> curve );

} // namespace lso
