#pragma once

#include <lsoformer/data/dataset.hpp>
#include <lsoformer/data/normalizer.hpp>
#include <lsoformer/data/split.hpp>
#include <lsoformer/model/model.hpp>
#include <lsoformer/train/metrics.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lso
{

enum class freeze_mode : uint8_t
{
  none,
  freeze_graph_encoder,
  freeze_recipe_encoder,
  freeze_both
};

std::string_view freeze_mode_name( freeze_mode m );
std::optional<freeze_mode> freeze_mode_from_name( std::string_view name );

struct train_config
{
  double learning_rate = 1e-3;
  uint32_t batch_size = 32u;
  uint32_t max_epochs = 200u;
  uint32_t patience = 20u;
  /// Stops after this many optimizer steps (0: no limit).
  uint32_t max_steps = 0u;
  uint64_t seed = 0u;
  loss_mode loss = loss_mode::trajectory;
  freeze_mode freeze = freeze_mode::none;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Throws std::invalid_argument for inconsistent settings.
  void validate( nn::decoder_kind decoder ) const;
};

struct example
{
  uint32_t circuit = 0u;
  std::vector<uint32_t> tokens;
  std::vector<double> raw;
};

/// Featurized circuits plus normalized train/validation examples.
struct training_data
{
  std::vector<nn::circuit_features> circuits;
  std::vector<example> train;
  std::vector<example> val;
  normalizer norm;
  uint32_t max_depth = 0u;
};

/// Featurizes the circuits, applies the split and fits the normalizer on the
/// training finals.
training_data prepare_training_data( std::span<aig_graph const> circuits, std::span<dataset_sample const> samples,
                                     split_result const& split );

struct evaluation
{
  /// Final-step MAPE in raw QoR units.
  double final_mape = 0.0;
  /// MAPE per step; a final-only model's prediction stands in for every step.
  std::vector<double> step_mape;
  /// Mean joint loss in normalized space (trajectory mode).
  double loss = 0.0;
  std::vector<std::vector<double>> predictions_raw;
};

evaluation evaluate( nn::qor_model const& model, training_data const& data, std::span<example const> examples );

/// Final-step MAPE of predicting the training-split mean final QoR.
double mean_predictor_mape( training_data const& data, std::span<example const> examples );

struct epoch_record
{
  uint32_t epoch = 0u;
  uint32_t steps = 0u;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_mape = 0.0;
};

struct eval_report
{
  double train_mape = 0.0;
  double val_mape = 0.0;
  std::vector<double> val_step_mape;
  uint32_t best_epoch = 0u;
  uint32_t epochs_run = 0u;
  uint32_t steps = 0u;
  std::vector<epoch_record> curve;
};

using epoch_callback = std::function<void( epoch_record const& )>;

/* Adam on the batch-mean loss, batches drawn from a seeded shuffle of the
 * training examples each epoch. Early stopping watches validation
 * final-step MAPE; the best parameters are restored before returning. */
eval_report train( nn::qor_model& model, training_data const& data, train_config const& cfg, epoch_callback const& on_epoch = {} );

/// Mean training loss over `examples` under `mode` (normalized space).
double dataset_loss( nn::qor_model const& model, training_data const& data, std::span<example const> examples, loss_mode mode );

} // namespace lso
