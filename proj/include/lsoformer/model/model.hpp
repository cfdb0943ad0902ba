#pragma once

#include <lsoformer/model/baselines.hpp>
#include <lsoformer/model/config.hpp>
#include <lsoformer/model/graph_encoder.hpp>

#include <functional>
#include <span>
#include <vector>

namespace lso::nn
{

struct model_input
{
  circuit_features const* circuit = nullptr;
  std::span<uint32_t const> tokens;
};

/// Intermediate values of one forward pass, for inspection and tests.
struct forward_trace
{
  matrix levels;                        // pooled level sequence (transformer)
  matrix recipe;                        // token embeddings + positional encoding
  std::vector<matrix> self_weights;     // per block and head
  std::vector<matrix> cross_weights;    // per block and head
  matrix decoded;                       // final block output
  Eigen::VectorXd prediction;
};

/* Per-sample loss callback: receives the prediction, writes dL/dprediction
 * and returns the loss. */
using loss_fn = std::function<double( size_t sample, Eigen::VectorXd const& prediction, Eigen::VectorXd& grad )>;

/// LSOformer and the baseline decoders behind one interface.
///
/// Predictions are in normalized QoR space. Trajectory decoders emit M
/// values; the concat-MLP baseline emits the final value only.
class qor_model
{
public:
  qor_model( model_config const& cfg, uint64_t seed );

  model_config const& config() const noexcept { return cfg_; }
  param_store& params() noexcept { return params_; }
  param_store const& params() const noexcept { return params_; }

  uint32_t num_outputs() const { return cfg_.decoder == decoder_kind::mlp ? 1u : cfg_.recipe_length; }

  std::vector<Eigen::VectorXd> predict( std::span<model_input const> batch ) const;
  Eigen::VectorXd predict( model_input const& input ) const;

  /// Forward and backward over a batch; gradients accumulate into
  /// params().grads(). Returns the summed loss. The graph encoder backward
  /// pass is skipped when `train_graph_encoder` is false.
  double backprop( std::span<model_input const> batch, loss_fn const& loss, bool train_graph_encoder = true );

  forward_trace trace( model_input const& input ) const;

private:
  struct graph_state;
  struct sample_state;

  void encode( circuit_features const& f, graph_state& g ) const;
  Eigen::VectorXd decode( graph_state const& g, std::span<uint32_t const> tokens, sample_state& s ) const;
  void decode_backward( graph_state& g, sample_state const& s, Eigen::VectorXd const& dy );
  void encode_backward( circuit_features const& f, graph_state& g, bool train_graph_encoder );

  model_config cfg_;
  param_store params_;
  gcn_encoder gcn_;
  param_store::handle token_table_ = 0u;
  matrix pe_;
  std::vector<decoder_block> blocks_;
  regressor head_;
  linear trunk_;
  std::vector<regressor> task_heads_;
  lstm lstm_;
};

} // namespace lso::nn
