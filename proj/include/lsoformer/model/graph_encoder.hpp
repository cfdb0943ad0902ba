#pragma once

#include <lsoformer/aig/aig_graph.hpp>
#include <lsoformer/model/config.hpp>
#include <lsoformer/model/layers.hpp>

#include <Eigen/SparseCore>

#include <vector>

namespace lso::nn
{

inline constexpr uint32_t node_feature_width = 6u;

/// Everything the encoder needs from a circuit, computed once per circuit.
struct circuit_features
{
  uint32_t num_nodes = 0u;
  uint32_t depth = 0u;
  /// Symmetrically normalized adjacency with self loops, edges undirected.
  Eigen::SparseMatrix<double> adjacency;
  /// One-hot node type (input, and, output) followed by one-hot inverted
  /// predecessor count (0, 1, 2). The constant node has no type bit set.
  matrix features;
  /// adjacency * features, the first layer's fixed input.
  matrix propagated;
  /// Node indices per level.
  std::vector<std::vector<uint32_t>> levels;
};

circuit_features featurize( aig_graph const& g );

/// Graph convolution stack: H_l = A H_{l-1} W_l + b_l, with ReLU between
/// layers (not after the last one).
struct gcn_encoder
{
  std::vector<linear> layers;

  struct cache
  {
    std::vector<matrix> inputs; // A H_{l-1} per layer
    std::vector<matrix> pre;    // pre-activation per layer
  };

  static gcn_encoder make( param_store& ps, model_config const& cfg );

  matrix forward( param_store const& ps, circuit_features const& f, cache& c ) const;
  void backward( param_store& ps, circuit_features const& f, cache const& c, matrix const& dh ) const;
};

struct pool_cache
{
  /// For each pooled row and column, the node that supplied the maximum.
  std::vector<std::vector<uint32_t>> argmax;
  std::vector<uint32_t> counts;
};

/* Row l = [mean over level l | max over level l]; rows beyond the circuit
 * depth up to `num_levels` stay zero. */
matrix level_pool( matrix const& h, std::vector<std::vector<uint32_t>> const& levels, uint32_t num_levels, pool_cache& c );
matrix level_pool_backward( std::vector<std::vector<uint32_t>> const& levels, pool_cache const& c, matrix const& dpooled, Eigen::Index num_nodes );

/// [mean over all nodes | max over all nodes] as a single row.
matrix global_pool( matrix const& h, pool_cache& c );
matrix global_pool_backward( pool_cache const& c, matrix const& dpooled, Eigen::Index num_nodes );

} // namespace lso::nn
