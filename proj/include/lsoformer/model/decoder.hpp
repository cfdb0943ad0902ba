#pragma once

#include <lsoformer/model/attention.hpp>

#include <span>

namespace lso::nn
{

/* PE(m, 2k) = sin(m / 10000^(2k / dim)), PE(m, 2k+1) = cos(same), for
 * positions m = 0..rows-1 and an even or odd `width`. */
matrix positional_encoding( uint32_t rows, uint32_t width, uint32_t dim );

/// Rows of `table` selected by `tokens`.
matrix embed_tokens( const_matrix_map const& table, std::span<uint32_t const> tokens );

/* One decoder block, each sub-layer wrapped in a residual connection and
 * layer normalization:
 *   x1 = LN(x  + SelfAttn(x, causal))
 *   x2 = LN(x1 + CrossAttn(x1, levels))
 *   x3 = LN(x2 + FFN(x2)),  FFN(u) = relu(u W1 + b1) W2 + b2 */
struct decoder_block
{
  multi_head_attention self_attn;
  layer_norm ln1;
  multi_head_attention cross_attn;
  layer_norm ln2;
  linear ffn1, ffn2;
  layer_norm ln3;

  struct cache
  {
    matrix x;
    multi_head_attention::kv self_kv;
    multi_head_attention::cache sa;
    layer_norm::cache n1;
    matrix x1;
    multi_head_attention::cache ca;
    layer_norm::cache n2;
    matrix x2;
    matrix f_pre;
    matrix f_act;
    layer_norm::cache n3;
  };

  static decoder_block make( param_store& ps, std::string const& prefix, model_config const& cfg );

  matrix forward( param_store const& ps, matrix const& x, multi_head_attention::kv const& levels, Eigen::Index valid_levels,
                  cache& c ) const;

  /// Returns dL/dx and accumulates the gradient w.r.t. the level keys/values.
  matrix backward( param_store& ps, multi_head_attention::kv const& levels, cache const& c, matrix const& dout,
                   multi_head_attention::kv& dlevels ) const;
};

/// Shared two-layer MLP mapping each row to one scalar.
struct regressor
{
  linear hidden, output;

  struct cache
  {
    matrix x, pre, act;
  };

  static regressor make( param_store& ps, std::string const& prefix, uint32_t in, uint32_t width );
  Eigen::VectorXd forward( param_store const& ps, matrix const& x, cache& c ) const;
  matrix backward( param_store& ps, cache const& c, Eigen::VectorXd const& dy ) const;
};

} // namespace lso::nn
