#pragma once

#include <lsoformer/model/config.hpp>
#include <lsoformer/model/layers.hpp>

#include <vector>

namespace lso::nn
{

/// Additive causal mask: 0 on and below the diagonal, -inf above.
matrix causal_mask( uint32_t size );

/* Multi-head scaled dot-product attention with concatenate-then-project
 * head merging:
 *   head_h = softmax(Q_h K_h^T / sqrt(d_k) + mask) V_h
 *   out    = [head_1 .. head_H] W_o + b_o
 * with Q = X_q W_q, K = X_kv W_k, V = X_kv W_v. Keys and values can be
 * projected once and reused for many queries (cross-attention). */
struct multi_head_attention
{
  param_store::handle wq, wk, wv;
  linear out;
  uint32_t heads = 1u;

  struct kv
  {
    matrix k, v;
  };

  struct cache
  {
    matrix q;
    matrix concat;
    /// Post-softmax weights per head (queries x keys).
    std::vector<matrix> weights;
  };

  static multi_head_attention make( param_store& ps, std::string const& prefix, param_group g, uint32_t width, uint32_t heads );

  kv project( param_store const& ps, matrix const& x_kv ) const;

  /// `causal`: query row i sees key columns <= i. `valid_keys`: key
  /// columns at or beyond this index are excluded.
  matrix attend( param_store const& ps, matrix const& x_q, kv const& keys, bool causal, Eigen::Index valid_keys, cache& c ) const;

  /// Accumulates parameter gradients and dK/dV; returns dL/dx_q.
  matrix attend_backward( param_store& ps, matrix const& x_q, kv const& keys, cache const& c, matrix const& dout, kv& dkeys ) const;

  /// Accumulates W_k/W_v gradients; returns dL/dx_kv.
  matrix project_backward( param_store& ps, matrix const& x_kv, kv const& dkeys ) const;
};

} // namespace lso::nn
