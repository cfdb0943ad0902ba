#pragma once

#include <lsoformer/model/decoder.hpp>

namespace lso::nn
{

/// Single-layer LSTM over the recipe embeddings, gate order
/// [input | forget | cell | output]. The initial hidden state is projected
/// from the pooled graph vector; the initial cell state is zero.
struct lstm
{
  linear init;
  param_store::handle wx, wh, b;

  struct cache
  {
    matrix x;
    Eigen::RowVectorXd h0_pre;
    matrix h; // rows: h_0 .. h_M
    matrix c; // rows: c_0 .. c_M
    matrix gates; // activated gates per step
  };

  static lstm make( param_store& ps, std::string const& prefix, uint32_t width );

  /// Returns h_1 .. h_M as rows.
  matrix forward( param_store const& ps, matrix const& graph, matrix const& x, cache& c ) const;

  /// Accumulates parameter gradients; returns (dL/dgraph, dL/dx).
  std::pair<matrix, matrix> backward( param_store& ps, matrix const& graph, cache const& c, matrix const& dh ) const;
};

} // namespace lso::nn
