#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <cstdint>
#include <string>

namespace lso
{

struct random_aig_params
{
  uint32_t num_inputs = 8u;
  uint32_t num_ands = 64u;
  /// Fanins are drawn from the most recent `window` nodes with probability
  /// `locality`, otherwise uniformly; this controls logic depth.
  uint32_t window = 16u;
  double locality = 0.7;
  double inverter_rate = 0.5;
  /// Probability of emitting a locally redundant pattern (re-used fanin,
  /// swapped duplicate, redundant chain) instead of a fresh AND.
  double redundancy = 0.15;
};

/* Generates a combinational AIG in canonical layout: inputs, then AND nodes
 * (each referencing earlier nodes only), then outputs. Every node without
 * fanout drives an output, so the graph has no dangling logic. */
aig_graph random_aig( random_aig_params const& params, uint64_t seed, std::string name = {} );

/// Desk-scale benchmark circuit with roughly `target_nodes` nodes in total.
aig_graph random_benchmark_circuit( uint32_t target_nodes, uint64_t seed, std::string name = {} );

} // namespace lso
