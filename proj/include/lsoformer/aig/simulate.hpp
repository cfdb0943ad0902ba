#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace lso
{

/// Evaluates every primary output for one input assignment (PI order).
std::vector<bool> simulate( aig_graph const& g, std::vector<bool> const& assignment );

/// Bit-parallel simulation: one word of patterns per primary input, one
/// word per primary output.
std::vector<uint64_t> simulate_words( aig_graph const& g, std::span<uint64_t const> pi_words );

/// Exhaustive truth tables of all outputs, `2^k` bits per output packed
/// into 64-bit words (k = number of PIs, at most 20).
std::vector<std::vector<uint64_t>> truth_tables( aig_graph const& g );

/// Exhaustive equivalence of two graphs with the same PI/PO counts.
bool functionally_equivalent( aig_graph const& a, aig_graph const& b );

} // namespace lso
