#pragma once

#include <lsoformer/synth/network.hpp>

namespace lso::synth
{

/* Single sweeps of the optimization passes. Each rebuilds the network in
 * topological order; the result may contain dangling logic that `cleanup`
 * removes. `zero_gain` relaxes the acceptance threshold from >0 to >=0. */

network balance_sweep( network const& ntk );
network rewrite_sweep( network const& ntk, bool zero_gain );
network refactor_sweep( network const& ntk, bool zero_gain );
network resub_sweep( network const& ntk, bool zero_gain );

/// Nodes removed if `root` were removed, stopping at `leaves` (may be
/// empty). `refs` is used as scratch and restored on return.
std::vector<uint32_t> mffc_nodes( network const& ntk, uint32_t root, std::vector<uint32_t>& refs,
                                  std::vector<uint32_t> const& leaves = {} );

} // namespace lso::synth
