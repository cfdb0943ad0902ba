#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lso
{

/// The heuristic vocabulary. The enumerator value is the token id.
enum class heuristic : uint8_t
{
  balance = 0,
  rw = 1,
  rw_z = 2,
  rf = 3,
  rf_z = 4,
  rs = 5,
  rs_z = 6
};

inline constexpr uint32_t num_heuristics = 7u;

inline constexpr std::array<heuristic, num_heuristics> all_heuristics = {
    heuristic::balance, heuristic::rw, heuristic::rw_z, heuristic::rf, heuristic::rf_z, heuristic::rs, heuristic::rs_z };

std::string_view heuristic_name( heuristic h );

/// Accepts the names above as well as ABC spellings (`b`, `rw -z`, `rwz`...).
std::optional<heuristic> heuristic_from_name( std::string_view name );

heuristic heuristic_from_token( uint32_t token );

enum class qor_metric : uint8_t
{
  delay,
  area
};

std::string_view metric_name( qor_metric m );
std::optional<qor_metric> metric_from_name( std::string_view name );

/* Delay proxy: logic depth including output nodes. Area proxy: AND count. */
double measure_qor( aig_graph const& g, qor_metric metric );

/// Applies one optimization pass. The result is functionally equivalent to
/// `g`, deterministic, and a fixpoint w.r.t. QoR: applying the same pass to
/// the result returns it unchanged.
aig_graph apply_heuristic( aig_graph const& g, heuristic h );

struct qor_trajectory
{
  std::vector<double> values;
  qor_metric metric = qor_metric::delay;
  uint32_t circuit_id = 0u;
  uint32_t recipe_id = 0u;
  /// QoR of the unoptimized circuit; not part of `values`.
  double initial = 0.0;

  double final_qor() const { return values.back(); }
};

/// values[k] is the QoR after applying steps[0..k].
qor_trajectory run_recipe( aig_graph const& g, std::span<heuristic const> steps, qor_metric metric );

} // namespace lso
