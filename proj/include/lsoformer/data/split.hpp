#pragma once

#include <lsoformer/data/dataset.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lso
{

enum class split_setup : uint8_t
{
  ip_inductive,
  recipe_inductive
};

std::string_view setup_name( split_setup s );
std::optional<split_setup> setup_from_name( std::string_view name );

struct split_spec
{
  split_setup setup = split_setup::recipe_inductive;
  double train_fraction = 0.66;
  double val_fraction = 0.33;
  uint64_t seed = 0u;
};

struct split_result
{
  /// Sample indices, ascending.
  std::vector<uint32_t> train;
  std::vector<uint32_t> val;
  /// Circuit ids (ip_inductive) or recipe ids (recipe_inductive), ascending.
  std::vector<uint32_t> train_keys;
  std::vector<uint32_t> val_keys;
};

/* The partitioned axis (circuits or recipes) is shuffled with the seed;
 * validation takes floor(val_fraction * n) keys, at least one, and training
 * takes the rest, also at least one. */
split_result split( std::span<dataset_sample const> samples, split_spec const& spec );

/// Rebuilds a split from stored key membership.
split_result split_from_keys( std::span<dataset_sample const> samples, split_setup setup, std::span<uint32_t const> val_keys );

} // namespace lso
