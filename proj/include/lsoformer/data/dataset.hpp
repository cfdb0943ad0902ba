#pragma once

#include <lsoformer/aig/aig_graph.hpp>
#include <lsoformer/data/recipe.hpp>
#include <lsoformer/synth/heuristics.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace lso
{

struct dataset_sample
{
  uint32_t circuit_id = 0u;
  uint32_t recipe_id = 0u;
  std::vector<uint32_t> steps;
  std::vector<double> raw;
  double initial = 0.0;

  double final_qor() const { return raw.back(); }
};

struct circuit_info
{
  uint32_t id = 0u;
  std::string name;
  uint64_t hash = 0u;
  uint32_t num_nodes = 0u;
  uint32_t depth = 0u;
  /// Netlist location relative to the dataset directory; empty if unknown.
  std::string path;
};

struct dataset
{
  qor_metric metric = qor_metric::delay;
  uint32_t recipe_length = 0u;
  uint64_t seed = 0u;
  std::vector<circuit_info> circuits;
  std::vector<recipe> recipes;
  /// Ordered by circuit id, then recipe id.
  std::vector<dataset_sample> samples;
};

/// Runs every recipe on every circuit. Circuit ids are positions in
/// `circuits`. States reached by several recipe prefixes are optimized once.
dataset build_dataset( std::span<aig_graph const> circuits, std::span<recipe const> recipes, qor_metric metric );

/* Line-delimited records, one per sample:
 *   {"circuit_id":0,"recipe_id":3,"steps":[..],"raw_trajectory":[..],"metric":"delay"}
 * The manifest (JSON) holds seed, M, R, metric, circuit and recipe tables,
 * and optionally normalizer statistics and split membership. */
void write_samples( dataset const& d, std::filesystem::path const& path );
std::vector<dataset_sample> read_samples( std::filesystem::path const& path, qor_metric* metric = nullptr );

/// Seeded synthetic corpus: `count` circuits with 50..2000 nodes
/// (log-uniform), named synth_000, synth_001, ...
std::vector<aig_graph> synthetic_corpus( uint32_t count, uint64_t seed, uint32_t min_nodes = 50u, uint32_t max_nodes = 2000u );

} // namespace lso
