#pragma once

#include <lsoformer/aig/aig_graph.hpp>
#include <lsoformer/data/dataset.hpp>
#include <lsoformer/data/normalizer.hpp>
#include <lsoformer/data/split.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace lso
{

struct split_record
{
  split_spec spec;
  std::vector<uint32_t> val_keys;
};

/// A dataset directory: manifest.json, samples.jsonl and circuits/*.bench.
struct stored_dataset
{
  dataset data;
  std::vector<aig_graph> circuits;
  std::optional<split_record> split;
  std::optional<normalizer> norm;
};

void save_dataset( stored_dataset const& s, std::filesystem::path const& dir );

/// Loads and cross-checks the manifest, samples and circuit netlists.
stored_dataset load_dataset( std::filesystem::path const& dir );

/// FNV-1a 64 of a byte string, printed as 16 hex digits.
std::string content_hash( std::string_view bytes );
std::string file_hash( std::filesystem::path const& path );

} // namespace lso
