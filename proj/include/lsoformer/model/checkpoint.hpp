#pragma once

#include <lsoformer/model/model.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace lso::nn
{

/* Checkpoint layout (all integers little-endian):
 *   "LSOFCKPT"  u32 version
 *   u32 n, n bytes  model config (JSON)
 *   u32 n, n bytes  free-form metadata (JSON)
 *   u32 tensor count
 *   per tensor: u32 n, n bytes name, u32 rows, u32 cols,
 *               rows*cols IEEE-754 float64 values in column-major order */
inline constexpr uint32_t checkpoint_version = 1u;

struct checkpoint
{
  std::unique_ptr<qor_model> model;
  std::string metadata;
};

std::string serialize_checkpoint( qor_model const& model, std::string const& metadata = "{}" );
checkpoint deserialize_checkpoint( std::string const& bytes );

void save_checkpoint( qor_model const& model, std::filesystem::path const& path, std::string const& metadata = "{}" );
checkpoint load_checkpoint( std::filesystem::path const& path );

} // namespace lso::nn
