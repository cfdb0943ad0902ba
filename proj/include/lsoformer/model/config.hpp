#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lso::nn
{

enum class decoder_kind : uint8_t
{
  transformer,
  mlp,
  mlp_multitask,
  recurrent
};

std::string_view decoder_name( decoder_kind d );
std::optional<decoder_kind> decoder_from_name( std::string_view name );

struct model_config
{
  decoder_kind decoder = decoder_kind::transformer;
  /// Node embedding width d_h; the decoder width is 2 * d_h.
  uint32_t hidden = 32u;
  uint32_t gcn_layers = 2u;
  uint32_t heads = 4u;
  /// 0 selects 4 * decoder width.
  uint32_t ffn_width = 0u;
  uint32_t decoder_layers = 1u;
  /// Hidden width of the regression MLP (and of the baseline trunks).
  uint32_t regressor_width = 64u;
  /// Recipe length M.
  uint32_t recipe_length = 10u;
  /// Deepest supported circuit; the level sequence has max_depth + 1 rows.
  uint32_t max_depth = 64u;
  uint32_t vocab = 7u;
  /// Denominator of the positional-encoding exponent; 0 selects the decoder width.
  uint32_t pe_dim = 0u;
  /// Exclude zero-padded levels from cross-attention.
  bool padding_mask = false;

  uint32_t width() const { return 2u * hidden; }
  uint32_t ffn() const { return ffn_width ? ffn_width : 4u * width(); }
  uint32_t pe_denominator() const { return pe_dim ? pe_dim : width(); }
  uint32_t num_levels() const { return max_depth + 1u; }

  /// Throws model_error if the values are inconsistent.
  void validate() const;
  std::string to_json() const;
  static model_config from_json( std::string const& text );
};

bool operator==( model_config const& a, model_config const& b );

} // namespace lso::nn
