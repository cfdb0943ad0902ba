#include <lsoformer/model/config.hpp>

#include <lsoformer/model/params.hpp>

#include <json.hpp>

namespace lso::nn
{

std::string_view decoder_name( decoder_kind d )
{
  switch ( d )
  {
  case decoder_kind::transformer:
    return "transformer";
  case decoder_kind::mlp:
    return "mlp";
  case decoder_kind::mlp_multitask:
    return "mlp_multitask";
  case decoder_kind::recurrent:
    return "recurrent";
  }
  return "unknown";
}

std::optional<decoder_kind> decoder_from_name( std::string_view name )
{
  for ( auto const d : { decoder_kind::transformer, decoder_kind::mlp, decoder_kind::mlp_multitask, decoder_kind::recurrent } )
  {
    if ( decoder_name( d ) == name )
    {
      return d;
    }
  }
  if ( name == "lstm" )
  {
    return decoder_kind::recurrent;
  }
  return std::nullopt;
}

void model_config::validate() const
{
  if ( hidden == 0u || gcn_layers == 0u || recipe_length == 0u || vocab == 0u || regressor_width == 0u || decoder_layers == 0u )
  {
    throw model_error( "model dimensions must be positive" );
  }
  if ( heads == 0u || width() % heads != 0u )
  {
    throw model_error( "heads (" + std::to_string( heads ) + ") must divide the decoder width (" + std::to_string( width() ) + ")" );
  }
}

std::string model_config::to_json() const
{
  nlohmann::ordered_json j;
  j["decoder"] = std::string( decoder_name( decoder ) );
  j["hidden"] = hidden;
  j["gcn_layers"] = gcn_layers;
  j["heads"] = heads;
  j["ffn_width"] = ffn_width;
  j["decoder_layers"] = decoder_layers;
  j["regressor_width"] = regressor_width;
  j["recipe_length"] = recipe_length;
  j["max_depth"] = max_depth;
  j["vocab"] = vocab;
  j["pe_dim"] = pe_dim;
  j["padding_mask"] = padding_mask;
  return j.dump();
}

model_config model_config::from_json( std::string const& text )
{
  try
  {
    auto const j = nlohmann::json::parse( text );
    model_config c;
    auto const d = decoder_from_name( j.at( "decoder" ).get<std::string>() );
    if ( !d )
    {
      throw model_error( "unknown decoder in config" );
    }
    c.decoder = *d;
    c.hidden = j.at( "hidden" ).get<uint32_t>();
    c.gcn_layers = j.at( "gcn_layers" ).get<uint32_t>();
    c.heads = j.at( "heads" ).get<uint32_t>();
    c.ffn_width = j.at( "ffn_width" ).get<uint32_t>();
    c.decoder_layers = j.at( "decoder_layers" ).get<uint32_t>();
    c.regressor_width = j.at( "regressor_width" ).get<uint32_t>();
    c.recipe_length = j.at( "recipe_length" ).get<uint32_t>();
    c.max_depth = j.at( "max_depth" ).get<uint32_t>();
    c.vocab = j.at( "vocab" ).get<uint32_t>();
    c.pe_dim = j.at( "pe_dim" ).get<uint32_t>();
    c.padding_mask = j.at( "padding_mask" ).get<bool>();
    c.validate();
    return c;
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw model_error( std::string( "malformed model config: " ) + e.what() );
  }
}

bool operator==( model_config const& a, model_config const& b )
{
  return a.to_json() == b.to_json();
}

} // namespace lso::nn
