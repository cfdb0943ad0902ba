#include <lsoformer/model/checkpoint.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lso::nn
{

namespace
{

constexpr char magic[8] = { 'L', 'S', 'O', 'F', 'C', 'K', 'P', 'T' };

void put_u32( std::string& out, uint32_t v )
{
  for ( int i = 0; i < 4; ++i )
  {
    out.push_back( static_cast<char>( ( v >> ( 8 * i ) ) & 0xffu ) );
  }
}

void put_f64( std::string& out, double d )
{
  auto const v = std::bit_cast<uint64_t>( d );
  for ( int i = 0; i < 8; ++i )
  {
    out.push_back( static_cast<char>( ( v >> ( 8 * i ) ) & 0xffu ) );
  }
}

void put_string( std::string& out, std::string const& s )
{
  put_u32( out, static_cast<uint32_t>( s.size() ) );
  out += s;
}

class reader
{
public:
  explicit reader( std::string const& bytes ) : bytes_( bytes ) {}

  void need( size_t n ) const
  {
    if ( pos_ + n > bytes_.size() )
    {
      throw model_error( "truncated checkpoint" );
    }
  }

  uint64_t uint( int width )
  {
    need( static_cast<size_t>( width ) );
    uint64_t v = 0u;
    for ( int i = 0; i < width; ++i )
    {
      v |= static_cast<uint64_t>( static_cast<unsigned char>( bytes_[pos_++] ) ) << ( 8 * i );
    }
    return v;
  }

  uint32_t u32() { return static_cast<uint32_t>( uint( 4 ) ); }
  double f64() { return std::bit_cast<double>( uint( 8 ) ); }

  std::string string()
  {
    auto const n = u32();
    need( n );
    auto s = bytes_.substr( pos_, n );
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

private:
  std::string const& bytes_;
  size_t pos_ = 0u;
};

} // namespace

std::string serialize_checkpoint( qor_model const& model, std::string const& metadata )
{
  std::string out( magic, sizeof( magic ) );
  put_u32( out, checkpoint_version );
  put_string( out, model.config().to_json() );
  put_string( out, metadata );
  auto const& ps = model.params();
  put_u32( out, static_cast<uint32_t>( ps.tensors().size() ) );
  for ( param_store::handle h = 0; h < ps.tensors().size(); ++h )
  {
    auto const& t = ps.tensors()[h];
    put_string( out, t.name );
    put_u32( out, t.rows );
    put_u32( out, t.cols );
    auto const v = ps.value( h );
    for ( Eigen::Index i = 0; i < v.size(); ++i )
    {
      put_f64( out, v.data()[i] );
    }
  }
  return out;
}

checkpoint deserialize_checkpoint( std::string const& bytes )
{
  if ( bytes.size() < sizeof( magic ) || std::memcmp( bytes.data(), magic, sizeof( magic ) ) != 0 )
  {
    throw model_error( "not a checkpoint file" );
  }
  reader in( bytes );
  for ( size_t i = 0; i < sizeof( magic ); ++i )
  {
    in.uint( 1 );
  }
  if ( auto const v = in.u32(); v != checkpoint_version )
  {
    throw model_error( "unsupported checkpoint version " + std::to_string( v ) );
  }
  auto const cfg = model_config::from_json( in.string() );
  checkpoint ck;
  ck.metadata = in.string();
  ck.model = std::make_unique<qor_model>( cfg, 0u );
  auto& ps = ck.model->params();
  auto const count = in.u32();
  if ( count != ps.tensors().size() )
  {
    throw model_error( "checkpoint holds " + std::to_string( count ) + " tensors, the configured model has " +
                       std::to_string( ps.tensors().size() ) );
  }
  for ( uint32_t i = 0; i < count; ++i )
  {
    auto const name = in.string();
    auto const h = ps.find( name );
    auto const rows = in.u32();
    auto const cols = in.u32();
    auto const& t = ps.tensors()[h];
    if ( rows != t.rows || cols != t.cols )
    {
      throw model_error( "shape mismatch for " + name );
    }
    auto v = ps.value( h );
    for ( Eigen::Index k = 0; k < v.size(); ++k )
    {
      v.data()[k] = in.f64();
    }
  }
  if ( !in.done() )
  {
    throw model_error( "trailing bytes in checkpoint" );
  }
  return ck;
}

void save_checkpoint( qor_model const& model, std::filesystem::path const& path, std::string const& metadata )
{
  std::ofstream out( path, std::ios::binary );
  auto const bytes = serialize_checkpoint( model, metadata );
  out.write( bytes.data(), static_cast<std::streamsize>( bytes.size() ) );
  if ( !out )
  {
    throw model_error( "cannot write " + path.string() );
  }
}

checkpoint load_checkpoint( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw model_error( "cannot read " + path.string() );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint( ss.str() );
}

} // namespace lso::nn
