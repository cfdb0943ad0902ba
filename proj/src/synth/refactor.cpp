#include <lsoformer/synth/passes.hpp>

#include <algorithm>
#include <array>
#include <map>

namespace lso::synth
{

namespace
{

constexpr uint32_t cut_size = 4u;
constexpr uint32_t cut_limit = 8u;

struct cut
{
  std::array<uint32_t, cut_size> leaves{};
  uint32_t size = 0u;

  auto begin() const { return leaves.begin(); }
  auto end() const { return leaves.begin() + size; }
  bool operator<( cut const& o ) const
  {
    return size != o.size ? size < o.size : std::lexicographical_compare( begin(), end(), o.begin(), o.end() );
  }
  bool operator==( cut const& o ) const { return size == o.size && std::equal( begin(), end(), o.begin() ); }
};

std::optional<cut> merge( cut const& a, cut const& b )
{
  cut c;
  auto i = a.begin();
  auto j = b.begin();
  while ( i != a.end() || j != b.end() )
  {
    uint32_t v;
    if ( j == b.end() || ( i != a.end() && *i < *j ) )
    {
      v = *i++;
    }
    else if ( i == a.end() || *j < *i )
    {
      v = *j++;
    }
    else
    {
      v = *i++;
      ++j;
    }
    if ( c.size == cut_size )
    {
      return std::nullopt;
    }
    c.leaves[c.size++] = v;
  }
  return c;
}

bool dominates( cut const& small, cut const& big )
{
  return std::includes( big.begin(), big.end(), small.begin(), small.end() );
}

std::vector<std::vector<cut>> enumerate_cuts( network const& ntk )
{
  std::vector<std::vector<cut>> cuts( ntk.size() );
  cuts[0].push_back( cut{} );
  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    cut trivial;
    trivial.leaves[0] = n;
    trivial.size = 1u;
    if ( !ntk.is_and( n ) )
    {
      cuts[n].push_back( trivial );
      continue;
    }
    std::vector<cut> merged;
    for ( auto const& a : cuts[lit_node( ntk.at( n ).fanin[0] )] )
    {
      for ( auto const& b : cuts[lit_node( ntk.at( n ).fanin[1] )] )
      {
        if ( auto c = merge( a, b ) )
        {
          merged.push_back( *c );
        }
      }
    }
    std::sort( merged.begin(), merged.end() );
    merged.erase( std::unique( merged.begin(), merged.end() ), merged.end() );
    auto& result = cuts[n];
    result.push_back( trivial );
    for ( auto const& c : merged )
    {
      if ( result.size() > cut_limit )
      {
        break;
      }
      bool dominated = false;
      for ( size_t k = 1; k < result.size() && !dominated; ++k )
      {
        dominated = dominates( result[k], c );
      }
      if ( !dominated )
      {
        result.push_back( c );
      }
    }
  }
  return cuts;
}

constexpr std::array<uint32_t, 4> var_tt = { 0xaaaau, 0xccccu, 0xf0f0u, 0xff00u };
constexpr uint32_t tt_mask = 0xffffu;

uint32_t cof0( uint32_t t, int v )
{
  uint32_t const x = var_tt[v];
  return ( ( t & ~x ) | ( ( t & ~x ) << ( 1 << v ) ) ) & tt_mask;
}

uint32_t cof1( uint32_t t, int v )
{
  uint32_t const x = var_tt[v];
  return ( ( t & x ) | ( ( t & x ) >> ( 1 << v ) ) ) & tt_mask;
}

/* cube: bit v of `mask` set if variable v appears; bit v of `pos` set if it
 * appears uncomplemented */
struct cube
{
  uint8_t mask = 0u;
  uint8_t pos = 0u;
};

/* Minato-Morreale irredundant sum-of-products. Returns the function of the
 * produced cover. */
uint32_t isop( uint32_t on, uint32_t ondc, int nvars, std::vector<cube>& cubes )
{
  if ( on == 0u )
  {
    return 0u;
  }
  if ( ondc == tt_mask )
  {
    cubes.push_back( cube{} );
    return tt_mask;
  }
  int v = nvars - 1;
  while ( v >= 0 && cof0( on, v ) == cof1( on, v ) && cof0( ondc, v ) == cof1( ondc, v ) )
  {
    --v;
  }
  auto const on0 = cof0( on, v );
  auto const on1 = cof1( on, v );
  auto const dc0 = cof0( ondc, v );
  auto const dc1 = cof1( ondc, v );

  auto const beg0 = cubes.size();
  auto const res0 = isop( on0 & ~dc1 & tt_mask, dc0, v, cubes );
  for ( auto k = beg0; k < cubes.size(); ++k )
  {
    cubes[k].mask |= 1u << v;
  }
  auto const beg1 = cubes.size();
  auto const res1 = isop( on1 & ~dc0 & tt_mask, dc1, v, cubes );
  for ( auto k = beg1; k < cubes.size(); ++k )
  {
    cubes[k].mask |= 1u << v;
    cubes[k].pos |= 1u << v;
  }
  auto const res2 = isop( ( ( on0 & ~res0 ) | ( on1 & ~res1 ) ) & tt_mask, dc0 & dc1, v, cubes );
  uint32_t const x = var_tt[v];
  return ( ( res0 & ~x ) | ( res1 & x ) | res2 ) & tt_mask;
}

/// Evaluates candidate structures without touching the network. Virtual
/// nodes get indices at and above `ntk.size()`.
class trial_builder
{
public:
  explicit trial_builder( network const& ntk ) : ntk_( ntk ) {}

  lit_t and_( lit_t a, lit_t b )
  {
    if ( auto const t = network::trivial_and( a, b ) )
    {
      return *t;
    }
    if ( a > b )
    {
      std::swap( a, b );
    }
    if ( !is_virtual( a ) && !is_virtual( b ) )
    {
      if ( auto const hit = ntk_.lookup( a, b ) )
      {
        hits_.push_back( lit_node( *hit ) );
        return *hit;
      }
    }
    auto const key = std::make_pair( a, b );
    if ( auto const it = virtual_.find( key ); it != virtual_.end() )
    {
      return it->second;
    }
    auto const l = make_lit( ntk_.size() + static_cast<uint32_t>( levels_.size() ) );
    levels_.push_back( 1u + std::max( level( a ), level( b ) ) );
    fanins_.push_back( key );
    virtual_.emplace( key, l );
    return l;
  }

  uint32_t level( lit_t l ) const { return is_virtual( l ) ? levels_[lit_node( l ) - ntk_.size()] : ntk_.level( l ); }
  uint32_t num_new() const { return static_cast<uint32_t>( levels_.size() ); }
  std::vector<uint32_t> const& hits() const { return hits_; }
  std::optional<std::pair<lit_t, lit_t>> fanins_of( lit_t l ) const
  {
    if ( !is_virtual( l ) )
    {
      return std::nullopt;
    }
    return fanins_[lit_node( l ) - ntk_.size()];
  }

private:
  bool is_virtual( lit_t l ) const { return lit_node( l ) >= ntk_.size(); }

  network const& ntk_;
  std::vector<uint32_t> levels_;
  std::vector<std::pair<lit_t, lit_t>> fanins_;
  std::map<std::pair<lit_t, lit_t>, lit_t> virtual_;
  std::vector<uint32_t> hits_;
};

class real_builder
{
public:
  explicit real_builder( network& ntk ) : ntk_( ntk ) {}
  lit_t and_( lit_t a, lit_t b ) { return ntk_.and_hashed( a, b ); }
  uint32_t level( lit_t l ) const { return ntk_.level( l ); }

private:
  network& ntk_;
};

template<typename Builder>
lit_t and_balanced( Builder& b, std::vector<lit_t> ops )
{
  if ( ops.empty() )
  {
    return const1_lit;
  }
  while ( ops.size() > 1u )
  {
    std::sort( ops.begin(), ops.end(), [&]( lit_t x, lit_t y ) {
      auto const lx = b.level( x );
      auto const ly = b.level( y );
      return lx != ly ? lx < ly : x < y;
    } );
    auto const r = b.and_( ops[0], ops[1] );
    ops.erase( ops.begin(), ops.begin() + 2 );
    ops.push_back( r );
  }
  return ops[0];
}

template<typename Builder>
lit_t build_sop( Builder& b, std::vector<cube> const& cubes, std::array<lit_t, cut_size> const& leaves, bool complement )
{
  if ( cubes.empty() )
  {
    return lit_not_if( const0_lit, complement );
  }
  std::vector<lit_t> terms;
  for ( auto const& c : cubes )
  {
    std::vector<lit_t> lits;
    for ( uint32_t v = 0; v < cut_size; ++v )
    {
      if ( c.mask & ( 1u << v ) )
      {
        lits.push_back( lit_not_if( leaves[v], !( c.pos & ( 1u << v ) ) ) );
      }
    }
    terms.push_back( lit_not( and_balanced( b, std::move( lits ) ) ) );
  }
  /* OR of cubes = !AND(!cube) */
  auto const r = terms.size() == 1u ? lit_not( terms[0] ) : lit_not( and_balanced( b, std::move( terms ) ) );
  return lit_not_if( r, complement );
}

} // namespace

network refactor_sweep( network const& ntk, bool zero_gain )
{
  auto const cuts = enumerate_cuts( ntk );
  auto refs = ntk.reference_counts();

  network out;
  std::vector<lit_t> map( ntk.size(), const0_lit );
  for ( auto const pi : ntk.pis() )
  {
    map[pi] = out.create_pi();
  }
  auto tr = [&]( lit_t l ) { return lit_not_if( map[lit_node( l )], lit_compl( l ) ); };

  std::vector<uint32_t> tt( ntk.size(), 0u );
  std::vector<uint32_t> stamp( ntk.size(), 0u );
  uint32_t epoch = 0u;

  for ( uint32_t n = 1; n < ntk.size(); ++n )
  {
    if ( !ntk.is_and( n ) )
    {
      continue;
    }
    auto const f0 = tr( ntk.at( n ).fanin[0] );
    auto const f1 = tr( ntk.at( n ).fanin[1] );
    if ( auto const t = network::trivial_and( f0, f1 ) )
    {
      map[n] = *t;
      continue;
    }
    auto const existing = out.lookup( f0, f1 );
    uint32_t const default_level = existing ? out.level( *existing ) : 1u + std::max( out.level( f0 ), out.level( f1 ) );

    struct choice
    {
      int gain;
      uint32_t level;
      size_t cut_index;
      bool complement;
      std::vector<cube> cubes;
    };
    std::optional<choice> best;

    auto const& node_cuts = cuts[n];
    for ( size_t ci = 1; ci < node_cuts.size(); ++ci )
    {
      auto const& c = node_cuts[ci];

      /* truth table of n over the cut leaves */
      ++epoch;
      for ( uint32_t v = 0; v < c.size; ++v )
      {
        tt[c.leaves[v]] = var_tt[v];
        stamp[c.leaves[v]] = epoch;
      }
      tt[0] = 0u;
      stamp[0] = epoch;
      std::vector<uint32_t> stack{ n };
      while ( !stack.empty() )
      {
        auto const v = stack.back();
        if ( stamp[v] == epoch )
        {
          stack.pop_back();
          continue;
        }
        auto const a = lit_node( ntk.at( v ).fanin[0] );
        auto const b = lit_node( ntk.at( v ).fanin[1] );
        if ( stamp[a] != epoch )
        {
          stack.push_back( a );
          continue;
        }
        if ( stamp[b] != epoch )
        {
          stack.push_back( b );
          continue;
        }
        auto const ta = lit_compl( ntk.at( v ).fanin[0] ) ? ~tt[a] : tt[a];
        auto const tb = lit_compl( ntk.at( v ).fanin[1] ) ? ~tt[b] : tt[b];
        tt[v] = ta & tb & tt_mask;
        stamp[v] = epoch;
        stack.pop_back();
      }
      uint32_t const func = tt[n];

      std::vector<uint32_t> const leaves( c.begin(), c.end() );
      auto const mffc = mffc_nodes( ntk, n, refs, leaves );
      std::vector<uint32_t> images;
      for ( size_t k = 1; k < mffc.size(); ++k )
      {
        auto const img = lit_node( map[mffc[k]] );
        if ( out.is_and( img ) )
        {
          images.push_back( img );
        }
      }
      std::sort( images.begin(), images.end() );
      images.erase( std::unique( images.begin(), images.end() ), images.end() );

      std::array<lit_t, cut_size> leaf_lits{};
      for ( uint32_t v = 0; v < c.size; ++v )
      {
        leaf_lits[v] = map[c.leaves[v]];
      }

      for ( bool const complement : { false, true } )
      {
        uint32_t const target = complement ? ( ~func & tt_mask ) : func;
        std::vector<cube> cubes;
        isop( target, target, static_cast<int>( c.size ), cubes );

        trial_builder trial( out );
        auto const root = build_sop( trial, cubes, leaf_lits, complement );
        if ( existing && root == *existing )
        {
          continue;
        }
        if ( auto const fi = trial.fanins_of( root ) )
        {
          if ( !existing && ( ( fi->first == f0 && fi->second == f1 ) || ( fi->first == f1 && fi->second == f0 ) ) )
          {
            continue;
          }
        }
        int saved = existing ? 0 : 1;
        for ( auto const img : images )
        {
          if ( std::find( trial.hits().begin(), trial.hits().end(), img ) == trial.hits().end() )
          {
            ++saved;
          }
        }
        int const gain = saved - static_cast<int>( trial.num_new() );
        uint32_t const level = trial.level( root );

        bool const accept = zero_gain ? ( gain >= 0 && level <= default_level )
                                      : ( gain > 0 || ( gain == 0 && level < default_level ) );
        if ( !accept )
        {
          continue;
        }
        if ( !best || gain > best->gain || ( gain == best->gain && level < best->level ) )
        {
          best = choice{ gain, level, ci, complement, std::move( cubes ) };
        }
      }
    }

    if ( best )
    {
      auto const& c = node_cuts[best->cut_index];
      std::array<lit_t, cut_size> leaf_lits{};
      for ( uint32_t v = 0; v < c.size; ++v )
      {
        leaf_lits[v] = map[c.leaves[v]];
      }
      real_builder builder( out );
      map[n] = build_sop( builder, best->cubes, leaf_lits, best->complement );
    }
    else
    {
      map[n] = out.and_hashed( f0, f1 );
    }
  }

  for ( auto const po : ntk.pos() )
  {
    out.create_po( tr( po ) );
  }
  return out;
}

} // namespace lso::synth
