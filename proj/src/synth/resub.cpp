#include <lsoformer/synth/passes.hpp>

#include <lsoformer/util/rng.hpp>

#include <algorithm>
#include <unordered_map>

namespace lso::synth
{

namespace
{

constexpr uint64_t signature_seed = 0x5eed5eedull;
constexpr uint32_t max_exact_support = 12u;
constexpr uint32_t max_candidates = 3u;
constexpr uint32_t divisor_depth = 3u;
constexpr uint32_t max_divisors = 16u;

/// Exhaustive check of `x0 & x1` against `y0 & y1` (complemented when
/// `invert`) over their joint support. Gives up above 12 support inputs.
class exact_checker
{
public:
  explicit exact_checker( network const& ntk ) : ntk_( ntk ) {}

  bool equal( lit_t x0, lit_t x1, lit_t y0, lit_t y1, bool invert = false )
  {
    ++epoch_;
    if ( stamp_.size() < ntk_.size() )
    {
      stamp_.resize( ntk_.size(), 0u );
      slot_.resize( ntk_.size(), 0u );
    }
    cone_.clear();
    support_.clear();
    for ( auto const l : { x0, x1, y0, y1 } )
    {
      if ( !collect( lit_node( l ) ) )
      {
        return false;
      }
    }
    auto const k = static_cast<uint32_t>( support_.size() );
    size_t const words = k <= 6u ? 1u : ( size_t{ 1 } << ( k - 6u ) );
    uint64_t const mask = k >= 6u ? ~uint64_t{ 0 } : ( ( uint64_t{ 1 } << ( uint64_t{ 1 } << k ) ) - 1u );

    std::sort( cone_.begin(), cone_.end() );
    values_.assign( ( cone_.size() + support_.size() + 1u ) * words, 0u );
    /* slot 0: constant */
    uint32_t next = 1u;
    for ( uint32_t i = 0; i < k; ++i )
    {
      slot_[support_[i]] = next;
      auto* w = &values_[next * words];
      for ( size_t j = 0; j < words; ++j )
      {
        if ( i < 6u )
        {
          static constexpr uint64_t pattern[6] = { 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                                                   0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };
          w[j] = pattern[i];
        }
        else
        {
          w[j] = ( ( j >> ( i - 6u ) ) & 1u ) ? ~uint64_t{ 0 } : 0u;
        }
      }
      ++next;
    }
    slot_[0] = 0u;
    for ( auto const n : cone_ )
    {
      slot_[n] = next;
      auto const f0 = ntk_.at( n ).fanin[0];
      auto const f1 = ntk_.at( n ).fanin[1];
      auto const* a = &values_[slot_[lit_node( f0 )] * words];
      auto const* b = &values_[slot_[lit_node( f1 )] * words];
      auto* w = &values_[next * words];
      uint64_t const ca = lit_compl( f0 ) ? ~uint64_t{ 0 } : 0u;
      uint64_t const cb = lit_compl( f1 ) ? ~uint64_t{ 0 } : 0u;
      for ( size_t j = 0; j < words; ++j )
      {
        w[j] = ( a[j] ^ ca ) & ( b[j] ^ cb );
      }
      ++next;
    }
    auto word = [&]( lit_t l, size_t j ) {
      auto const v = values_[slot_[lit_node( l )] * words + j];
      return lit_compl( l ) ? ~v : v;
    };
    uint64_t const flip = invert ? ~uint64_t{ 0 } : 0u;
    for ( size_t j = 0; j < words; ++j )
    {
      if ( ( ( word( x0, j ) & word( x1, j ) ) ^ ( word( y0, j ) & word( y1, j ) ) ^ flip ) & mask )
      {
        return false;
      }
    }
    return true;
  }

private:
  bool collect( uint32_t root )
  {
    stack_.assign( 1u, root );
    while ( !stack_.empty() )
    {
      auto const n = stack_.back();
      stack_.pop_back();
      if ( n == 0u || stamp_[n] == epoch_ )
      {
        continue;
      }
      stamp_[n] = epoch_;
      if ( ntk_.is_pi( n ) )
      {
        support_.push_back( n );
        if ( support_.size() > max_exact_support )
        {
          return false;
        }
        continue;
      }
      cone_.push_back( n );
      stack_.push_back( lit_node( ntk_.at( n ).fanin[0] ) );
      stack_.push_back( lit_node( ntk_.at( n ).fanin[1] ) );
    }
    return true;
  }

  network const& ntk_;
  std::vector<uint32_t> stamp_;
  std::vector<uint32_t> slot_;
  std::vector<uint32_t> cone_;
  std::vector<uint32_t> support_;
  std::vector<uint32_t> stack_;
  std::vector<uint64_t> values_;
  uint32_t epoch_ = 0u;
};

} // namespace

network resub_sweep( network const& ntk, bool zero_gain )
{
  auto refs = ntk.reference_counts();

  network out;
  std::vector<lit_t> map( ntk.size(), const0_lit );
  std::vector<uint64_t> sig{ 0u };
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;
  buckets[0].push_back( 0u );

  rng gen( signature_seed );
  for ( auto const pi : ntk.pis() )
  {
    map[pi] = out.create_pi();
  }
  auto sync = [&]() {
    for ( uint32_t n = static_cast<uint32_t>( sig.size() ); n < out.size(); ++n )
    {
      uint64_t s;
      if ( out.is_pi( n ) )
      {
        s = gen.next_u64();
      }
      else
      {
        auto const f0 = out.at( n ).fanin[0];
        auto const f1 = out.at( n ).fanin[1];
        s = ( lit_compl( f0 ) ? ~sig[lit_node( f0 )] : sig[lit_node( f0 )] ) &
            ( lit_compl( f1 ) ? ~sig[lit_node( f1 )] : sig[lit_node( f1 )] );
      }
      sig.push_back( s );
      buckets[( s & 1u ) ? ~s : s].push_back( n );
    }
  };
  sync();
  auto sig_of = [&]( lit_t l ) { return lit_compl( l ) ? ~sig[lit_node( l )] : sig[lit_node( l )]; };
  auto tr = [&]( lit_t l ) { return lit_not_if( map[lit_node( l )], lit_compl( l ) ); };

  exact_checker checker( out );
  std::vector<uint32_t> window;
  std::vector<uint32_t> divisors;

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
    uint64_t const target = sig_of( f0 ) & sig_of( f1 );

    /* 0-resub: an existing node (or constant) with the same function */
    bool done = false;
    uint64_t const key = ( target & 1u ) ? ~target : target;
    if ( auto const it = buckets.find( key ); it != buckets.end() )
    {
      uint32_t tried = 0u;
      for ( auto const cand : it->second )
      {
        if ( tried == max_candidates )
        {
          break;
        }
        if ( existing && cand == lit_node( *existing ) )
        {
          continue;
        }
        ++tried;
        auto const cand_lit = make_lit( cand, sig[cand] != target );
        if ( checker.equal( f0, f1, cand_lit, const1_lit ) )
        {
          map[n] = cand_lit;
          done = true;
          break;
        }
      }
    }
    if ( done )
    {
      continue;
    }

    /* 1-resub: a single new AND of two existing divisors */
    auto const mffc = mffc_nodes( ntk, n, refs );
    if ( mffc.size() >= ( zero_gain ? 1u : 2u ) )
    {
      window.clear();
      std::vector<uint32_t> frontier{ lit_node( ntk.at( n ).fanin[0] ), lit_node( ntk.at( n ).fanin[1] ) };
      std::vector<uint32_t> seen;
      for ( uint32_t d = 0; d < divisor_depth && !frontier.empty(); ++d )
      {
        std::vector<uint32_t> next;
        for ( auto const v : frontier )
        {
          if ( v == 0u || std::find( seen.begin(), seen.end(), v ) != seen.end() )
          {
            continue;
          }
          seen.push_back( v );
          bool const inside = std::find( mffc.begin(), mffc.end(), v ) != mffc.end();
          if ( !inside && window.size() < max_divisors )
          {
            window.push_back( v );
          }
          if ( ntk.is_and( v ) )
          {
            next.push_back( lit_node( ntk.at( v ).fanin[0] ) );
            next.push_back( lit_node( ntk.at( v ).fanin[1] ) );
          }
        }
        frontier = std::move( next );
      }
      divisors.clear();
      for ( auto const v : window )
      {
        auto const img = lit_node( map[v] );
        if ( img != 0u && std::find( divisors.begin(), divisors.end(), img ) == divisors.end() )
        {
          divisors.push_back( img );
        }
      }

      for ( size_t i = 0; i < divisors.size() && !done; ++i )
      {
        for ( size_t j = i + 1u; j < divisors.size() && !done; ++j )
        {
          for ( uint32_t pol = 0; pol < 4u && !done; ++pol )
          {
            auto const a = make_lit( divisors[i], pol & 1u );
            auto const b = make_lit( divisors[j], ( pol >> 1 ) & 1u );
            uint64_t const s = sig_of( a ) & sig_of( b );
            for ( bool const co : { false, true } )
            {
              if ( ( co ? ~s : s ) != target )
              {
                continue;
              }
              if ( !co && ( ( a == f0 && b == f1 ) || ( a == f1 && b == f0 ) ) )
              {
                continue;
              }
              if ( existing && !co && out.lookup( a, b ) == existing )
              {
                continue;
              }
              bool const equal = checker.equal( f0, f1, a, b, co );
              if ( equal )
              {
                map[n] = lit_not_if( out.and_hashed( a, b ), co );
                sync();
                done = true;
                break;
              }
            }
          }
        }
      }
    }
    if ( done )
    {
      continue;
    }
    map[n] = out.and_hashed( f0, f1 );
    sync();
  }

  for ( auto const po : ntk.pos() )
  {
    out.create_po( tr( po ) );
  }
  return out;
}

} // namespace lso::synth
