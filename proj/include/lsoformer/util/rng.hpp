#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace lso
{

/// Portable random stream.
///
/// The standard distributions are implementation-defined, so every draw is
/// derived from the raw `mt19937_64` output here. The same seed yields the
/// same sequence with any conforming standard library.
class rng
{
public:
  explicit rng( uint64_t seed ) : engine_( seed ) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform integer in `[0, bound)`; unbiased by rejection.
  uint64_t uniform_int( uint64_t bound )
  {
    if ( bound <= 1u )
    {
      return 0u;
    }
    uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do
    {
      x = engine_();
    } while ( x >= limit );
    return x % bound;
  }

  /// Uniform real in `[0, 1)` with 53 bits of mantissa.
  double uniform_real() { return static_cast<double>( engine_() >> 11 ) * 0x1.0p-53; }

  double uniform_real( double lo, double hi ) { return lo + ( hi - lo ) * uniform_real(); }

  bool bernoulli( double p ) { return uniform_real() < p; }

  /// Standard normal via Box-Muller; no cached second value.
  double normal()
  {
    double u1 = uniform_real();
    while ( u1 <= 0.0 )
    {
      u1 = uniform_real();
    }
    double const u2 = uniform_real();
    return std::sqrt( -2.0 * std::log( u1 ) ) * std::cos( 2.0 * std::numbers::pi * u2 );
  }

  template<typename T>
  void shuffle( std::vector<T>& v )
  {
    for ( size_t i = v.size(); i > 1; --i )
    {
      size_t const j = static_cast<size_t>( uniform_int( i ) );
      std::swap( v[i - 1], v[j] );
    }
  }

private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for a named purpose (init, shuffle, ...).
inline uint64_t derive_seed( uint64_t seed, uint64_t stream )
{
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * ( stream + 1u );
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

} // namespace lso
