#pragma once

#include <span>

namespace lso
{

/// Zero-mean, unit-variance scaling fitted on final QoR values and applied
/// to every trajectory step. Uses the population standard deviation.
struct normalizer
{
  double mean = 0.0;
  double stddev = 1.0;

  static normalizer fit( std::span<double const> finals );

  double normalize( double raw ) const { return ( raw - mean ) / stddev; }
  double denormalize( double value ) const { return value * stddev + mean; }
};

} // namespace lso
