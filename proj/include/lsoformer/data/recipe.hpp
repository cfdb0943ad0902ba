#pragma once

#include <lsoformer/synth/heuristics.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lso
{

/// Raised for malformed or inconsistent datasets and split requests.
class dataset_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct recipe
{
  uint32_t id = 0u;
  std::vector<uint32_t> steps;

  std::vector<heuristic> heuristics() const;
  std::string to_string() const;
};

/// `count` distinct recipes of `length` i.i.d. uniform tokens; a sequence
/// already drawn is rejected and resampled. Ids are 0..count-1 in draw order.
std::vector<recipe> sample_recipes( uint32_t count, uint32_t length, uint64_t seed );

/// Parses comma-separated names or token ids, e.g. "rw,rf -z,b" or "1,4,0".
recipe parse_recipe( std::string const& text, uint32_t id = 0u );

} // namespace lso
