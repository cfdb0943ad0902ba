#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

namespace lso
{

/// Raised on non-finite losses or metrics that are undefined for the data.
class numeric_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class loss_mode : uint8_t
{
  /// Every step contributes (joint trajectory loss).
  trajectory,
  /// Only the final step contributes.
  final_only,
  /// Every step except the final one (pretext task for freeze probing).
  intermediate
};

std::string_view loss_mode_name( loss_mode m );
std::optional<loss_mode> loss_mode_from_name( std::string_view name );

/* Sum over the selected steps of the squared error. If `grad` is non-empty
 * it receives d(loss)/d(pred). */
double joint_loss( std::span<double const> pred, std::span<double const> target, loss_mode mode, std::span<double> grad = {} );

/// Mean of |pred - true| / |true| * 100 over paired values.
double mape( std::span<double const> pred, std::span<double const> truth );

} // namespace lso
