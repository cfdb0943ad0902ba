#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lso
{

class rng;

namespace nn
{

using matrix = Eigen::MatrixXd;
using matrix_map = Eigen::Map<matrix>;
using const_matrix_map = Eigen::Map<matrix const>;

/// Raised for shape or configuration inconsistencies.
class model_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/* Parameter groups addressed by the freeze modes. */
enum class param_group : uint8_t
{
  graph_encoder,
  recipe_encoder,
  decoder,
  regressor
};

std::string_view group_name( param_group g );

enum class init_kind : uint8_t
{
  xavier,
  zeros,
  ones,
  constant_one_bias
};

struct tensor_info
{
  std::string name;
  param_group group;
  uint32_t rows;
  uint32_t cols;
  size_t offset;
  init_kind init;
};

/// Flat storage for all parameters and their gradients. Tensors are views
/// (column-major) into the flat buffers; the layout is fixed once all
/// tensors are registered.
class param_store
{
public:
  using handle = uint32_t;

  handle add( std::string name, param_group group, uint32_t rows, uint32_t cols, init_kind init = init_kind::xavier );

  void initialize( rng& gen );

  matrix_map value( handle h ) { return view( values_, h ); }
  const_matrix_map value( handle h ) const { return view( values_, h ); }
  matrix_map grad( handle h ) { return view( grads_, h ); }

  std::vector<double>& values() noexcept { return values_; }
  std::vector<double> const& values() const noexcept { return values_; }
  std::vector<double>& grads() noexcept { return grads_; }
  std::vector<double> const& grads() const noexcept { return grads_; }
  std::vector<tensor_info> const& tensors() const noexcept { return tensors_; }

  handle find( std::string_view name ) const;
  void zero_grad();
  size_t size() const noexcept { return values_.size(); }

private:
  matrix_map view( std::vector<double>& buf, handle h )
  {
    auto const& t = tensors_[h];
    return matrix_map( buf.data() + t.offset, t.rows, t.cols );
  }
  const_matrix_map view( std::vector<double> const& buf, handle h ) const
  {
    auto const& t = tensors_[h];
    return const_matrix_map( buf.data() + t.offset, t.rows, t.cols );
  }

  std::vector<tensor_info> tensors_;
  std::vector<double> values_;
  std::vector<double> grads_;
};

} // namespace nn
} // namespace lso
