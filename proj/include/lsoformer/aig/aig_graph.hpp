#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lso
{

/// Raised for malformed graphs and netlists. `line()` is 0 when the error
/// is not tied to a source line.
class aig_error : public std::runtime_error
{
public:
  explicit aig_error( std::string const& what, uint32_t line = 0u )
      : std::runtime_error( line ? "line " + std::to_string( line ) + ": " + what : what ),
        line_( line )
  {
  }

  uint32_t line() const noexcept { return line_; }

private:
  uint32_t line_;
};

/* Semantic node type. The numeric values of `input`, `and_gate` and `output`
 * are the categorical type feature used by the graph encoder. The constant
 * node only appears when an optimization proves a signal constant. */
enum class node_kind : uint8_t
{
  input = 0,
  and_gate = 1,
  output = 2,
  constant = 3
};

enum class polarity : uint8_t
{
  buffer = 0,
  inverter = 1
};

struct aig_edge
{
  uint32_t source;
  uint32_t target;
  polarity pol;

  bool operator==( aig_edge const& ) const = default;
};

struct aig_node
{
  node_kind kind;
  uint8_t inverted_preds = 0u;
  std::string name;
};

/// Immutable And-Inverter Graph.
///
/// Nodes are identified by their storage index. Edges are kept sorted by
/// target (stable w.r.t. fanin position), so the edge list is canonical for
/// a given node list. Construction validates every structural invariant and
/// recomputes `inverted_preds` from the edge polarities.
class aig_graph
{
public:
  aig_graph() = default;
  aig_graph( std::string name, std::vector<aig_node> nodes, std::vector<aig_edge> edges );

  std::string const& name() const noexcept { return name_; }
  uint32_t num_nodes() const noexcept { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_edges() const noexcept { return static_cast<uint32_t>( edges_.size() ); }
  uint32_t num_ands() const noexcept { return num_ands_; }

  std::vector<aig_node> const& nodes() const noexcept { return nodes_; }
  std::vector<aig_edge> const& edges() const noexcept { return edges_; }
  aig_node const& node( uint32_t index ) const { return nodes_.at( index ); }

  std::vector<uint32_t> const& primary_inputs() const noexcept { return pis_; }
  std::vector<uint32_t> const& primary_outputs() const noexcept { return pos_; }

  /// Incoming edges of `index`, in fanin order.
  std::span<aig_edge const> fanins( uint32_t index ) const;

  /// A topological order of all nodes (ties broken by ascending index).
  std::vector<uint32_t> const& topological_order() const noexcept { return topo_; }

private:
  std::string name_;
  std::vector<aig_node> nodes_;
  std::vector<aig_edge> edges_;
  std::vector<uint32_t> fanin_begin_;
  std::vector<uint32_t> pis_;
  std::vector<uint32_t> pos_;
  std::vector<uint32_t> topo_;
  uint32_t num_ands_ = 0u;
};

/// Same node order, kinds, edges and polarities; names are ignored.
bool structurally_equal( aig_graph const& a, aig_graph const& b );

/// FNV-1a over the structural content (kinds, edges, polarities).
uint64_t structural_hash( aig_graph const& g );

/// Returns a copy with nodes stored in the order `perm`, where `perm[i]` is
/// the old index of the node placed at new index `i`.
aig_graph permute_nodes( aig_graph const& g, std::span<uint32_t const> perm );

} // namespace lso
