#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lso::synth
{

/* Literal encoding: 2 * node + complement. Node 0 is constant false. */
using lit_t = uint32_t;

constexpr lit_t const0_lit = 0u;
constexpr lit_t const1_lit = 1u;

constexpr uint32_t lit_node( lit_t l ) { return l >> 1; }
constexpr bool lit_compl( lit_t l ) { return ( l & 1u ) != 0u; }
constexpr lit_t make_lit( uint32_t node, bool compl_ = false ) { return ( node << 1 ) | ( compl_ ? 1u : 0u ); }
constexpr lit_t lit_not( lit_t l ) { return l ^ 1u; }
constexpr lit_t lit_not_if( lit_t l, bool c ) { return l ^ ( c ? 1u : 0u ); }

/// Append-only AIG used by the optimization passes.
///
/// Node indices are topological: every AND references lower indices. Passes
/// never mutate a network in place; they rebuild into a fresh one through
/// `and_hashed`, which folds constants, idempotence and contradictions and
/// performs structural hashing.
class network
{
public:
  struct node
  {
    lit_t fanin[2] = { 0u, 0u };
    uint32_t level = 0u;
    bool is_pi = false;
  };

  network();

  uint32_t size() const noexcept { return static_cast<uint32_t>( nodes_.size() ); }
  node const& at( uint32_t n ) const { return nodes_[n]; }
  bool is_and( uint32_t n ) const { return n != 0u && !nodes_[n].is_pi; }
  bool is_pi( uint32_t n ) const { return nodes_[n].is_pi; }
  uint32_t level( lit_t l ) const { return nodes_[lit_node( l )].level; }

  std::vector<uint32_t> const& pis() const noexcept { return pis_; }
  std::vector<lit_t> const& pos() const noexcept { return pos_; }

  lit_t create_pi();
  void create_po( lit_t l ) { pos_.push_back( l ); }

  /// AND without simplification or hashing (used for faithful import).
  lit_t and_raw( lit_t a, lit_t b );

  /// Result of trivial simplification, or nullopt if a real AND is needed.
  static std::optional<lit_t> trivial_and( lit_t a, lit_t b );

  /// Existing node or trivial result for `a & b`, without creating anything.
  std::optional<lit_t> lookup( lit_t a, lit_t b ) const;

  lit_t and_hashed( lit_t a, lit_t b );

  /// Fanout counts, including references from primary outputs.
  std::vector<uint32_t> reference_counts() const;

  uint32_t num_reachable_ands() const;
  uint32_t depth() const;

private:
  static uint64_t key( lit_t a, lit_t b );

  std::vector<node> nodes_;
  std::vector<uint32_t> pis_;
  std::vector<lit_t> pos_;
  std::unordered_map<uint64_t, uint32_t> strash_;
};

/// Faithful import: no hashing, dangling logic dropped. PI/PO names are
/// taken from the graph by position.
network from_aig( aig_graph const& g );

/// Canonical export: [constant], inputs, reachable ANDs in index order,
/// outputs. PI/PO names come from `names_from`.
aig_graph to_aig( network const& ntk, aig_graph const& names_from );

/// Copies only logic reachable from the outputs, rehashing on the way.
network cleanup( network const& ntk );

} // namespace lso::synth
