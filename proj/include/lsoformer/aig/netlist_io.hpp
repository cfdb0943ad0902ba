#pragma once

#include <lsoformer/aig/aig_graph.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace lso
{

enum class netlist_format
{
  bench,
  aiger_ascii
};

/* BENCH import accepts INPUT/OUTPUT declarations and the gates AND, NAND,
 * OR, NOR (two or more fanins), NOT, BUF/BUFF (one fanin) and CONST0/CONST1.
 * Non-AND gates become AND nodes plus edge polarities; NOT and BUF create no
 * nodes. Node order follows the order of declarations in the file.
 *
 * AIGER import accepts the ASCII variant (`aag`) without latches. Node order
 * is: constant (if referenced), variables in index order, then outputs. */
aig_graph parse_netlist( std::string_view text, netlist_format format, std::string name = {} );

/// Writes `g` so that `parse_netlist` reproduces it structurally. For AIGER
/// this holds when output nodes come last and a constant node (if any) first.
std::string serialize_netlist( aig_graph const& g, netlist_format format );

/// Picks the format from the extension (`.bench`, `.aag`).
netlist_format format_from_path( std::filesystem::path const& path );

aig_graph read_netlist( std::filesystem::path const& path );
void write_netlist( aig_graph const& g, std::filesystem::path const& path );

} // namespace lso
