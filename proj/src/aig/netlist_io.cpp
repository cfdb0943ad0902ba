#include <lsoformer/aig/netlist_io.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lso
{

namespace
{

struct literal
{
  uint32_t node;
  bool complemented;
};

std::string_view trim( std::string_view s )
{
  while ( !s.empty() && std::isspace( static_cast<unsigned char>( s.front() ) ) )
  {
    s.remove_prefix( 1 );
  }
  while ( !s.empty() && std::isspace( static_cast<unsigned char>( s.back() ) ) )
  {
    s.remove_suffix( 1 );
  }
  return s;
}

std::string upper( std::string_view s )
{
  std::string r( s );
  std::transform( r.begin(), r.end(), r.begin(), []( unsigned char c ) { return static_cast<char>( std::toupper( c ) ); } );
  return r;
}

bool is_identifier( std::string_view s )
{
  if ( s.empty() )
  {
    return false;
  }
  return std::all_of( s.begin(), s.end(), []( unsigned char c ) {
    return std::isalnum( c ) || c == '_' || c == '.' || c == '[' || c == ']' || c == '$' || c == '\\' || c == '/';
  } );
}

/* ------------------------------------------------------------------------- */
/* BENCH                                                                     */
/* ------------------------------------------------------------------------- */

enum class gate_type
{
  and_gate,
  nand_gate,
  or_gate,
  nor_gate,
  not_gate,
  buf_gate,
  const0,
  const1
};

std::optional<gate_type> gate_from_name( std::string const& name )
{
  static std::map<std::string, gate_type> const table = {
      { "AND", gate_type::and_gate }, { "NAND", gate_type::nand_gate }, { "OR", gate_type::or_gate },
      { "NOR", gate_type::nor_gate }, { "NOT", gate_type::not_gate },   { "INV", gate_type::not_gate },
      { "BUF", gate_type::buf_gate }, { "BUFF", gate_type::buf_gate },  { "CONST0", gate_type::const0 },
      { "CONST1", gate_type::const1 } };
  auto const it = table.find( name );
  if ( it == table.end() )
  {
    return std::nullopt;
  }
  return it->second;
}

struct signal_def
{
  enum class kind
  {
    input,
    node_literal,
    alias
  } type;
  literal lit{};           // input / node_literal
  std::string target;      // alias
  bool complemented = false; // alias
  uint32_t line = 0u;
};

struct pending_fanin
{
  uint32_t target;
  std::string signal; // empty: use `lit`
  literal lit{};
  bool complemented = false;
  uint32_t line = 0u;
};

class bench_reader
{
public:
  aig_graph read( std::string_view text, std::string name )
  {
    uint32_t line_no = 0u;
    size_t pos = 0u;
    while ( pos <= text.size() )
    {
      auto const end = std::min( text.find( '\n', pos ), text.size() );
      auto line = text.substr( pos, end - pos );
      pos = end + 1u;
      ++line_no;
      if ( auto const hash = line.find( '#' ); hash != std::string_view::npos )
      {
        line = line.substr( 0, hash );
      }
      line = trim( line );
      if ( !line.empty() )
      {
        parse_line( line, line_no );
      }
      if ( end == text.size() )
      {
        break;
      }
    }

    std::vector<aig_edge> edges;
    edges.reserve( fanins_.size() );
    for ( auto const& f : fanins_ )
    {
      literal lit = f.lit;
      if ( !f.signal.empty() )
      {
        lit = resolve( f.signal, f.line );
      }
      bool const compl_ = lit.complemented != f.complemented;
      edges.push_back( { lit.node, f.target, compl_ ? polarity::inverter : polarity::buffer } );
    }
    try
    {
      return aig_graph( std::move( name ), std::move( nodes_ ), std::move( edges ) );
    }
    catch ( aig_error const& e )
    {
      throw aig_error( std::string( "cyclic definition: " ) + e.what() );
    }
  }

private:
  void parse_line( std::string_view line, uint32_t line_no )
  {
    auto const open = line.find( '(' );
    auto const close = line.rfind( ')' );
    auto const eq = line.find( '=' );

    if ( eq == std::string_view::npos )
    {
      if ( open == std::string_view::npos || close == std::string_view::npos || close < open ||
           !trim( line.substr( close + 1u ) ).empty() )
      {
        throw aig_error( "syntax error: expected INPUT(x), OUTPUT(x) or x = GATE(...)", line_no );
      }
      auto const keyword = upper( trim( line.substr( 0, open ) ) );
      auto const arg = std::string( trim( line.substr( open + 1u, close - open - 1u ) ) );
      if ( !is_identifier( arg ) )
      {
        throw aig_error( "syntax error: invalid signal name '" + arg + "'", line_no );
      }
      if ( keyword == "INPUT" )
      {
        define( arg, signal_def{ signal_def::kind::input, literal{ add_node( node_kind::input, arg ), false }, {}, false, line_no },
                line_no );
      }
      else if ( keyword == "OUTPUT" )
      {
        auto const node = add_node( node_kind::output, arg );
        fanins_.push_back( { node, arg, {}, false, line_no } );
      }
      else
      {
        throw aig_error( "syntax error: unknown declaration '" + keyword + "'", line_no );
      }
      return;
    }

    auto const lhs = std::string( trim( line.substr( 0, eq ) ) );
    auto rhs = trim( line.substr( eq + 1u ) );
    auto const ropen = rhs.find( '(' );
    auto const rclose = rhs.rfind( ')' );
    if ( !is_identifier( lhs ) )
    {
      throw aig_error( "syntax error: invalid signal name '" + lhs + "'", line_no );
    }
    if ( ropen == std::string_view::npos || rclose == std::string_view::npos || rclose < ropen ||
         rclose + 1u != rhs.size() )
    {
      throw aig_error( "syntax error: expected GATE(args)", line_no );
    }
    auto const gate_name = upper( trim( rhs.substr( 0, ropen ) ) );
    auto const gate = gate_from_name( gate_name );
    if ( !gate )
    {
      throw aig_error( "unsupported gate '" + gate_name + "'", line_no );
    }

    std::vector<std::string> args;
    auto arg_text = trim( rhs.substr( ropen + 1u, rclose - ropen - 1u ) );
    if ( !arg_text.empty() )
    {
      size_t start = 0u;
      while ( true )
      {
        auto const comma = arg_text.find( ',', start );
        auto const piece = trim( arg_text.substr( start, comma == std::string_view::npos ? std::string_view::npos : comma - start ) );
        if ( !is_identifier( piece ) )
        {
          throw aig_error( "syntax error: invalid fanin '" + std::string( piece ) + "'", line_no );
        }
        args.emplace_back( piece );
        if ( comma == std::string_view::npos )
        {
          break;
        }
        start = comma + 1u;
      }
    }

    auto expect = [&]( bool ok, std::string const& arity ) {
      if ( !ok )
      {
        throw aig_error( "gate " + gate_name + " expects " + arity + " fanins, got " + std::to_string( args.size() ), line_no );
      }
    };

    switch ( *gate )
    {
    case gate_type::const0:
    case gate_type::const1:
    {
      expect( args.empty(), "0" );
      if ( constant_ == UINT32_MAX )
      {
        constant_ = add_node( node_kind::constant, lhs );
      }
      define( lhs, signal_def{ signal_def::kind::node_literal, literal{ constant_, *gate == gate_type::const1 }, {}, false, line_no },
              line_no );
      return;
    }
    case gate_type::not_gate:
    case gate_type::buf_gate:
      expect( args.size() == 1u, "1" );
      define( lhs, signal_def{ signal_def::kind::alias, {}, args[0], *gate == gate_type::not_gate, line_no }, line_no );
      return;
    default:
      break;
    }

    expect( args.size() >= 2u, "at least 2" );
    bool const invert_inputs = *gate == gate_type::or_gate || *gate == gate_type::nor_gate;
    bool const invert_output = *gate == gate_type::nand_gate || *gate == gate_type::or_gate;

    uint32_t prev = UINT32_MAX;
    for ( size_t i = 1; i < args.size(); ++i )
    {
      bool const last = i + 1u == args.size();
      auto const node = add_node( node_kind::and_gate, last && !invert_output ? lhs : std::string{} );
      if ( prev == UINT32_MAX )
      {
        fanins_.push_back( { node, args[0], {}, invert_inputs, line_no } );
      }
      else
      {
        fanins_.push_back( { node, {}, literal{ prev, false }, false, line_no } );
      }
      fanins_.push_back( { node, args[i], {}, invert_inputs, line_no } );
      prev = node;
    }
    define( lhs, signal_def{ signal_def::kind::node_literal, literal{ prev, invert_output }, {}, false, line_no }, line_no );
  }

  uint32_t add_node( node_kind kind, std::string name )
  {
    nodes_.push_back( aig_node{ kind, 0u, std::move( name ) } );
    return static_cast<uint32_t>( nodes_.size() - 1u );
  }

  void define( std::string const& name, signal_def def, uint32_t line_no )
  {
    if ( !signals_.emplace( name, std::move( def ) ).second )
    {
      throw aig_error( "signal '" + name + "' defined more than once", line_no );
    }
  }

  literal resolve( std::string const& name, uint32_t line_no )
  {
    if ( auto const it = resolved_.find( name ); it != resolved_.end() )
    {
      return it->second;
    }
    auto const it = signals_.find( name );
    if ( it == signals_.end() )
    {
      throw aig_error( "undefined signal '" + name + "'", line_no );
    }
    literal lit{};
    auto const& def = it->second;
    if ( def.type == signal_def::kind::alias )
    {
      if ( !resolving_.insert( name ).second )
      {
        throw aig_error( "cyclic definition through signal '" + name + "'", def.line );
      }
      lit = resolve( def.target, def.line );
      lit.complemented = lit.complemented != def.complemented;
      resolving_.erase( name );
    }
    else
    {
      lit = def.lit;
    }
    resolved_.emplace( name, lit );
    return lit;
  }

  std::vector<aig_node> nodes_;
  std::vector<pending_fanin> fanins_;
  std::unordered_map<std::string, signal_def> signals_;
  std::unordered_map<std::string, literal> resolved_;
  std::unordered_set<std::string> resolving_;
  uint32_t constant_ = UINT32_MAX;
};

class name_pool
{
public:
  std::string claim( std::string const& preferred, std::string const& fallback )
  {
    std::string base = is_identifier( preferred ) ? preferred : fallback;
    std::string candidate = base;
    for ( uint32_t k = 1; used_.count( candidate ); ++k )
    {
      candidate = base + "_" + std::to_string( k );
    }
    used_.insert( candidate );
    return candidate;
  }

  bool taken( std::string const& name ) const { return used_.count( name ) != 0u; }

private:
  std::unordered_set<std::string> used_;
};

std::string write_bench( aig_graph const& g )
{
  name_pool pool;
  std::vector<std::string> signal( g.num_nodes() );
  for ( uint32_t i = 0; i < g.num_nodes(); ++i )
  {
    if ( g.nodes()[i].kind != node_kind::output )
    {
      signal[i] = pool.claim( g.nodes()[i].name, "n" + std::to_string( i ) );
    }
  }

  std::ostringstream os;
  os << "# " << ( g.name().empty() ? "aig" : g.name() ) << "\n";
  os << "# " << g.primary_inputs().size() << " inputs, " << g.primary_outputs().size() << " outputs, " << g.num_ands()
     << " and gates\n";

  std::vector<std::string> inverted( g.num_nodes() );
  auto inverted_name = [&]( uint32_t source ) -> std::string const& {
    if ( inverted[source].empty() )
    {
      inverted[source] = pool.claim( signal[source] + "_n", signal[source] + "_n" );
      os << inverted[source] << " = NOT(" << signal[source] << ")\n";
    }
    return inverted[source];
  };

  for ( uint32_t i = 0; i < g.num_nodes(); ++i )
  {
    auto const& node = g.nodes()[i];
    switch ( node.kind )
    {
    case node_kind::input:
      os << "INPUT(" << signal[i] << ")\n";
      break;
    case node_kind::constant:
      os << signal[i] << " = CONST0()\n";
      break;
    case node_kind::and_gate:
    {
      std::string args[2];
      auto const fanins = g.fanins( i );
      for ( size_t k = 0; k < 2u; ++k )
      {
        args[k] = fanins[k].pol == polarity::inverter ? inverted_name( fanins[k].source ) : signal[fanins[k].source];
      }
      os << signal[i] << " = AND(" << args[0] << ", " << args[1] << ")\n";
      break;
    }
    case node_kind::output:
    {
      auto const& e = g.fanins( i )[0];
      std::string const preferred = is_identifier( node.name ) ? node.name : "po" + std::to_string( i );
      if ( e.pol == polarity::buffer && signal[e.source] == preferred )
      {
        os << "OUTPUT(" << preferred << ")\n";
        break;
      }
      auto const out = pool.claim( preferred, preferred );
      os << "OUTPUT(" << out << ")\n";
      os << out << ( e.pol == polarity::inverter ? " = NOT(" : " = BUF(" ) << signal[e.source] << ")\n";
      break;
    }
    }
  }
  return os.str();
}

/* ------------------------------------------------------------------------- */
/* AIGER (ASCII, combinational)                                              */
/* ------------------------------------------------------------------------- */

class aiger_reader
{
public:
  aig_graph read( std::string_view text, std::string name )
  {
    split_lines( text );
    if ( lines_.empty() )
    {
      throw aig_error( "syntax error: empty AIGER file", 1u );
    }
    auto const header = tokens( 0 );
    if ( header.size() != 6u || header[0] != "aag" )
    {
      throw aig_error( "syntax error: expected header 'aag M I L O A'", 1u );
    }
    uint64_t const max_var = number( header[1], 1u );
    uint64_t const num_inputs = number( header[2], 1u );
    uint64_t const num_latches = number( header[3], 1u );
    uint64_t const num_outputs = number( header[4], 1u );
    uint64_t const num_ands = number( header[5], 1u );
    if ( num_latches != 0u )
    {
      throw aig_error( "latches are not supported (combinational AIGER only)", 1u );
    }
    if ( lines_.size() < 1u + num_inputs + num_outputs + num_ands )
    {
      throw aig_error( "syntax error: file ends before all definitions", static_cast<uint32_t>( lines_.size() ) );
    }

    enum class var_kind : uint8_t
    {
      none,
      input,
      and_gate
    };
    std::vector<var_kind> kind( max_var + 1u, var_kind::none );
    std::vector<std::pair<uint64_t, uint64_t>> and_fanin( max_var + 1u );
    std::vector<uint32_t> def_line( max_var + 1u, 0u );
    std::vector<std::pair<uint64_t, uint32_t>> outputs;

    size_t l = 1u;
    auto define_var = [&]( uint64_t lit, var_kind k, uint32_t line_no ) {
      if ( lit & 1u || lit == 0u )
      {
        throw aig_error( "syntax error: defined literal must be even and non-zero", line_no );
      }
      if ( ( lit >> 1 ) > max_var )
      {
        throw aig_error( "literal " + std::to_string( lit ) + " exceeds maximum variable index", line_no );
      }
      if ( kind[lit >> 1] != var_kind::none )
      {
        throw aig_error( "variable " + std::to_string( lit >> 1 ) + " defined more than once", line_no );
      }
      kind[lit >> 1] = k;
      def_line[lit >> 1] = line_no;
    };

    for ( uint64_t i = 0; i < num_inputs; ++i, ++l )
    {
      auto const t = tokens( l );
      if ( t.size() != 1u )
      {
        throw aig_error( "syntax error: expected one input literal", line_number( l ) );
      }
      define_var( number( t[0], line_number( l ) ), var_kind::input, line_number( l ) );
      input_order_.push_back( number( t[0], line_number( l ) ) >> 1 );
    }
    for ( uint64_t i = 0; i < num_outputs; ++i, ++l )
    {
      auto const t = tokens( l );
      if ( t.size() != 1u )
      {
        throw aig_error( "syntax error: expected one output literal", line_number( l ) );
      }
      outputs.emplace_back( number( t[0], line_number( l ) ), line_number( l ) );
    }
    for ( uint64_t i = 0; i < num_ands; ++i, ++l )
    {
      auto const t = tokens( l );
      if ( t.size() != 3u )
      {
        throw aig_error( "gate fan-in mismatch: AND definition needs lhs and two fanins", line_number( l ) );
      }
      auto const lhs = number( t[0], line_number( l ) );
      define_var( lhs, var_kind::and_gate, line_number( l ) );
      and_fanin[lhs >> 1] = { number( t[1], line_number( l ) ), number( t[2], line_number( l ) ) };
    }

    std::unordered_map<uint64_t, std::string> input_names;
    std::unordered_map<uint64_t, std::string> output_names;
    for ( ; l < lines_.size(); ++l )
    {
      auto const line = trim( lines_[l].second );
      if ( line == "c" )
      {
        break;
      }
      if ( line.size() < 2u || ( line[0] != 'i' && line[0] != 'o' ) )
      {
        throw aig_error( "syntax error: unexpected symbol table entry", line_number( l ) );
      }
      auto const space = line.find( ' ' );
      if ( space == std::string_view::npos )
      {
        throw aig_error( "syntax error: symbol without name", line_number( l ) );
      }
      auto const pos = number( line.substr( 1, space - 1u ), line_number( l ) );
      auto const sym = std::string( trim( line.substr( space + 1u ) ) );
      ( line[0] == 'i' ? input_names : output_names )[pos] = sym;
    }

    /* Node layout: constant, variables in index order, outputs. */
    bool uses_constant = false;
    auto check_ref = [&]( uint64_t lit, uint32_t line_no ) {
      if ( ( lit >> 1 ) == 0u )
      {
        uses_constant = true;
        return;
      }
      if ( ( lit >> 1 ) > max_var || kind[lit >> 1] == var_kind::none )
      {
        throw aig_error( "undefined signal '" + std::to_string( lit ) + "'", line_no );
      }
    };
    for ( uint64_t v = 1; v <= max_var; ++v )
    {
      if ( kind[v] == var_kind::and_gate )
      {
        check_ref( and_fanin[v].first, def_line[v] );
        check_ref( and_fanin[v].second, def_line[v] );
      }
    }
    for ( auto const& [lit, line_no] : outputs )
    {
      check_ref( lit, line_no );
    }

    std::unordered_map<uint64_t, uint32_t> input_position;
    for ( size_t i = 0; i < input_order_.size(); ++i )
    {
      input_position[input_order_[i]] = static_cast<uint32_t>( i );
    }

    std::vector<aig_node> nodes;
    std::vector<uint32_t> node_of( max_var + 1u, UINT32_MAX );
    if ( uses_constant )
    {
      nodes.push_back( { node_kind::constant, 0u, {} } );
      node_of[0] = 0u;
    }
    for ( uint64_t v = 1; v <= max_var; ++v )
    {
      if ( kind[v] == var_kind::none )
      {
        continue;
      }
      std::string node_name;
      if ( kind[v] == var_kind::input )
      {
        auto const it = input_names.find( input_position[v] );
        node_name = it != input_names.end() ? it->second : std::string{};
      }
      node_of[v] = static_cast<uint32_t>( nodes.size() );
      nodes.push_back( { kind[v] == var_kind::input ? node_kind::input : node_kind::and_gate, 0u, std::move( node_name ) } );
    }
    std::vector<aig_edge> edges;
    auto edge_from = [&]( uint64_t lit, uint32_t target ) {
      return aig_edge{ node_of[lit >> 1], target, ( lit & 1u ) ? polarity::inverter : polarity::buffer };
    };
    for ( uint64_t v = 1; v <= max_var; ++v )
    {
      if ( kind[v] == var_kind::and_gate )
      {
        edges.push_back( edge_from( and_fanin[v].first, node_of[v] ) );
        edges.push_back( edge_from( and_fanin[v].second, node_of[v] ) );
      }
    }
    for ( size_t o = 0; o < outputs.size(); ++o )
    {
      auto const it = output_names.find( o );
      auto const node = static_cast<uint32_t>( nodes.size() );
      nodes.push_back( { node_kind::output, 0u, it != output_names.end() ? it->second : std::string{} } );
      edges.push_back( edge_from( outputs[o].first, node ) );
    }

    /* AIGER variable order does not imply a topological order; the graph
     * constructor detects cycles. */
    try
    {
      return aig_graph( std::move( name ), std::move( nodes ), std::move( edges ) );
    }
    catch ( aig_error const& e )
    {
      throw aig_error( std::string( "cyclic definition: " ) + e.what() );
    }
  }

private:
  void split_lines( std::string_view text )
  {
    uint32_t line_no = 0u;
    size_t pos = 0u;
    while ( pos < text.size() )
    {
      auto const end = std::min( text.find( '\n', pos ), text.size() );
      ++line_no;
      auto const line = trim( text.substr( pos, end - pos ) );
      if ( !line.empty() )
      {
        lines_.emplace_back( line_no, line );
      }
      pos = end + 1u;
    }
  }

  uint32_t line_number( size_t l ) const { return lines_[l].first; }

  std::vector<std::string_view> tokens( size_t l ) const
  {
    std::vector<std::string_view> result;
    auto line = lines_[l].second;
    size_t pos = 0u;
    while ( pos < line.size() )
    {
      while ( pos < line.size() && line[pos] == ' ' )
      {
        ++pos;
      }
      auto const end = std::min( line.find( ' ', pos ), line.size() );
      if ( end > pos )
      {
        result.push_back( line.substr( pos, end - pos ) );
      }
      pos = end;
    }
    return result;
  }

  static uint64_t number( std::string_view s, uint32_t line_no )
  {
    uint64_t value = 0u;
    auto const [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), value );
    if ( ec != std::errc{} || ptr != s.data() + s.size() )
    {
      throw aig_error( "syntax error: expected unsigned integer, got '" + std::string( s ) + "'", line_no );
    }
    return value;
  }

  std::vector<std::pair<uint32_t, std::string_view>> lines_;
  std::vector<uint64_t> input_order_;
};

std::string write_aiger( aig_graph const& g )
{
  std::vector<uint64_t> var( g.num_nodes(), 0u );
  std::vector<uint32_t> inputs;
  std::vector<uint32_t> ands;
  uint64_t next = 1u;
  for ( uint32_t i = 0; i < g.num_nodes(); ++i )
  {
    auto const kind = g.nodes()[i].kind;
    if ( kind == node_kind::input || kind == node_kind::and_gate )
    {
      var[i] = next++;
      ( kind == node_kind::input ? inputs : ands ).push_back( i );
    }
  }
  auto lit = []( uint64_t v, polarity p ) { return 2u * v + ( p == polarity::inverter ? 1u : 0u ); };

  std::ostringstream os;
  os << "aag " << next - 1u << ' ' << inputs.size() << " 0 " << g.primary_outputs().size() << ' ' << ands.size() << '\n';
  for ( auto const i : inputs )
  {
    os << 2u * var[i] << '\n';
  }
  for ( auto const o : g.primary_outputs() )
  {
    auto const& e = g.fanins( o )[0];
    os << lit( var[e.source], e.pol ) << '\n';
  }
  for ( auto const a : ands )
  {
    auto const f = g.fanins( a );
    os << 2u * var[a] << ' ' << lit( var[f[0].source], f[0].pol ) << ' ' << lit( var[f[1].source], f[1].pol ) << '\n';
  }
  for ( size_t k = 0; k < inputs.size(); ++k )
  {
    if ( !g.nodes()[inputs[k]].name.empty() )
    {
      os << 'i' << k << ' ' << g.nodes()[inputs[k]].name << '\n';
    }
  }
  for ( size_t k = 0; k < g.primary_outputs().size(); ++k )
  {
    if ( !g.nodes()[g.primary_outputs()[k]].name.empty() )
    {
      os << 'o' << k << ' ' << g.nodes()[g.primary_outputs()[k]].name << '\n';
    }
  }
  os << "c\n" << ( g.name().empty() ? "aig" : g.name() ) << '\n';
  return os.str();
}

} // namespace

aig_graph parse_netlist( std::string_view text, netlist_format format, std::string name )
{
  if ( format == netlist_format::bench )
  {
    return bench_reader{}.read( text, std::move( name ) );
  }
  return aiger_reader{}.read( text, std::move( name ) );
}

std::string serialize_netlist( aig_graph const& g, netlist_format format )
{
  return format == netlist_format::bench ? write_bench( g ) : write_aiger( g );
}

netlist_format format_from_path( std::filesystem::path const& path )
{
  auto const ext = upper( path.extension().string() );
  if ( ext == ".BENCH" )
  {
    return netlist_format::bench;
  }
  if ( ext == ".AAG" )
  {
    return netlist_format::aiger_ascii;
  }
  throw aig_error( "unknown netlist extension '" + path.extension().string() + "' (expected .bench or .aag)" );
}

aig_graph read_netlist( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw aig_error( "cannot open '" + path.string() + "'" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try
  {
    return parse_netlist( ss.str(), format_from_path( path ), path.stem().string() );
  }
  catch ( aig_error const& e )
  {
    throw aig_error( path.string() + ": " + e.what() );
  }
}

void write_netlist( aig_graph const& g, std::filesystem::path const& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
  {
    throw aig_error( "cannot write '" + path.string() + "'" );
  }
  out << serialize_netlist( g, format_from_path( path ) );
}

} // namespace lso
