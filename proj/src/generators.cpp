#include <mvl/error.hpp>
#include <mvl/generators.hpp>

#include <algorithm>

#include <fmt/format.h>

namespace mvl
{

namespace
{

struct Operand
{
  std::string net;
  int radix;
  int stage;
};

std::string code_name( CodeKind kind ) { return kind == CodeKind::gray ? "gray" : "positional"; }

// Decoder output / encoder input carrying wire 0 (the low bit in positional code).
std::string wire0_port( CodeKind kind ) { return kind == CodeKind::gray ? "x" : "y"; }
std::string wire1_port( CodeKind kind ) { return kind == CodeKind::gray ? "y" : "x"; }

std::string indexed( char const* prefix, int i ) { return fmt::format( "{}{}", prefix, i ); }

void add_operands( NetlistBuilder& b, int n, int radix, bool carry_in )
{
  for ( auto const* name : { "a", "b" } )
  {
    for ( int i = 0; i < n; ++i )
    {
      b.add_input( indexed( name, i ), radix );
    }
  }
  if ( carry_in )
  {
    b.add_input( "cin", 2 );
  }
}

void require_range( char const* what, int n, int low, int high )
{
  if ( n < low || n > high )
  {
    throw Error( errc::unsupported, fmt::format( "{} supports {}..{}, got {}", what, low, high, n ) );
  }
}

std::optional<int> composite_tc( Catalog const& catalog, std::string const& name )
{
  auto const c = catalog.composite( name );
  return c ? std::optional<int>{ c->reported_tc } : std::nullopt;
}

void stable_by_stage( std::vector<Operand>& ops )
{
  std::stable_sort( ops.begin(), ops.end(), []( auto const& x, auto const& y ) { return x.stage < y.stage; } );
}

/// Final carry-propagate pass over columns holding at most two operands.
template<typename HalfAdd, typename FullAdd>
std::vector<std::string> ripple_columns( std::vector<std::vector<Operand>> cols, int width, HalfAdd half, FullAdd full )
{
  std::vector<std::string> digits;
  std::optional<Operand> carry;
  for ( int k = 0; k < width; ++k )
  {
    auto ops = cols[k];
    stable_by_stage( ops );
    if ( carry )
    {
      ops.push_back( *std::exchange( carry, std::nullopt ) );
    }
    switch ( ops.size() )
    {
    case 1:
      digits.push_back( ops[0].net );
      break;
    case 2:
    {
      auto const [sum, co] = half( k, ops[0], ops[1] );
      digits.push_back( sum.net );
      carry = co;
      break;
    }
    case 3:
    {
      auto const [sum, co] = full( k, ops[0], ops[1], ops[2] );
      digits.push_back( sum.net );
      carry = co;
      break;
    }
    default:
      throw Error( errc::unsupported, fmt::format( "column {} holds {} operands after reduction", k, ops.size() ) );
    }
  }
  // a carry out of the top column is always zero for an N x N product and stays unconnected
  return digits;
}

} // namespace

void GeneratorConfig::check( Catalog const& catalog ) const
{
  auto const qmul = catalog.get( "qmul_digit" );
  if ( qmul->reported_tc && ( qmul_tc_choice < qmul->reported_tc->low || qmul_tc_choice > qmul->reported_tc->high ) )
  {
    throw Error( errc::invalid_value, fmt::format( "qmul_tc_choice {} outside [{}, {}]", qmul_tc_choice, qmul->reported_tc->low,
                                                   qmul->reported_tc->high ) );
  }
  if ( max_fanout && *max_fanout < 2 )
  {
    throw Error( errc::invalid_value, fmt::format( "max_fanout must be at least 2, got {}", *max_fanout ) );
  }
  catalog.qfa( adder_variant );
}

Netlist gen_cell_wrapper( PrimitivePtr const& cell )
{
  NetlistBuilder b( cell->key() );
  std::map<std::string, std::string> bindings;
  for ( auto const& p : cell->inputs() )
  {
    bindings[p.name] = b.add_input( p.name, p.radix );
  }
  auto const outs = b.place( "u0", cell, bindings );
  for ( auto const& p : cell->outputs() )
  {
    b.add_output( p.name, p.radix, outs.at( p.name ) );
  }
  if ( cell->reported_tc && cell->reported_tc->exact() )
  {
    b.set_reported_tc( cell->reported_tc->low );
  }
  if ( !cell->note.empty() )
  {
    b.add_note( cell->note );
  }
  return std::move( b ).build();
}

Netlist gen_binary_rca( Catalog const& catalog, int n_bits )
{
  require_range( "binary ripple-carry adder", n_bits, 1, 64 );
  auto const fa = catalog.get( "full_adder_binary" );
  NetlistBuilder b( fmt::format( "binary_rca_{}", n_bits ) );
  add_operands( b, n_bits, 2, true );
  std::string carry = "cin";
  std::vector<std::string> sums;
  for ( int i = 0; i < n_bits; ++i )
  {
    auto o = b.place( indexed( "fa", i ), fa, { { "a", indexed( "a", i ) }, { "b", indexed( "b", i ) }, { "cin", carry } } );
    sums.push_back( o["sum"] );
    carry = o["cout"];
  }
  for ( int i = 0; i < n_bits; ++i )
  {
    b.add_output( indexed( "s", i ), 2, sums[i] );
  }
  b.add_output( "cout", 2, carry );
  return std::move( b ).build();
}

Netlist gen_quaternary_rca( Catalog const& catalog, int n_digits, std::string const& variant, GeneratorConfig const& config )
{
  require_range( "quaternary ripple-carry adder", n_digits, 1, 32 );
  struct
  {
    std::string a, b, ci, s, co;
  } port{ "a", "b", "ci", "s", "co" };
  Cell cell;
  if ( variant == "v1_structural" )
  {
    cell = std::make_shared<Netlist const>( gen_v1_adder( catalog, config ) );
    port = { "a0", "b0", "cin", "s0", "cout" };
  }
  else if ( variant == "v2_decomposed" )
  {
    cell = std::make_shared<Netlist const>( gen_v2_decomposed( catalog ) );
    port = { "a0", "b0", "cin", "s0", "cout" };
  }
  else
  {
    cell = catalog.qfa( variant );
  }

  NetlistBuilder b( fmt::format( "quaternary_rca_{}_{}", n_digits, variant ) );
  add_operands( b, n_digits, 4, true );
  std::string carry = "cin";
  std::vector<std::string> sums;
  for ( int i = 0; i < n_digits; ++i )
  {
    auto o = b.place( indexed( "qfa", i ), cell, { { port.a, indexed( "a", i ) }, { port.b, indexed( "b", i ) }, { port.ci, carry } } );
    sums.push_back( o[port.s] );
    carry = o[port.co];
  }
  for ( int i = 0; i < n_digits; ++i )
  {
    b.add_output( indexed( "s", i ), 4, sums[i] );
  }
  b.add_output( "cout", 2, carry );
  return std::move( b ).build();
}

Netlist gen_v1_adder( Catalog const& catalog, GeneratorConfig const& config )
{
  auto const code = config.code_map;
  auto const dec = catalog.get( "decoder_q_to_b", code_name( code ) );
  auto const enc = catalog.get( "encoder_b_to_q", code_name( code ) );
  auto const fa = catalog.get( "full_adder_binary" );
  auto const core = std::make_shared<Netlist const>( gen_binary_rca( catalog, 2 ) );
  auto const w0 = wire0_port( code );
  auto const w1 = wire1_port( code );

  NetlistBuilder b( fmt::format( "v1_adder_{}", code_name( code ) ) );
  add_operands( b, 1, 4, true );
  auto da = b.place( "dec_a", dec, { { "q", "a0" } } );
  auto db = b.place( "dec_b", dec, { { "q", "b0" } } );
  auto sum = b.place( "core", core, { { "a0", da[w0] }, { "a1", da[w1] }, { "b0", db[w0] }, { "b1", db[w1] }, { "cin", "cin" } } );
  auto q = b.place( "enc_s", enc, { { w0, sum["s0"] }, { w1, sum["s1"] } } );
  b.add_output( "s0", 4, q["q"] );
  b.add_output( "cout", 2, sum["cout"] );

  auto const reported = catalog.get( "qfa_v1", "3ps" )->effective_tc().value();
  int const derived = 2 * dec->effective_tc().value() + 2 * fa->effective_tc().value() + enc->effective_tc().value();
  b.set_reported_tc( reported );
  b.add_note( fmt::format( "composition: 2 decoders x {} T + 2 full adders x {} T + 1 encoder x {} T = {} T; reported {} T; {} T not itemized",
                           dec->effective_tc().value(), fa->effective_tc().value(), enc->effective_tc().value(), derived, reported,
                           reported - derived ) );
  if ( code == CodeKind::gray )
  {
    b.add_note( "gray code feeds a positional binary adder: not an arithmetic adder" );
  }
  return std::move( b ).build();
}

Netlist gen_v2_decomposed( Catalog const& catalog )
{
  std::vector<int> const domain{ 4, 4, 2 };
  TruthTable qs{ domain, {} }, qc{ domain, {} };
  for ( auto const& p : enumerate_domain( domain ) )
  {
    auto const r = add_oracle( 4, quaternary( p[0] ), quaternary( p[1] ), binary( p[2] ) );
    qs.rows.emplace( p, r.sum );
    qc.rows.emplace( p, quaternary( r.carry.value() ) );
  }
  auto const ds = decompose_quaternary( qs );
  auto const dc = decompose_quaternary( qc );
  if ( !dc.f3.empty() || !dc.f2.empty() )
  {
    throw Error( errc::invalid_value, "carry of a quaternary full adder is not binary" );
  }

  auto indicator = []( std::string name, std::set<std::vector<int>> support ) {
    PrimitiveSpec s;
    s.name = std::move( name );
    s.ports = { { "a", PortDirection::input, 4 }, { "b", PortDirection::input, 4 }, { "ci", PortDirection::input, 2 },
                { "y", PortDirection::output, 2 } };
    s.behavior = [support = std::move( support )]( std::span<int const> i, std::span<int> o ) {
      o[0] = support.count( std::vector<int>( i.begin(), i.end() ) ) ? 1 : 0;
    };
    s.source = "decomposition";
    s.note = "indicator of one output level; no transistor count";
    return std::make_shared<PrimitiveSpec const>( std::move( s ) );
  };
  auto const inv = catalog.get( "inverter_binary" );
  auto const nand2 = catalog.get( "nand2_binary" );
  auto const enc = catalog.get( "encoder_b_to_q", "positional" );

  NetlistBuilder b( "v2_decomposed" );
  add_operands( b, 1, 4, true );
  std::map<std::string, std::string> const operands{ { "a", "a0" }, { "b", "b0" }, { "ci", "cin" } };
  auto const f3 = b.place( "qs_f3", indicator( "qs_f3", ds.f3 ), operands ).at( "y" );
  auto const f2 = b.place( "qs_f2", indicator( "qs_f2", ds.f2 ), operands ).at( "y" );
  auto const f1 = b.place( "qs_f1", indicator( "qs_f1", ds.f1 ), operands ).at( "y" );
  auto const carry = b.place( "qc_f1", indicator( "qc_f1", dc.f1 ), operands ).at( "y" );

  // X = f3 | f2 and Y = f3 | f1, so 2X + Y = 3 f3 + 2 f2 + f1 on disjoint supports
  auto const n3 = b.place( "inv_f3", inv, { { "a", f3 } } ).at( "y" );
  auto const n2 = b.place( "inv_f2", inv, { { "a", f2 } } ).at( "y" );
  auto const n1 = b.place( "inv_f1", inv, { { "a", f1 } } ).at( "y" );
  auto const x = b.place( "or_x", nand2, { { "a", n3 }, { "b", n2 } } ).at( "y" );
  auto const y = b.place( "or_y", nand2, { { "a", n3 }, { "b", n1 } } ).at( "y" );
  auto const q = b.place( "enc_s", enc, { { "x", x }, { "y", y } } ).at( "q" );
  b.add_output( "s0", 4, q );
  b.add_output( "cout", 2, carry );
  b.add_note( "structural synthesis from the level decomposition; indicator cells carry no transistor count" );
  return std::move( b ).build();
}

Netlist gen_wallace_binary( Catalog const& catalog, int n_bits )
{
  require_range( "binary Wallace multiplier", n_bits, 2, 8 );
  auto const and2 = catalog.get( "and2_binary" );
  auto const fa = catalog.get( "full_adder_binary" );
  auto const ha = catalog.get( "half_adder_binary" );

  NetlistBuilder b( fmt::format( "wallace_binary_{}", n_bits ) );
  add_operands( b, n_bits, 2, false );
  std::vector<std::vector<Operand>> cols( 2 * n_bits + 1 );
  for ( int i = 0; i < n_bits; ++i )
  {
    for ( int j = 0; j < n_bits; ++j )
    {
      auto const pp = b.place( fmt::format( "pp_a{}_b{}", i, j ), and2, { { "a", indexed( "a", i ) }, { "b", indexed( "b", j ) } } );
      cols[i + j].push_back( { pp.at( "y" ), 2, 0 } );
    }
  }

  auto too_tall = []( auto const& cs ) { return std::any_of( cs.begin(), cs.end(), []( auto const& c ) { return c.size() > 2; } ); };
  for ( int stage = 1; too_tall( cols ); ++stage )
  {
    std::vector<std::vector<Operand>> next( cols.size() + 1 );
    for ( std::size_t k = 0; k < cols.size(); ++k )
    {
      auto ops = cols[k];
      stable_by_stage( ops );
      std::size_t idx = 0;
      if ( ops.size() >= 3 )
      {
        for ( int g = 0; ops.size() - idx >= 2; ++g )
        {
          bool const full = ops.size() - idx >= 3;
          auto const id = fmt::format( "w{}_c{}_{}{}", stage, k, full ? "fa" : "ha", g );
          std::map<std::string, std::string> in{ { "a", ops[idx].net }, { "b", ops[idx + 1].net } };
          if ( full )
          {
            in["cin"] = ops[idx + 2].net;
          }
          auto const o = b.place( id, full ? fa : ha, in );
          next[k].push_back( { o.at( "sum" ), 2, stage } );
          next[k + 1].push_back( { o.at( "cout" ), 2, stage } );
          idx += full ? 3 : 2;
        }
      }
      next[k].insert( next[k].end(), ops.begin() + idx, ops.end() );
    }
    cols = std::move( next );
  }

  auto const digits = ripple_columns(
      cols, 2 * n_bits,
      [&]( int k, Operand const& x, Operand const& y ) {
        auto const o = b.place( fmt::format( "fin_c{}", k ), ha, { { "a", x.net }, { "b", y.net } } );
        return std::pair{ Operand{ o.at( "sum" ), 2, 0 }, Operand{ o.at( "cout" ), 2, 0 } };
      },
      [&]( int k, Operand const& x, Operand const& y, Operand const& c ) {
        auto const o = b.place( fmt::format( "fin_c{}", k ), fa, { { "a", x.net }, { "b", y.net }, { "cin", c.net } } );
        return std::pair{ Operand{ o.at( "sum" ), 2, 0 }, Operand{ o.at( "cout" ), 2, 0 } };
      } );
  for ( int k = 0; k < 2 * n_bits; ++k )
  {
    b.add_output( indexed( "p", k ), 2, digits[k] );
  }
  b.set_reported_tc( composite_tc( catalog, fmt::format( "wallace_binary_{}", n_bits ) ) );
  return std::move( b ).build();
}

Netlist gen_wallace_quaternary( Catalog const& catalog, int n_digits, GeneratorConfig const& config )
{
  require_range( "quaternary Wallace multiplier", n_digits, 2, 4 );
  config.check( catalog );
  PrimitivePtr qmul = catalog.get( "qmul_digit" );
  if ( qmul->effective_tc() != config.qmul_tc_choice )
  {
    auto chosen = *qmul;
    chosen.tc_override = config.qmul_tc_choice;
    qmul = std::make_shared<PrimitiveSpec const>( std::move( chosen ) );
  }
  auto const q332 = catalog.get( "q332" );
  auto const q322 = catalog.get( "q322" );
  auto const qha32 = catalog.get( "qha32" );
  auto const qha31 = catalog.get( "qha31" );
  auto const qfa = catalog.qfa( config.adder_variant );

  NetlistBuilder b( fmt::format( "wallace_quaternary_{}", n_digits ) );
  add_operands( b, n_digits, 4, false );
  std::vector<std::vector<Operand>> cols( 2 * n_digits + 1 );
  for ( int i = 0; i < n_digits; ++i )
  {
    for ( int j = 0; j < n_digits; ++j )
    {
      auto const m = b.place( fmt::format( "m_a{}_b{}", i, j ), qmul, { { "a", indexed( "a", i ) }, { "b", indexed( "b", j ) } } );
      cols[i + j].push_back( { m.at( "p" ), 4, 0 } );
      cols[i + j + 1].push_back( { m.at( "c" ), 3, 0 } );
    }
  }

  // Places `cell` on operands bound in port order; sum stays in the column, carry moves up.
  auto add = [&]( std::string const& id, PrimitivePtr const& cell, std::vector<Operand> const& ops, int stage ) {
    auto const ins = cell->inputs();
    std::map<std::string, std::string> bindings;
    for ( std::size_t i = 0; i < ops.size(); ++i )
    {
      bindings[ins[i].name] = ops[i].net;
    }
    auto const outs = cell->outputs();
    auto const o = b.place( id, cell, bindings );
    return std::pair{ Operand{ o.at( outs[0].name ), outs[0].radix, stage }, Operand{ o.at( outs[1].name ), outs[1].radix, stage } };
  };
  auto by_radix_desc = []( std::vector<Operand> ops ) {
    std::stable_sort( ops.begin(), ops.end(), []( auto const& x, auto const& y ) { return x.radix > y.radix; } );
    return ops;
  };
  // Half adder for a pair with at most one quaternary operand.
  auto half_cell = []( Operand const& hi, Operand const& lo, PrimitivePtr const& ha31, PrimitivePtr const& ha32 ) -> PrimitivePtr {
    if ( lo.radix <= 2 )
    {
      return ha31;
    }
    if ( lo.radix <= 3 )
    {
      return ha32;
    }
    (void)hi;
    return nullptr;
  };

  auto too_tall = []( auto const& cs ) { return std::any_of( cs.begin(), cs.end(), []( auto const& c ) { return c.size() > 2; } ); };
  for ( int stage = 1; too_tall( cols ); ++stage )
  {
    std::vector<std::vector<Operand>> next( cols.size() + 1 );
    int placed = 0;
    for ( std::size_t k = 0; k < cols.size(); ++k )
    {
      auto ops = cols[k];
      stable_by_stage( ops );
      if ( ops.size() < 3 )
      {
        next[k].insert( next[k].end(), ops.begin(), ops.end() );
        continue;
      }
      std::vector<Operand> quads, small;
      for ( auto const& o : ops )
      {
        ( o.radix == 4 ? quads : small ).push_back( o );
      }
      std::stable_sort( small.begin(), small.end(), []( auto const& x, auto const& y ) { return x.radix < y.radix; } );
      auto take = []( std::vector<Operand>& v ) {
        auto o = v.front();
        v.erase( v.begin() );
        return o;
      };

      int g = 0;
      auto emit = [&]( PrimitivePtr const& cell, std::vector<Operand> const& group ) {
        auto const [sum, carry] = add( fmt::format( "w{}_c{}_{}{}", stage, k, cell->name, g++ ), cell, group, stage );
        next[k].push_back( sum );
        next[k + 1].push_back( carry );
        ++placed;
      };
      while ( quads.size() + small.size() >= 3 )
      {
        if ( quads.size() >= 2 && !small.empty() )
        {
          auto const s = take( small );
          auto const q1 = take( quads );
          auto const q2 = take( quads );
          emit( s.radix == 2 ? qfa : q332, { q1, q2, s } );
        }
        else if ( quads.size() == 1 && small.size() >= 2 )
        {
          auto const q = take( quads );
          auto const s1 = take( small );
          auto const s2 = take( small );
          emit( q322, { q, s1, s2 } );
        }
        else if ( quads.empty() )
        {
          auto const s1 = take( small );
          auto const s2 = take( small );
          auto const s3 = take( small );
          emit( q322, by_radix_desc( { s1, s2, s3 } ) );
        }
        else
        {
          break;
        }
      }
      std::vector<Operand> rest = quads;
      rest.insert( rest.end(), small.begin(), small.end() );
      if ( rest.size() == 2 )
      {
        auto const pair = by_radix_desc( rest );
        if ( auto const cell = half_cell( pair[0], pair[1], qha31, qha32 ) )
        {
          emit( cell, pair );
          rest.clear();
        }
      }
      next[k].insert( next[k].end(), rest.begin(), rest.end() );
    }
    if ( placed == 0 )
    {
      throw Error( errc::unsupported, "quaternary reduction stalled on a column of quaternary operands only" );
    }
    cols = std::move( next );
  }

  auto const digits = ripple_columns(
      cols, 2 * n_digits,
      [&]( int k, Operand const& x, Operand const& y ) {
        auto const pair = by_radix_desc( { x, y } );
        auto const cell = half_cell( pair[0], pair[1], qha31, qha32 );
        if ( !cell )
        {
          throw Error( errc::unsupported, fmt::format( "column {}: no half adder for two quaternary operands", k ) );
        }
        return add( fmt::format( "fin_c{}", k ), cell, pair, 0 );
      },
      [&]( int k, Operand const& x, Operand const& y, Operand const& c ) {
        // c is the binary ripple carry
        return add( fmt::format( "fin_c{}", k ), qfa, { x, y, c }, 0 );
      } );
  for ( int k = 0; k < 2 * n_digits; ++k )
  {
    b.add_output( indexed( "p", k ), 4, digits[k] );
  }
  b.set_reported_tc( composite_tc( catalog, fmt::format( "wallace_quaternary_{}", n_digits ) ) );
  return std::move( b ).build();
}

Netlist gen_v1_multiplier( Catalog const& catalog, int n_digits, GeneratorConfig const& config )
{
  require_range( "hybrid quaternary multiplier", n_digits, 1, 4 );
  auto const code = config.code_map;
  auto const dec = catalog.get( "decoder_q_to_b", code_name( code ) );
  auto const enc = catalog.get( "encoder_b_to_q", code_name( code ) );
  auto const core_netlist = std::make_shared<Netlist const>( gen_wallace_binary( catalog, 2 * n_digits ) );
  auto const w0 = wire0_port( code );
  auto const w1 = wire1_port( code );

  NetlistBuilder b( fmt::format( "v1_multiplier_{}", n_digits ) );
  add_operands( b, n_digits, 4, false );
  std::map<std::string, std::string> core_in;
  for ( auto const* operand : { "a", "b" } )
  {
    for ( int i = 0; i < n_digits; ++i )
    {
      auto d = b.place( fmt::format( "dec_{}{}", operand, i ), dec, { { "q", indexed( operand, i ) } } );
      core_in[indexed( operand, 2 * i )] = d[w0];
      core_in[indexed( operand, 2 * i + 1 )] = d[w1];
    }
  }
  auto product = b.place( "core", core_netlist, core_in );
  for ( int i = 0; i < 2 * n_digits; ++i )
  {
    auto const q = b.place( indexed( "enc_p", i ), enc,
                            { { w0, product[indexed( "p", 2 * i )] }, { w1, product[indexed( "p", 2 * i + 1 )] } } );
    b.add_output( indexed( "p", i ), 4, q.at( "q" ) );
  }

  auto const reported = composite_tc( catalog, fmt::format( "v1_multiplier_{}", n_digits ) );
  b.set_reported_tc( reported );
  auto const core_reported = core_netlist->reported_tc();
  int const decoders = 2 * n_digits;
  int const encoders = 2 * n_digits;
  int const interface = decoders * dec->effective_tc().value() + encoders * enc->effective_tc().value();
  if ( reported && core_reported )
  {
    b.add_note( fmt::format( "reported {} T - binary core reported {} T = {} T implied interface; {} decoders x {} T + {} encoders x {} T = {} T "
                             "(core reported + interface = {} T)",
                             *reported, *core_reported, *reported - *core_reported, decoders, dec->effective_tc().value(), encoders,
                             enc->effective_tc().value(), interface, *core_reported + interface ) );
  }
  return std::move( b ).build();
}

std::vector<std::string> generator_names()
{
  return { "binary_rca", "cell", "quaternary_rca", "v1_adder", "v1_multiplier", "v2_decomposed", "wallace_binary", "wallace_quaternary" };
}

Netlist generate( Catalog const& catalog, std::string const& generator, std::optional<int> n, std::string const& variant,
                  GeneratorConfig const& config )
{
  config.check( catalog );
  auto const netlist = [&]() -> Netlist {
    if ( generator == "binary_rca" )
    {
      return gen_binary_rca( catalog, n.value_or( 8 ) );
    }
    if ( generator == "quaternary_rca" )
    {
      return gen_quaternary_rca( catalog, n.value_or( 4 ), variant.empty() ? config.adder_variant : variant, config );
    }
    if ( generator == "v1_adder" )
    {
      return gen_v1_adder( catalog, config );
    }
    if ( generator == "v2_decomposed" )
    {
      return gen_v2_decomposed( catalog );
    }
    if ( generator == "wallace_binary" )
    {
      return gen_wallace_binary( catalog, n.value_or( 8 ) );
    }
    if ( generator == "wallace_quaternary" )
    {
      return gen_wallace_quaternary( catalog, n.value_or( 4 ), config );
    }
    if ( generator == "v1_multiplier" )
    {
      return gen_v1_multiplier( catalog, n.value_or( 4 ), config );
    }
    if ( generator == "cell" )
    {
      auto const colon = variant.find( ':' );
      return gen_cell_wrapper( colon == std::string::npos ? catalog.get( variant )
                                                          : catalog.get( variant.substr( 0, colon ), variant.substr( colon + 1 ) ) );
    }
    throw Error( errc::invalid_value, fmt::format( "unknown generator '{}'", generator ) );
  }();
  if ( !config.max_fanout )
  {
    return netlist;
  }
  auto buffered = insert_buffers( netlist, *config.max_fanout, default_buffers( catalog ) );
  NetlistBuilder b( std::move( buffered ) );
  b.add_note( fmt::format( "buffered to fan-out {}", *config.max_fanout ) );
  return std::move( b ).build();
}

} // namespace mvl
