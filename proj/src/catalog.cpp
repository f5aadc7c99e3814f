#include <mvl/catalog.hpp>
#include <mvl/error.hpp>
#include <mvl/logic.hpp>

#include <algorithm>

#include <fmt/format.h>

namespace mvl
{

std::optional<int> PrimitiveSpec::effective_tc() const
{
  if ( tc_override )
  {
    return tc_override;
  }
  if ( reported_tc )
  {
    return reported_tc->low;
  }
  return std::nullopt;
}

std::vector<PortSpec> PrimitiveSpec::inputs() const
{
  std::vector<PortSpec> r;
  std::copy_if( ports.begin(), ports.end(), std::back_inserter( r ), []( auto const& p ) { return p.direction == PortDirection::input; } );
  return r;
}

std::vector<PortSpec> PrimitiveSpec::outputs() const
{
  std::vector<PortSpec> r;
  std::copy_if( ports.begin(), ports.end(), std::back_inserter( r ), []( auto const& p ) { return p.direction == PortDirection::output; } );
  return r;
}

namespace
{

PortSpec in( std::string name, int radix ) { return { std::move( name ), PortDirection::input, radix }; }
PortSpec out( std::string name, int radix ) { return { std::move( name ), PortDirection::output, radix }; }

TcRange tc( int n ) { return { n, n }; }

PrimitiveSpec cell( std::string name, std::string variant, std::vector<PortSpec> ports, Behavior behavior,
                    std::optional<TcRange> reported, int rails, std::string source )
{
  PrimitiveSpec s;
  s.name = std::move( name );
  s.variant = std::move( variant );
  s.ports = std::move( ports );
  s.behavior = std::move( behavior );
  s.reported_tc = reported;
  s.supply_rails = rails;
  s.rail_voltages = rails == 3 ? "Vdd, 2Vdd/3, Vdd/3" : "Vdd";
  s.source = std::move( source );
  return s;
}

void quaternary_full_adder( std::span<int const> i, std::span<int> o )
{
  auto const r = add_oracle( 4, quaternary( i[0] ), quaternary( i[1] ), binary( i[2] ) );
  o[0] = r.sum.value();
  o[1] = r.carry.value();
}

PrimitiveSpec qfa_cell( std::string name, std::string variant, int reported, int rails, std::string source )
{
  auto s = cell( std::move( name ), std::move( variant ),
                 { in( "a", 4 ), in( "b", 4 ), in( "ci", 2 ), out( "s", 4 ), out( "co", 2 ) },
                 quaternary_full_adder, tc( reported ), rails, std::move( source ) );
  s.counterpart = "full_adder_binary";
  return s;
}

Behavior threshold_behavior( ThresholdKind kind )
{
  return [kind]( std::span<int const> i, std::span<int> o ) { o[0] = threshold( kind, quaternary( i[0] ) ).value(); };
}

void identity( std::span<int const> i, std::span<int> o ) { o[0] = i[0]; }

} // namespace

PrimitiveSpec mixed_radix_adder_spec( MixedAdderKind kind )
{
  // Each subscript digit is an input's maximum value.
  std::vector<int> maxima;
  std::string name;
  switch ( kind )
  {
  case MixedAdderKind::q332: maxima = { 3, 3, 2 }, name = "q332"; break;
  case MixedAdderKind::q322: maxima = { 3, 2, 2 }, name = "q322"; break;
  case MixedAdderKind::qha32: maxima = { 3, 2 }, name = "qha32"; break;
  case MixedAdderKind::qha31: maxima = { 3, 1 }, name = "qha31"; break;
  }
  int max_sum = 0;
  std::vector<PortSpec> ports;
  char port = 'a';
  for ( auto m : maxima )
  {
    ports.push_back( in( std::string( 1, port++ ), m + 1 ) );
    max_sum += m;
  }
  int const carry_radix = max_sum / 4 + 1;
  ports.push_back( out( "s", 4 ) );
  ports.push_back( out( "co", carry_radix ) );

  auto behavior = []( std::span<int const> i, std::span<int> o ) {
    int sum = 0;
    for ( auto v : i )
    {
      sum += v;
    }
    o[0] = sum % 4;
    o[1] = sum / 4;
  };
  auto s = cell( name, "baseline", std::move( ports ), behavior, std::nullopt, 3, "mixed-radix Wallace adder" );
  s.note = "transistor count not published; supply via configuration";
  return s;
}

Catalog Catalog::builtin()
{
  Catalog c;

  // binary cells
  {
    auto s = cell( "inverter_binary", "baseline", { in( "a", 2 ), out( "y", 2 ) },
                   []( auto i, auto o ) { o[0] = 1 - i[0]; }, tc( 2 ), 1, "derived" );
    s.note = "10 T quaternary inverter = two binary inverters + six supplementary transistors";
    c.add( std::move( s ) );
  }
  c.add( cell( "nand2_binary", "baseline", { in( "a", 2 ), in( "b", 2 ), out( "y", 2 ) },
               []( auto i, auto o ) { o[0] = 1 - ( i[0] & i[1] ); }, tc( 4 ), 1, "CMOS NAND2" ) );
  c.add( cell( "xor2_binary", "baseline", { in( "a", 2 ), in( "b", 2 ), out( "y", 2 ) },
               []( auto i, auto o ) { o[0] = i[0] ^ i[1]; }, tc( 10 ), 1, "standard cell XOR" ) );
  c.add( cell( "and2_binary", "baseline", { in( "a", 2 ), in( "b", 2 ), out( "y", 2 ) },
               []( auto i, auto o ) { o[0] = i[0] & i[1]; }, tc( 6 ), 1, "CMOS AND2" ) );
  c.add( cell( "full_adder_binary", "baseline", { in( "a", 2 ), in( "b", 2 ), in( "cin", 2 ), out( "sum", 2 ), out( "cout", 2 ) },
               []( auto i, auto o ) {
                 int const t = i[0] + i[1] + i[2];
                 o[0] = t & 1;
                 o[1] = t >> 1;
               },
               tc( 28 ), 1, "conventional 28T" ) );
  {
    auto s = cell( "half_adder_binary", "baseline", { in( "a", 2 ), in( "b", 2 ), out( "sum", 2 ), out( "cout", 2 ) },
                   []( auto i, auto o ) {
                     o[0] = i[0] ^ i[1];
                     o[1] = i[0] & i[1];
                   },
                   tc( 16 ), 1, "assumed" );
    s.note = "XOR (10 T) + AND (6 T)";
    c.add( std::move( s ) );
  }

  // quaternary gates
  {
    auto s = cell( "inverter_quaternary", "baseline", { in( "a", 4 ), out( "y", 4 ) },
                   []( auto i, auto o ) { o[0] = complement( quaternary( i[0] ) ).value(); }, tc( 10 ), 3, "Sharifi et al." );
    s.counterpart = "inverter_binary";
    c.add( std::move( s ) );
  }
  for ( auto const& [variant, count, source] : { std::tuple{ "sharifi", 20, "Sharifi et al." }, std::tuple{ "ebrahimi", 16, "Ebrahimi et al." } } )
  {
    auto s = cell( "nand2_quaternary", variant, { in( "a", 4 ), in( "b", 4 ), out( "y", 4 ) },
                   []( auto i, auto o ) { o[0] = nand( quaternary( i[0] ), quaternary( i[1] ) ).value(); }, tc( count ), 3, source );
    s.counterpart = "nand2_binary";
    c.add( std::move( s ) );
  }
  for ( auto const& [name, kind] : { std::pair{ "nqi_detector", ThresholdKind::nqi }, std::pair{ "iqi_detector", ThresholdKind::iqi },
                                     std::pair{ "pqi_detector", ThresholdKind::pqi } } )
  {
    auto s = cell( name, "baseline", { in( "a", 4 ), out( "y", 4 ) }, threshold_behavior( kind ), std::nullopt, 1, "Ebrahimi et al." );
    s.note = "transistor count not published; supply via configuration";
    c.add( std::move( s ) );
  }

  // 4-to-2 decoder and 2-to-4 encoder
  for ( auto kind : { CodeKind::gray, CodeKind::positional } )
  {
    CodeMap const map{ kind };
    std::string const variant = kind == CodeKind::gray ? "gray" : "positional";
    auto dec = cell( "decoder_q_to_b", variant, { in( "q", 4 ), out( "x", 2 ), out( "y", 2 ) },
                     [map]( auto i, auto o ) {
                       auto const b = map.forward( quaternary( i[0] ) );
                       o[0] = b.x;
                       o[1] = b.y;
                     },
                     tc( 14 ), 1, "CNTFET Gray codec" );
    auto enc = cell( "encoder_b_to_q", variant, { in( "x", 2 ), in( "y", 2 ), out( "q", 4 ) },
                     [map]( auto i, auto o ) { o[0] = map.inverse( { i[0], i[1] } ).value(); }, tc( 12 ), 3, "CNTFET Gray codec" );
    if ( kind == CodeKind::positional )
    {
      dec.note = enc.note = "positional code costed as the Gray circuit";
    }
    c.add( std::move( dec ) );
    c.add( std::move( enc ) );
  }

  // quaternary full adders
  c.add( qfa_cell( "qfa_v1", "3ps", 112, 3, "decoder + 2-bit binary adder + encoder" ) );
  c.add( qfa_cell( "qfa_v1", "1ps", 112, 1, "decoder + 2-bit binary adder + encoder" ) );
  c.add( qfa_cell( "qfa_v2", "ebrahimi", 111, 3, "Ebrahimi et al." ) );
  c.add( qfa_cell( "qfa_v3", "moaiyeri", 154, 3, "Moaiyeri et al." ) );
  c.add( qfa_cell( "qfa_v3", "roosta_3ps", 82, 3, "Roosta et al." ) );
  c.add( qfa_cell( "qfa_v3", "roosta_1ps", 130, 1, "Roosta et al." ) );
  {
    // Paired with the unbuffered counts by magnitude; the source text labels
    // 100 as "1 power supply" and 148 as "3 power supplies".
    auto b3 = qfa_cell( "qfa_v3", "roosta_3ps_buffered", 100, 3, "Roosta et al., fan-out reduced" );
    b3.note = "source text labels this count '1 power supply'";
    auto b1 = qfa_cell( "qfa_v3", "roosta_1ps_buffered", 148, 1, "Roosta et al., fan-out reduced" );
    b1.note = "source text labels this count '3 power supplies'";
    c.add( std::move( b3 ) );
    c.add( std::move( b1 ) );
  }

  {
    auto s = cell( "qmul_digit", "baseline", { in( "a", 4 ), in( "b", 4 ), out( "p", 4 ), out( "c", 3 ) },
                   []( auto i, auto o ) {
                     auto const r = mul_digit_oracle( quaternary( i[0] ), quaternary( i[1] ) );
                     o[0] = r.product.value();
                     o[1] = r.carry.value();
                   },
                   TcRange{ 54, 76 }, 3, "multiplexer-based 1-digit multiplier" );
    s.counterpart = "and2_binary";
    s.note = "54..76 T depending on inverter fan-out";
    c.add( std::move( s ) );
  }
  for ( auto kind : { MixedAdderKind::q332, MixedAdderKind::q322, MixedAdderKind::qha32, MixedAdderKind::qha31 } )
  {
    c.add( mixed_radix_adder_spec( kind ) );
  }

  // fan-out buffers: two cascaded inverters of the matching radix
  {
    auto b = cell( "buffer_binary", "baseline", { in( "a", 2 ), out( "y", 2 ) }, identity, tc( 4 ), 1, "assumed" );
    b.note = "2 x inverter_binary";
    auto t = cell( "buffer_ternary", "baseline", { in( "a", 3 ), out( "y", 3 ) }, identity, tc( 20 ), 3, "assumed" );
    t.note = "2 x inverter_quaternary";
    auto q = cell( "buffer_quaternary", "baseline", { in( "a", 4 ), out( "y", 4 ) }, identity, tc( 20 ), 3, "assumed" );
    q.note = "2 x inverter_quaternary";
    q.counterpart = "buffer_binary";
    c.add( std::move( b ) );
    c.add( std::move( t ) );
    c.add( std::move( q ) );
  }

  c.add( ReportedComposite{ "wallace_binary_8", "8x8 bit multiplier", 1892, "published comparison" } );
  c.add( ReportedComposite{ "v1_multiplier_4", "4x4 Q multiplier, encoder and decoder", 2032, "published comparison" } );
  c.add( ReportedComposite{ "wallace_quaternary_4", "4x4 Q multiplier, direct implementation", 2888, "published comparison" } );

  return c;
}

void Catalog::add( PrimitiveSpec spec )
{
  if ( find( spec.name, spec.variant ) )
  {
    throw Error( errc::invalid_value, fmt::format( "duplicate cell {}", spec.key() ) );
  }
  if ( spec.supply_rails < 1 )
  {
    throw Error( errc::invalid_value, fmt::format( "cell {} needs at least one supply rail", spec.key() ) );
  }
  cells_.push_back( std::make_shared<PrimitiveSpec const>( std::move( spec ) ) );
}

void Catalog::add( ReportedComposite composite )
{
  composites_.push_back( std::move( composite ) );
}

PrimitivePtr Catalog::find( std::string const& name, std::string const& variant ) const
{
  PrimitivePtr match;
  for ( auto const& c : cells_ )
  {
    if ( c->name != name || ( !variant.empty() && c->variant != variant ) )
    {
      continue;
    }
    if ( match )
    {
      return nullptr;
    }
    match = c;
  }
  return match;
}

PrimitivePtr Catalog::get( std::string const& name, std::string const& variant ) const
{
  if ( auto c = find( name, variant ) )
  {
    return c;
  }
  bool const known = std::any_of( cells_.begin(), cells_.end(), [&]( auto const& c ) { return c->name == name; } );
  if ( !known )
  {
    throw Error( errc::unknown_cell, fmt::format( "no cell named '{}'", name ) );
  }
  throw Error( errc::unknown_variant, variant.empty() ? fmt::format( "cell '{}' needs a variant", name )
                                                      : fmt::format( "cell '{}' has no variant '{}'", name, variant ) );
}

PrimitivePtr Catalog::qfa( std::string const& variant ) const
{
  for ( auto const& c : cells_ )
  {
    if ( c->name.starts_with( "qfa_" ) && c->variant == variant )
    {
      return c;
    }
  }
  throw Error( errc::unknown_variant, fmt::format( "no quaternary full adder variant '{}'", variant ) );
}

std::optional<ReportedComposite> Catalog::composite( std::string const& name ) const
{
  auto const it = std::find_if( composites_.begin(), composites_.end(), [&]( auto const& c ) { return c.name == name; } );
  if ( it == composites_.end() )
  {
    return std::nullopt;
  }
  return *it;
}

Catalog Catalog::with_overrides( std::map<std::string, int> const& overrides ) const
{
  for ( auto const& [key, value] : overrides )
  {
    auto const colon = key.find( ':' );
    auto const name = key.substr( 0, colon );
    if ( colon != std::string::npos )
    {
      get( name, key.substr( colon + 1 ) );
    }
    else if ( std::none_of( cells_.begin(), cells_.end(), [&]( auto const& c ) { return c->name == name; } ) )
    {
      throw Error( errc::unknown_cell, fmt::format( "no cell named '{}'", name ) );
    }
    if ( value < 0 )
    {
      throw Error( errc::invalid_value, fmt::format( "negative transistor count for {}", key ) );
    }
  }

  Catalog c;
  c.composites_ = composites_;
  for ( auto const& cell : cells_ )
  {
    auto it = overrides.find( cell->key() );
    if ( it == overrides.end() )
    {
      it = overrides.find( cell->name );
    }
    if ( it == overrides.end() )
    {
      c.cells_.push_back( cell );
      continue;
    }
    auto copy = *cell;
    if ( copy.reported_tc && !copy.reported_tc->exact() &&
         ( it->second < copy.reported_tc->low || it->second > copy.reported_tc->high ) )
    {
      throw Error( errc::invalid_value, fmt::format( "{} T for {} is outside the published range [{}, {}]", it->second,
                                                     cell->key(), copy.reported_tc->low, copy.reported_tc->high ) );
    }
    copy.tc_override = it->second;
    c.cells_.push_back( std::make_shared<PrimitiveSpec const>( std::move( copy ) ) );
  }
  return c;
}

} // namespace mvl
