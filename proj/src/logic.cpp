#include <mvl/error.hpp>
#include <mvl/logic.hpp>

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace mvl
{

std::string_view to_string( errc kind )
{
  switch ( kind )
  {
  case errc::invalid_value: return "invalid_value";
  case errc::radix_mismatch: return "radix_mismatch";
  case errc::non_total_table: return "non_total_table";
  case errc::unknown_cell: return "unknown_cell";
  case errc::unknown_variant: return "unknown_variant";
  case errc::invalid_netlist: return "invalid_netlist";
  case errc::cycle: return "cycle";
  case errc::incomplete_assignment: return "incomplete_assignment";
  case errc::input_space_too_large: return "input_space_too_large";
  case errc::incompatible_signature: return "incompatible_signature";
  case errc::missing_buffer: return "missing_buffer";
  case errc::zero_baseline: return "zero_baseline";
  case errc::parse_error: return "parse_error";
  case errc::unsupported: return "unsupported";
  }
  return "unknown";
}

LogicLevel::LogicLevel( int radix, int value )
    : radix_( radix ), value_( value )
{
  if ( radix < 2 )
  {
    throw Error( errc::invalid_value, fmt::format( "radix {} is below 2", radix ) );
  }
  if ( value < 0 || value >= radix )
  {
    throw Error( errc::invalid_value, fmt::format( "value {} outside radix {}", value, radix ) );
  }
}

DigitVector::DigitVector( int radix, std::vector<int> digits )
    : radix_( radix ), digits_( std::move( digits ) )
{
  for ( auto d : digits_ )
  {
    LogicLevel{ radix_, d };
  }
}

DigitVector DigitVector::from_value( int radix, std::uint64_t value, std::size_t width )
{
  std::vector<int> digits( width );
  for ( auto& d : digits )
  {
    d = static_cast<int>( value % radix );
    value /= radix;
  }
  if ( value != 0 )
  {
    throw Error( errc::invalid_value, fmt::format( "value does not fit in {} radix-{} digits", width, radix ) );
  }
  return DigitVector{ radix, std::move( digits ) };
}

std::uint64_t DigitVector::value() const
{
  std::uint64_t v = 0;
  for ( auto it = digits_.rbegin(); it != digits_.rend(); ++it )
  {
    v = v * radix_ + *it;
  }
  return v;
}

namespace
{

void require_radix( LogicLevel q, int radix, char const* what )
{
  if ( q.radix() != radix )
  {
    throw Error( errc::radix_mismatch, fmt::format( "{} expects radix {}, got radix {}", what, radix, q.radix() ) );
  }
}

void require_bit( int b, char const* what )
{
  if ( b != 0 && b != 1 )
  {
    throw Error( errc::invalid_value, fmt::format( "{} must be 0 or 1, got {}", what, b ) );
  }
}

// Rows Q = 0..3 of the Gray 4-to-2 decoder.
constexpr std::array<BitPair, 4> gray_table{ { { 1, 0 }, { 1, 1 }, { 0, 1 }, { 0, 0 } } };

} // namespace

LogicLevel threshold( ThresholdKind kind, LogicLevel q )
{
  require_radix( q, 4, "threshold" );
  int const limit = kind == ThresholdKind::nqi ? 0 : kind == ThresholdKind::iqi ? 1 : 2;
  return quaternary( q.value() <= limit ? 3 : 0 );
}

LogicLevel complement( LogicLevel q )
{
  require_radix( q, 4, "complement" );
  return quaternary( 3 - q.value() );
}

LogicLevel nand( LogicLevel a, LogicLevel b )
{
  require_radix( a, 4, "nand" );
  require_radix( b, 4, "nand" );
  return quaternary( 3 - std::min( a.value(), b.value() ) );
}

LogicLevel successor( LogicLevel q )
{
  require_radix( q, 4, "successor" );
  return quaternary( ( q.value() + 1 ) % 4 );
}

SumDigit add_oracle( int radix, LogicLevel a, LogicLevel b, LogicLevel ci )
{
  require_radix( a, radix, "add_oracle operand a" );
  require_radix( b, radix, "add_oracle operand b" );
  require_radix( ci, 2, "add_oracle carry in" );
  int const total = a.value() + b.value() + ci.value();
  return { LogicLevel{ radix, total % radix }, binary( total / radix ) };
}

ProductDigit mul_digit_oracle( LogicLevel a, LogicLevel b )
{
  require_radix( a, 4, "mul_digit_oracle operand a" );
  require_radix( b, 4, "mul_digit_oracle operand b" );
  int const p = a.value() * b.value();
  return { quaternary( p % 4 ), ternary( p / 4 ) };
}

BitPair gray_decode( LogicLevel q )
{
  require_radix( q, 4, "gray_decode" );
  return gray_table[q.value()];
}

LogicLevel gray_encode( int x, int y )
{
  require_bit( x, "x" );
  require_bit( y, "y" );
  auto const it = std::find( gray_table.begin(), gray_table.end(), BitPair{ x, y } );
  return quaternary( static_cast<int>( it - gray_table.begin() ) );
}

BitPair CodeMap::forward( LogicLevel q ) const
{
  if ( kind_ == CodeKind::gray )
  {
    return gray_decode( q );
  }
  require_radix( q, 4, "positional code" );
  return { q.value() >> 1, q.value() & 1 };
}

LogicLevel CodeMap::inverse( BitPair bits ) const
{
  if ( kind_ == CodeKind::gray )
  {
    return gray_encode( bits.x, bits.y );
  }
  require_bit( bits.x, "x" );
  require_bit( bits.y, "y" );
  return quaternary( 2 * bits.x + bits.y );
}

std::pair<int, int> CodeMap::wires( LogicLevel q ) const
{
  auto const b = forward( q );
  return kind_ == CodeKind::gray ? std::pair{ b.x, b.y } : std::pair{ b.y, b.x };
}

LogicLevel CodeMap::from_wires( int wire0, int wire1 ) const
{
  return kind_ == CodeKind::gray ? inverse( { wire0, wire1 } ) : inverse( { wire1, wire0 } );
}

DigitVector radix_convert( DigitVector const& quaternary_digits, CodeMap const& map )
{
  if ( quaternary_digits.radix() != 4 )
  {
    throw Error( errc::radix_mismatch, "radix_convert expects a radix-4 vector" );
  }
  std::vector<int> bits;
  bits.reserve( 2 * quaternary_digits.size() );
  for ( auto d : quaternary_digits.digits() )
  {
    auto const [w0, w1] = map.wires( quaternary( d ) );
    bits.push_back( w0 );
    bits.push_back( w1 );
  }
  return DigitVector{ 2, std::move( bits ) };
}

DigitVector radix_convert_inverse( DigitVector const& bits, CodeMap const& map )
{
  if ( bits.radix() != 2 )
  {
    throw Error( errc::radix_mismatch, "radix_convert_inverse expects a radix-2 vector" );
  }
  if ( bits.size() % 2 != 0 )
  {
    throw Error( errc::invalid_value, fmt::format( "odd bit vector length {}", bits.size() ) );
  }
  auto const& b = bits.digits();
  std::vector<int> digits;
  digits.reserve( b.size() / 2 );
  for ( std::size_t i = 0; i < b.size(); i += 2 )
  {
    digits.push_back( map.from_wires( b[i], b[i + 1] ).value() );
  }
  return DigitVector{ 4, std::move( digits ) };
}

std::vector<std::vector<int>> enumerate_domain( std::vector<int> const& radices )
{
  std::size_t total = 1;
  for ( auto r : radices )
  {
    total *= static_cast<std::size_t>( r );
  }
  std::vector<std::vector<int>> points;
  points.reserve( total );
  std::vector<int> point( radices.size(), 0 );
  for ( std::size_t n = 0; n < total; ++n )
  {
    points.push_back( point );
    for ( std::size_t i = 0; i < radices.size(); ++i )
    {
      if ( ++point[i] < radices[i] )
      {
        break;
      }
      point[i] = 0;
    }
  }
  return points;
}

int Decomposition::recompose( std::vector<int> const& inputs ) const
{
  return 3 * static_cast<int>( f3.count( inputs ) ) + 2 * static_cast<int>( f2.count( inputs ) ) + static_cast<int>( f1.count( inputs ) );
}

Decomposition decompose_quaternary( TruthTable const& table )
{
  Decomposition d{ table.input_radices, {}, {}, {} };
  auto const domain = enumerate_domain( table.input_radices );
  if ( table.rows.size() != domain.size() )
  {
    throw Error( errc::non_total_table, fmt::format( "table has {} rows, domain has {}", table.rows.size(), domain.size() ) );
  }
  for ( auto const& point : domain )
  {
    auto const it = table.rows.find( point );
    if ( it == table.rows.end() )
    {
      throw Error( errc::non_total_table, "table is missing a point of its declared domain" );
    }
    require_radix( it->second, 4, "decompose_quaternary" );
    switch ( it->second.value() )
    {
    case 3: d.f3.insert( point ); break;
    case 2: d.f2.insert( point ); break;
    case 1: d.f1.insert( point ); break;
    default: break;
    }
  }
  return d;
}

} // namespace mvl
