#include <mvl/config.hpp>
#include <mvl/error.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace mvl
{

namespace
{

std::string_view trim( std::string_view s )
{
  auto const first = s.find_first_not_of( " \t\r" );
  if ( first == std::string_view::npos )
  {
    return {};
  }
  return s.substr( first, s.find_last_not_of( " \t\r" ) - first + 1 );
}

int parse_int( std::string_view key, std::string_view value, int line )
{
  int v = 0;
  auto const [end, ec] = std::from_chars( value.data(), value.data() + value.size(), v );
  if ( ec != std::errc{} || end != value.data() + value.size() || v < 0 )
  {
    throw Error( errc::parse_error, fmt::format( "line {}: '{}' needs a non-negative integer, got '{}'", line, key, value ) );
  }
  return v;
}

} // namespace

Catalog Config::apply( Catalog const& catalog ) const
{
  auto result = catalog.with_overrides( tc_overrides );
  generator.check( result );
  return result;
}

Config parse_config( std::string_view text )
{
  Config config;
  std::map<std::string, std::string> const aliases{
      { "half_adder_tc", "half_adder_binary" }, { "nqi_tc", "nqi_detector" }, { "iqi_tc", "iqi_detector" }, { "pqi_tc", "pqi_detector" } };
  int line_no = 0;
  std::istringstream in{ std::string( text ) };
  for ( std::string raw; std::getline( in, raw ); )
  {
    ++line_no;
    auto const line = trim( std::string_view( raw ).substr( 0, raw.find( '#' ) ) );
    if ( line.empty() )
    {
      continue;
    }
    auto const eq = line.find( '=' );
    if ( eq == std::string_view::npos )
    {
      throw Error( errc::parse_error, fmt::format( "line {}: expected key = value", line_no ) );
    }
    auto const key = std::string( trim( line.substr( 0, eq ) ) );
    auto const value = trim( line.substr( eq + 1 ) );
    if ( key == "qmul_tc_choice" )
    {
      config.generator.qmul_tc_choice = parse_int( key, value, line_no );
    }
    else if ( key == "max_fanout" )
    {
      config.generator.max_fanout = parse_int( key, value, line_no );
    }
    else if ( key == "code_map" )
    {
      if ( value == "positional" )
      {
        config.generator.code_map = CodeKind::positional;
      }
      else if ( value == "gray" )
      {
        config.generator.code_map = CodeKind::gray;
      }
      else
      {
        throw Error( errc::parse_error, fmt::format( "line {}: code_map is positional or gray, got '{}'", line_no, value ) );
      }
    }
    else if ( key == "adder_variant" )
    {
      config.generator.adder_variant = std::string( value );
    }
    else if ( auto const alias = aliases.find( key ); alias != aliases.end() )
    {
      config.tc_overrides[alias->second] = parse_int( key, value, line_no );
    }
    else if ( key.starts_with( "tc." ) && key.size() > 3 )
    {
      config.tc_overrides[key.substr( 3 )] = parse_int( key, value, line_no );
    }
    else
    {
      throw Error( errc::parse_error, fmt::format( "line {}: unknown key '{}'", line_no, key ) );
    }
  }
  return config;
}

Config load_config( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw Error( errc::parse_error, fmt::format( "cannot read '{}'", path ) );
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config( text.str() );
}

} // namespace mvl
